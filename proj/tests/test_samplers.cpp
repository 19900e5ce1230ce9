#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "oracles.hpp"
#include "permsphere/exact_laws.hpp"
#include "permsphere/samplers.hpp"
#include "permsphere/verify.hpp"

using namespace permsphere;

namespace {

constexpr std::uint64_t kSeed = 20240917;

std::map<Permutation, long long> sample_counts(const GrowthLaw& law, int n, int reps) {
    std::map<Permutation, long long> counts;
    for (int rep = 0; rep < reps; ++rep) {
        GrowthProcess proc(law, kSeed, static_cast<std::uint64_t>(rep));
        proc.run_to(n);
        ++counts[proc.permutation()];
    }
    return counts;
}

double law_chi_square(const std::map<Permutation, long long>& counts, const ExactLaw& law) {
    std::vector<long long> observed;
    std::vector<double> probs;
    for (const auto& [perm, p] : law.probs) {
        const auto it = counts.find(perm);
        observed.push_back(it == counts.end() ? 0 : it->second);
        probs.push_back(to_double(p));
    }
    return chi_square_pvalue(observed, probs);
}

}  // namespace

TEST_CASE("rng determinism and stream independence") {
    Rng a(123), b(123), c(123, 1);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    bool differs = false;
    for (int i = 0; i < 10; ++i) differs = differs || (a.next_u64() != c.next_u64());
    CHECK(differs);
    Rng d(7);
    for (int i = 0; i < 1000; ++i) {
        const double u = d.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const long long v = d.uniform_int(3, 9);
        CHECK(v >= 3);
        CHECK(v <= 9);
    }
}

TEST_CASE("uniform big integers and exact Bernoulli draws") {
    Rng rng(42);
    const BigInt bound = BigInt("1000000000000000000000000");
    for (int i = 0; i < 200; ++i) {
        const BigInt x = uniform_bigint_below(rng, bound);
        CHECK(x >= 0);
        CHECK(x < bound);
    }
    long long hits = 0;
    const int trials = 20000;
    for (int i = 0; i < trials; ++i)
        if (bernoulli_rational(rng, Rational(1, 3))) ++hits;
    CHECK(std::abs(hits / static_cast<double>(trials) - 1.0 / 3) < 0.02);
    CHECK(bernoulli_rational(rng, Rational(0)) == false);
    CHECK(bernoulli_rational(rng, Rational(1)) == true);
}

TEST_CASE("degenerate growth parameters") {
    GrowthProcess idproc(growth_alpha(Rational(1)), kSeed);
    idproc.run_to(5);
    CHECK(idproc.permutation() == Permutation::identity(5));
    CHECK(idproc.singular_count() == 5);

    GrowthProcess qzero(growth_mallows(ExtParam(Rational(0))), kSeed);
    qzero.run_to(6);
    CHECK(qzero.permutation() == Permutation::identity(6));

    GrowthProcess qinf(growth_mallows(ExtParam::inf()), kSeed);
    qinf.run_to(5);
    CHECK(qinf.permutation() == Permutation(std::vector<int>{5, 4, 3, 2, 1}));

    GrowthProcess tinf(growth_ewens(ExtParam::inf()), kSeed);
    tinf.run_to(5);
    CHECK(tinf.permutation() == Permutation::identity(5));

    GrowthProcess tzero(growth_ewens(ExtParam(Rational(0))), kSeed);
    tzero.run_to(7);
    CHECK(cycle_count(tzero.permutation()) == 1);
}

TEST_CASE("growth processes are projection-consistent pathwise") {
    for (const GrowthLaw& law :
         {growth_uniform(), growth_alpha(Rational(1, 2)), growth_mallows(ExtParam(Rational(1, 2))),
          growth_ewens(ExtParam(Rational(2)))}) {
        const Metric m = law_metric(law);
        GrowthProcess proc(law, kSeed);
        proc.run_to(1);
        Permutation prev = proc.permutation();
        for (int n = 2; n <= 8; ++n) {
            proc.step();
            const Permutation cur = proc.permutation();
            CHECK(project(m, cur) == prev);
            CHECK(proc.statistic(m) == metric_statistic(m, cur));
            prev = cur;
        }
    }
}

TEST_CASE("alpha law: singular elements stay fixed") {
    GrowthProcess proc(growth_alpha(Rational(1, 3)), kSeed);
    proc.run_to(40);
    const auto enriched = proc.enriched();
    for (int j : enriched.singular) CHECK(enriched.perm(j) == j);
    CHECK(proc.fixed_points() == fixed_point_count(enriched.perm));
}

TEST_CASE("sampled marginals match the exact laws at n = 4") {
    const int reps = 60000;
    for (const GrowthLaw& law :
         {growth_uniform(), growth_alpha(Rational(1, 2)), growth_mallows(ExtParam(Rational(1, 2))),
          growth_ewens(ExtParam(Rational(2)))}) {
        const auto counts = sample_counts(law, 4, reps);
        const auto exact = exact_growth_law(law, 4);
        CHECK(law_chi_square(counts, exact) > 1e-4);
    }
}

TEST_CASE("identical seeds reproduce samples exactly") {
    const auto law = growth_mallows(ExtParam(Rational(1, 2)));
    const auto a = sample_counts(law, 5, 500);
    const auto b = sample_counts(law, 5, 500);
    CHECK(a == b);
}

TEST_CASE("sphere sampler degenerate cases") {
    Rng rng(kSeed);
    CHECK(sample_sphere_uniform(Metric::Hamming, 6, 0, rng) == Permutation::identity(6));
    CHECK(sample_sphere_uniform(Metric::KendallTau, 5, 10, rng) ==
          Permutation(std::vector<int>{5, 4, 3, 2, 1}));
    CHECK(sample_sphere_uniform(Metric::Cayley, 4, 0, rng) == Permutation::identity(4));
    CHECK_THROWS_AS(SphereSampler(Metric::Hamming, 6, 1), std::domain_error);  // empty sphere
}

TEST_CASE("sphere samplers land on the sphere and look uniform") {
    struct Case {
        Metric m;
        int n;
        long long radius;
    };
    for (const Case& c : {Case{Metric::Hamming, 6, 6}, Case{Metric::KendallTau, 5, 5},
                          Case{Metric::Cayley, 6, 3}}) {
        const SphereSampler sampler(c.m, c.n, c.radius);
        Rng rng(kSeed);
        std::map<Permutation, long long> counts;
        const int reps = 100000;
        for (int i = 0; i < reps; ++i) {
            const auto p = sampler.draw(rng);
            CHECK(metric_radius(c.m, p) == c.radius);
            ++counts[p];
        }
        const BigInt size = sphere_count(c.m, c.n, radius_to_statistic(c.m, c.n, c.radius));
        CHECK(BigInt(static_cast<long long>(counts.size())) == size);
        std::vector<long long> observed;
        std::vector<double> probs;
        const double uniform_p = 1.0 / size.convert_to<double>();
        for (const auto& [perm, cnt] : counts) {
            observed.push_back(cnt);
            probs.push_back(uniform_p);
        }
        CHECK(chi_square_pvalue(observed, probs) > 1e-4);
    }
}

TEST_CASE("sphere samplers stay on the sphere across all radii") {
    Rng rng(kSeed, 5);
    for (Metric m : {Metric::Hamming, Metric::KendallTau, Metric::Cayley}) {
        const int n = 7;
        for (long long k = statistic_min(m, n); k <= statistic_max(m, n); ++k) {
            if (sphere_count(m, n, k) == 0) continue;
            const long long radius = statistic_to_radius(m, n, k);
            const SphereSampler sampler(m, n, radius);
            for (int i = 0; i < 50; ++i) {
                const auto p = sampler.draw(rng);
                REQUIRE(metric_radius(m, p) == radius);
            }
        }
    }
    // a large single draw per metric
    CHECK(metric_radius(Metric::Hamming, sample_sphere_uniform(Metric::Hamming, 300, 250, rng)) == 250);
    CHECK(metric_radius(Metric::KendallTau, sample_sphere_uniform(Metric::KendallTau, 80, 1000, rng)) ==
          1000);
    CHECK(metric_radius(Metric::Cayley, sample_sphere_uniform(Metric::Cayley, 300, 290, rng)) == 290);
}

TEST_CASE("derangement sampler covers all derangements of S_4") {
    const SphereSampler sampler(Metric::Hamming, 4, 4);
    Rng rng(kSeed);
    std::set<Permutation> seen;
    for (int i = 0; i < 2000; ++i) seen.insert(sampler.draw(rng));
    CHECK(seen.size() == 9);
    for (const auto& p : seen) CHECK(fixed_point_count(p) == 0);
}

TEST_CASE("projected sphere samples reproduce the Martin kernel") {
    // statistic of the n=3 projection of uniform derangements of S_6
    const SphereSampler sampler(Metric::Hamming, 6, 6);
    Rng rng(kSeed, 99);
    std::map<long long, long long> hist;
    const int reps = 200000;
    for (int i = 0; i < reps; ++i)
        ++hist[metric_statistic(Metric::Hamming, project_to(Metric::Hamming, sampler.draw(rng), 3))];
    const auto kernel = martin_kernel_row(Metric::Hamming, 6, 0, 3);
    std::vector<long long> observed;
    std::vector<double> probs;
    for (long long k = 0; k <= 3; ++k) {
        if (k == 2) continue;  // empty sphere at F = n-1
        observed.push_back(hist.count(k) ? hist[k] : 0);
        probs.push_back(to_double(Rational(sphere_count(Metric::Hamming, 3, k)) *
                                  kernel[static_cast<std::size_t>(k)]));
    }
    CHECK(chi_square_pvalue(observed, probs) > 1e-4);
}

TEST_CASE("bivariate chain") {
    Rng rng(kSeed);
    // alpha = 1 forces the singular step
    CHECK(bivariate_chain_step(1, 2, 5, Rational(1), rng) == std::make_pair(2, 2));
    // the first element with alpha = 0 becomes a regular fixed point
    CHECK(bivariate_chain_step(0, 0, 1, Rational(0), rng) == std::make_pair(0, 1));
    CHECK_THROWS_AS(bivariate_chain_step(3, 3, 5, Rational(1, 2), rng), std::domain_error);

    // distribution of (s, r) at n = 5 agrees with the enriched growth process
    const Rational alpha(1, 2);
    const int reps = 200000;
    std::map<std::pair<int, int>, long long> chain_counts, growth_counts;
    for (int rep = 0; rep < reps; ++rep) {
        Rng r(kSeed, static_cast<std::uint64_t>(rep) + 1);
        int s = 0, rr = 0;
        for (int n = 1; n <= 5; ++n) std::tie(s, rr) = bivariate_chain_step(s, rr, n, alpha, r);
        ++chain_counts[{s, rr}];
        GrowthProcess proc(growth_alpha(alpha), kSeed ^ 0x5bd1e995, static_cast<std::uint64_t>(rep));
        proc.run_to(5);
        const auto enriched = proc.enriched();
        ++growth_counts[{proc.singular_count(),
                         fixed_point_count(enriched.perm) - proc.singular_count()}];
    }
    double tv = 0;
    std::set<std::pair<int, int>> keys;
    for (const auto& [k, v] : chain_counts) keys.insert(k);
    for (const auto& [k, v] : growth_counts) keys.insert(k);
    for (const auto& k : keys) {
        const double pa = chain_counts.count(k) ? chain_counts[k] / double(reps) : 0.0;
        const double pb = growth_counts.count(k) ? growth_counts[k] / double(reps) : 0.0;
        tv += std::abs(pa - pb);
    }
    CHECK(tv / 2 < 0.01);
}

TEST_CASE("asymptotic growth of the statistics, small scale") {
    const auto alpha = asymptotics_experiment(growth_alpha(Rational(3, 10)), 20000, 20, kSeed);
    CHECK(alpha.statistic == "F/n");
    CHECK(std::abs(alpha.mean - 0.3) < 0.01);

    const auto mallows = asymptotics_experiment(growth_mallows(ExtParam(Rational(1, 2))), 20000, 10, kSeed);
    CHECK(mallows.statistic == "I/n");
    CHECK(std::abs(mallows.mean - 1.0) < 0.05);

    const auto uniform_q = asymptotics_experiment(growth_mallows(ExtParam(Rational(1))), 3000, 10, kSeed);
    CHECK(uniform_q.statistic == "I/n^2");
    CHECK(std::abs(uniform_q.mean - 0.25) < 0.01);

    const auto ewens = asymptotics_experiment(growth_ewens(ExtParam(Rational(1))), 100000, 40, kSeed);
    CHECK(ewens.statistic == "C/log n");
    CHECK(std::abs(ewens.mean - 1.0) < 0.15);
}
