#pragma once

// Verification harness: exhaustive stochastic-monotonicity checks on small
// symmetric groups, the interlacing oracle behind the Kendall-tau
// monotonicity proof, kernel-convergence experiments with non-convergence
// detection, Monte-Carlo asymptotics, and the statistical gates
// (chi-square, total variation).

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "permsphere/exact_laws.hpp"
#include "permsphere/extension_counts.hpp"
#include "permsphere/limit_laws.hpp"
#include "permsphere/numeric.hpp"
#include "permsphere/samplers.hpp"

namespace permsphere {

struct DominanceWitness {
    long long x = 0;       // threshold at which dominance fails
    Rational tail_hi = 0;  // P(xi >= x)
    Rational tail_lo = 0;  // P(eta >= x)
};

// xi >=_st eta iff P(xi >= x) >= P(eta >= x) for every x.
inline bool stochastically_dominates(const std::map<long long, Rational>& hi,
                                     const std::map<long long, Rational>& lo,
                                     DominanceWitness* witness = nullptr) {
    std::vector<long long> xs;
    for (const auto& [x, p] : hi) xs.push_back(x);
    for (const auto& [x, p] : lo) xs.push_back(x);
    auto tail = [](const std::map<long long, Rational>& law, long long x) {
        Rational t = 0;
        for (auto it = law.lower_bound(x); it != law.end(); ++it) t += it->second;
        return t;
    };
    for (long long x : xs) {
        const Rational th = tail(hi, x);
        const Rational tl = tail(lo, x);
        if (th < tl) {
            if (witness) *witness = {x, th, tl};
            return false;
        }
    }
    return true;
}

// Exhaustive check of the projection monotonicity lemmas: for radii
// r >= r', the statistic of the n-projection of the uniform sphere law at
// radius r stochastically dominates the one at r', for every n < nu.
struct MonotonicityReport {
    Metric metric = Metric::Hamming;
    int nu = 0;
    struct Entry {
        long long statistic_hi = 0;  // sphere whose projection must dominate
        long long statistic_lo = 0;
        long long radius_hi = 0;  // the same pair in radius terms
        long long radius_lo = 0;
        int n = 0;
        bool ok = false;
        DominanceWitness witness;  // populated when ok is false
    };
    std::vector<Entry> entries;
    bool all_ok = true;
};

inline MonotonicityReport check_monotonicity(Metric m, int nu, int exhaustive_cap = 8) {
    if (nu > exhaustive_cap) throw std::domain_error("check_monotonicity: nu exceeds the exhaustive cap");
    MonotonicityReport report;
    report.metric = m;
    report.nu = nu;

    // projected statistic law per (kappa, n) in a single sweep over S_nu
    std::map<long long, std::vector<std::map<long long, Rational>>> stat_laws;
    std::map<long long, BigInt> sphere_sizes;
    for_each_permutation(nu, [&](const Permutation& perm) {
        const long long kappa = metric_statistic(m, perm);
        auto& rows = stat_laws[kappa];
        if (rows.empty()) rows.resize(static_cast<std::size_t>(nu));
        Permutation p = perm;
        for (int n = nu - 1; n >= 1; --n) {
            p = project(m, p);
            rows[static_cast<std::size_t>(n)][metric_statistic(m, p)] += 1;
        }
        sphere_sizes[kappa] += 1;
    });
    for (auto& [kappa, rows] : stat_laws)
        for (auto& row : rows)
            for (auto& [k, p] : row) p /= Rational(sphere_sizes[kappa]);

    // statistics sorted so that larger statistic = larger radius ordering is
    // explicit: radius grows with the statistic for Kendall, shrinks otherwise
    std::vector<long long> kappas;
    for (const auto& [kappa, rows] : stat_laws) kappas.push_back(kappa);
    for (std::size_t a = 0; a < kappas.size(); ++a) {
        for (std::size_t b = 0; b < kappas.size(); ++b) {
            if (a == b) continue;
            const long long k_hi = kappas[a];
            const long long k_lo = kappas[b];
            if (k_hi < k_lo) continue;  // dominance is claimed for k_hi >= k_lo
            for (int n = 1; n < nu; ++n) {
                MonotonicityReport::Entry e;
                e.statistic_hi = k_hi;
                e.statistic_lo = k_lo;
                e.radius_hi = statistic_to_radius(m, nu, k_hi);
                e.radius_lo = statistic_to_radius(m, nu, k_lo);
                e.n = n;
                e.ok = stochastically_dominates(stat_laws[k_hi][static_cast<std::size_t>(n)],
                                                stat_laws[k_lo][static_cast<std::size_t>(n)],
                                                &e.witness);
                report.all_ok = report.all_ok && e.ok;
                report.entries.push_back(std::move(e));
            }
        }
    }
    return report;
}

// The interlacing property of the uniform distribution: with U uniform on
// {1..k} and V independent, the law of V given V+U = k+1 stochastically
// dominates the law of V given V+U = k.
inline bool check_interlacing(const std::map<long long, Rational>& law_v, int k) {
    if (k < 1) throw std::domain_error("check_interlacing: k must be >= 1");
    auto conditional = [&law_v, k](long long total) {
        std::map<long long, Rational> cond;
        Rational mass = 0;
        for (const auto& [v, p] : law_v) {
            const long long u = total - v;
            if (u >= 1 && u <= k) {
                cond[v] += p;  // times the uniform 1/k, cancelled by normalization
                mass += p;
            }
        }
        if (mass == 0) throw std::domain_error("check_interlacing: conditioning event has probability 0");
        for (auto& [v, p] : cond) p /= mass;
        return cond;
    };
    return stochastically_dominates(conditional(k + 1), conditional(k));
}

// One row of a kernel-convergence experiment.
struct KernelRow {
    long long nu = 0;
    long long kappa = 0;
    int n = 0;
    long long k = 0;
    Rational kernel;
    Rational limit;
    Rational abs_err;  // |kernel - limit|, exact
};

inline double relative_error(const KernelRow& row) {
    if (row.limit == 0) return row.abs_err == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    return to_double(row.abs_err / row.limit);
}

// Exact Martin-kernel values along nu_list for every n <= n_max and every
// stored k, against the limit law of the given parameter.
inline std::vector<KernelRow> kernel_convergence_rows(Metric m, const KappaRegime& regime,
                                                      const ExtParam& param,
                                                      const std::vector<long long>& nu_list,
                                                      int n_max,
                                                      std::optional<long long> k_filter = {}) {
    std::vector<KernelRow> rows;
    for (long long nu : nu_list) {
        const long long kappa = regime(nu);
        const BigInt sphere = sphere_count(m, static_cast<int>(nu), kappa);
        if (sphere == 0) throw std::domain_error("kernel_convergence_rows: empty sphere");
        for (int n = 1; n <= n_max; ++n) {
            const auto ext = extension_row(m, static_cast<int>(nu), kappa, n);
            for (long long k = statistic_min(m, n); k <= statistic_max(m, n); ++k) {
                if (k_filter && k != *k_filter) continue;
                if (m == Metric::Hamming && k == n - 1) continue;
                KernelRow row;
                row.nu = nu;
                row.kappa = kappa;
                row.n = n;
                row.k = k;
                const BigInt ext_k = k < static_cast<long long>(ext.size())
                                         ? ext[static_cast<std::size_t>(k)]
                                         : BigInt(0);
                row.kernel = Rational(ext_k, sphere);
                row.limit = limit_law(m, param, n, k);
                row.abs_err = boost::multiprecision::abs(row.kernel - row.limit);
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

// True iff for every (n, k) the error is strictly decreasing along nu;
// consecutive exact zeros (kernel already equal to the limit) are allowed.
inline bool errors_strictly_decreasing(const std::vector<KernelRow>& rows) {
    std::map<std::pair<int, long long>, std::vector<const KernelRow*>> groups;
    for (const auto& row : rows) groups[{row.n, row.k}].push_back(&row);
    for (auto& [key, group] : groups) {
        std::sort(group.begin(), group.end(),
                  [](const KernelRow* a, const KernelRow* b) { return a->nu < b->nu; });
        for (std::size_t i = 0; i + 1 < group.size(); ++i) {
            const Rational& a = group[i]->abs_err;
            const Rational& b = group[i + 1]->abs_err;
            if (a == 0 && b == 0) continue;
            if (!(b < a)) return false;
        }
    }
    return true;
}

// A regime is flagged non-convergent when the kernel values of the two
// designated subsequences differ by more than ten times the maximum
// within-subsequence drift.
inline bool flag_nonconvergent(const std::vector<double>& subseq_a, const std::vector<double>& subseq_b) {
    if (subseq_a.empty() || subseq_b.empty())
        throw std::invalid_argument("flag_nonconvergent: empty subsequence");
    auto mean = [](const std::vector<double>& v) {
        double s = 0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    auto drift = [](const std::vector<double>& v) {
        double d = 0;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) d = std::max(d, std::abs(v[i + 1] - v[i]));
        return d;
    };
    const double gap = std::abs(mean(subseq_a) - mean(subseq_b));
    return gap > 10.0 * std::max(drift(subseq_a), drift(subseq_b));
}

// Monte-Carlo estimate of the normalized limit statistic of a growth law:
// F/n (alpha and uniform), I/n for q < 1, I/n^2 at q = 1, (C(n,2)-I)/n for
// q > 1, C/log n (Ewens).
struct AsymptoticsSummary {
    std::string statistic;
    long long n = 0;
    int replicates = 0;
    double mean = 0;
    double stddev = 0;       // across replicates
    double half_ci = 0;      // 3 standard errors
};

inline AsymptoticsSummary asymptotics_experiment(const GrowthLaw& law, long long n, int replicates,
                                                 std::uint64_t seed) {
    if (replicates < 1) throw std::domain_error("asymptotics_experiment: replicates must be >= 1");
    AsymptoticsSummary summary;
    summary.n = n;
    summary.replicates = replicates;
    switch (law.kind) {
        case GrowthLaw::Kind::Uniform:
        case GrowthLaw::Kind::Alpha: summary.statistic = "F/n"; break;
        case GrowthLaw::Kind::Mallows:
            summary.statistic = law.param.is_one() ? "I/n^2"
                                : (!law.param.infinite && law.param.value < 1) ? "I/n"
                                                                               : "(C(n,2)-I)/n";
            break;
        case GrowthLaw::Kind::Ewens: summary.statistic = "C/log n"; break;
    }
    double sum = 0, sumsq = 0;
    for (int rep = 0; rep < replicates; ++rep) {
        GrowthProcess proc(law, seed, static_cast<std::uint64_t>(rep));
        proc.run_to(static_cast<int>(n));
        double value = 0;
        switch (law.kind) {
            case GrowthLaw::Kind::Uniform:
            case GrowthLaw::Kind::Alpha:
                value = static_cast<double>(proc.fixed_points()) / static_cast<double>(n);
                break;
            case GrowthLaw::Kind::Mallows: {
                const double inv = static_cast<double>(proc.inversions());
                if (law.param.is_one())
                    value = inv / (static_cast<double>(n) * static_cast<double>(n));
                else if (!law.param.infinite && law.param.value < 1)
                    value = inv / static_cast<double>(n);
                else
                    value = (static_cast<double>(n) * (static_cast<double>(n) - 1) / 2 - inv) /
                            static_cast<double>(n);
                break;
            }
            case GrowthLaw::Kind::Ewens:
                value = static_cast<double>(proc.cycles()) / std::log(static_cast<double>(n));
                break;
        }
        sum += value;
        sumsq += value * value;
    }
    summary.mean = sum / replicates;
    const double var = std::max(0.0, sumsq / replicates - summary.mean * summary.mean);
    summary.stddev = std::sqrt(var);
    summary.half_ci = 3.0 * summary.stddev / std::sqrt(static_cast<double>(replicates));
    return summary;
}

// Pearson chi-square p-value of observed counts against exact cell
// probabilities (upper tail of the chi-squared distribution).
inline double chi_square_pvalue(const std::vector<long long>& counts, const std::vector<double>& probs) {
    if (counts.size() != probs.size() || counts.size() < 2)
        throw std::invalid_argument("chi_square_pvalue: need matching cells");
    long long total = 0;
    for (long long c : counts) total += c;
    double stat = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expected = probs[i] * static_cast<double>(total);
        if (expected <= 0) throw std::invalid_argument("chi_square_pvalue: zero expected cell");
        const double diff = static_cast<double>(counts[i]) - expected;
        stat += diff * diff / expected;
    }
    const boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

// Total variation distance between empirical counts and an exact law.
inline double total_variation(const std::map<Permutation, long long>& counts, long long total,
                              const ExactLaw& law) {
    double tv = 0;
    std::map<Permutation, long long> rest = counts;
    for (const auto& [perm, p] : law.probs) {
        long long c = 0;
        if (auto it = rest.find(perm); it != rest.end()) {
            c = it->second;
            rest.erase(it);
        }
        tv += std::abs(static_cast<double>(c) / static_cast<double>(total) - to_double(p));
    }
    for (const auto& [perm, c] : rest)
        tv += static_cast<double>(c) / static_cast<double>(total);
    return tv / 2;
}

}  // namespace permsphere
