#pragma once

// Seeded growth processes for the extreme families (uniform Chinese
// restaurant, the enriched singular/regular construction, Mallows via
// truncated-geometric Lehmer coordinates, Ewens), exact uniform sampling on
// metric spheres, and the bivariate singular/regular fixed-point chain.

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "permsphere/count_tables.hpp"
#include "permsphere/extension_counts.hpp"
#include "permsphere/numeric.hpp"
#include "permsphere/permutation.hpp"
#include "permsphere/rng.hpp"

namespace permsphere {

struct GrowthLaw {
    enum class Kind { Uniform, Alpha, Mallows, Ewens };
    Kind kind = Kind::Uniform;
    Rational alpha{0};   // Alpha law
    ExtParam param{0};   // q (Mallows) or theta (Ewens)
};

inline GrowthLaw growth_uniform() { return {}; }

inline GrowthLaw growth_alpha(const Rational& alpha) {
    if (alpha < 0 || alpha > 1) throw std::domain_error("growth_alpha: alpha must lie in [0,1]");
    GrowthLaw law;
    law.kind = GrowthLaw::Kind::Alpha;
    law.alpha = alpha;
    return law;
}

inline GrowthLaw growth_mallows(const ExtParam& q) {
    if (!q.infinite && q.value < 0) throw std::domain_error("growth_mallows: q must lie in [0,inf]");
    GrowthLaw law;
    law.kind = GrowthLaw::Kind::Mallows;
    law.param = q;
    return law;
}

inline GrowthLaw growth_ewens(const ExtParam& theta) {
    if (!theta.infinite && theta.value < 0)
        throw std::domain_error("growth_ewens: theta must lie in [0,inf]");
    GrowthLaw law;
    law.kind = GrowthLaw::Kind::Ewens;
    law.param = theta;
    return law;
}

inline std::string law_name(const GrowthLaw& law) {
    switch (law.kind) {
        case GrowthLaw::Kind::Uniform: return "uniform";
        case GrowthLaw::Kind::Alpha: return "alpha";
        case GrowthLaw::Kind::Mallows: return "mallows";
        case GrowthLaw::Kind::Ewens: return "ewens";
    }
    return "?";
}

// The metric whose projection system the law is consistent with.
inline Metric law_metric(const GrowthLaw& law) {
    switch (law.kind) {
        case GrowthLaw::Kind::Mallows: return Metric::KendallTau;
        case GrowthLaw::Kind::Ewens: return Metric::Cayley;
        default: return Metric::Hamming;  // cycle-deletion projections
    }
}

struct EnrichedPermutation {
    Permutation perm;
    std::vector<int> singular;  // sorted; always a subset of the fixed points
};

namespace detail {

// Truncated geometric on {0..n-1} with masses proportional to q^i, 0 < q < 1.
inline int truncated_geometric(Rng& rng, double q, int n) {
    const double u = rng.uniform01();
    const double qn = std::pow(q, n);
    const double x = 1.0 - u * (1.0 - qn);
    const double t = std::log(x) / std::log(q);
    auto i = static_cast<long long>(std::ceil(t - 1.0));
    if (i < 0) i = 0;
    if (i > n - 1) i = n - 1;
    return static_cast<int>(i);
}

}  // namespace detail

// A permutation-valued growth process: step() extends the state from S_{n-1}
// to S_n consistently with the law's projection system. One instance owns
// one RNG; run distinct seeded instances for parallel replicas.
class GrowthProcess {
  public:
    GrowthProcess(GrowthLaw law, std::uint64_t seed, std::uint64_t stream = 0)
        : law_(std::move(law)), rng_(seed, stream) {
        // small-integer fast path for the per-step Bernoulli decisions
        if (law_.kind == GrowthLaw::Kind::Ewens && !law_.param.infinite) {
            const BigInt num = boost::multiprecision::numerator(law_.param.value);
            const BigInt den = boost::multiprecision::denominator(law_.param.value);
            if (num < (1LL << 40) && den < (1LL << 20)) {
                theta_num_ = num.convert_to<std::uint64_t>();
                theta_den_ = den.convert_to<std::uint64_t>();
            }
        }
    }

    const GrowthLaw& law() const { return law_; }
    Rng& rng() { return rng_; }

    int size() const {
        return law_.kind == GrowthLaw::Kind::Mallows ? static_cast<int>(code_.size())
                                                     : static_cast<int>(word_.size());
    }

    void step() {
        const int n = size() + 1;
        switch (law_.kind) {
            case GrowthLaw::Kind::Uniform: {
                const long long r = rng_.uniform_int(1, n);
                if (r == n)
                    append_singleton(n);
                else
                    insert_right(static_cast<int>(r), n);
                break;
            }
            case GrowthLaw::Kind::Alpha: {
                if (bernoulli_rational(rng_, law_.alpha)) {
                    append_singleton(n);
                    singular_.push_back(n);
                } else {
                    const long long t = rng_.uniform_int(0, static_cast<long long>(regulars_.size()));
                    if (t == static_cast<long long>(regulars_.size()))
                        append_singleton(n);
                    else
                        insert_right(regulars_[static_cast<std::size_t>(t)], n);
                    regulars_.push_back(n);
                }
                break;
            }
            case GrowthLaw::Kind::Ewens: {
                bool new_cycle;
                if (n == 1 || law_.param.infinite) {
                    new_cycle = true;
                } else if (law_.param.value == 0) {
                    new_cycle = false;
                } else if (theta_den_ != 0) {
                    // theta/(theta + n - 1) = num/(num + (n-1) den), exactly
                    new_cycle = rng_.below(theta_num_ +
                                           static_cast<std::uint64_t>(n - 1) * theta_den_) < theta_num_;
                } else {
                    new_cycle = bernoulli_rational(rng_, law_.param.value / (law_.param.value + (n - 1)));
                }
                if (new_cycle)
                    append_singleton(n);
                else
                    insert_right(static_cast<int>(rng_.uniform_int(1, n - 1)), n);
                break;
            }
            case GrowthLaw::Kind::Mallows: {
                int eta;
                if (law_.param.infinite) {
                    eta = n - 1;
                } else if (law_.param.value == 0) {
                    eta = 0;
                } else if (law_.param.value == 1) {
                    eta = static_cast<int>(rng_.uniform_int(0, n - 1));
                } else if (law_.param.value < 1) {
                    eta = detail::truncated_geometric(rng_, to_double(law_.param.value), n);
                } else {
                    // reflect a Mallows(1/q) draw; realizes the value complement
                    eta = n - 1 - detail::truncated_geometric(rng_, 1.0 / to_double(law_.param.value), n);
                }
                code_.push_back(eta);
                inversions_ += eta;
                break;
            }
        }
    }

    void run_to(int n) {
        if (law_.kind == GrowthLaw::Kind::Mallows)
            code_.reserve(static_cast<std::size_t>(n));
        else
            word_.reserve(static_cast<std::size_t>(n));
        while (size() < n) step();
    }

    Permutation permutation() const {
        if (law_.kind == GrowthLaw::Kind::Mallows) return lehmer_decode(LehmerCode{code_});
        return Permutation(word_);
    }

    EnrichedPermutation enriched() const {
        if (law_.kind != GrowthLaw::Kind::Alpha)
            throw std::logic_error("enriched state exists only for the alpha law");
        return EnrichedPermutation{Permutation(word_), singular_};
    }

    // O(1) running statistics, maintained per law.
    int fixed_points() const { return fixed_points_; }
    int cycles() const { return cycles_; }
    long long inversions() const {
        if (law_.kind == GrowthLaw::Kind::Mallows) return inversions_;
        return inversion_count(Permutation(word_));
    }
    int singular_count() const { return static_cast<int>(singular_.size()); }

    long long statistic(Metric m) const {
        switch (m) {
            case Metric::Hamming:
                if (law_.kind == GrowthLaw::Kind::Mallows) return fixed_point_count(permutation());
                return fixed_points_;
            case Metric::KendallTau: return inversions();
            case Metric::Cayley:
                if (law_.kind == GrowthLaw::Kind::Mallows) return cycle_count(permutation());
                return cycles_;
        }
        throw std::logic_error("unreachable");
    }

  private:
    void append_singleton(int n) {
        word_.push_back(n);
        ++fixed_points_;
        ++cycles_;
    }

    void insert_right(int j, int n) {
        const int old = word_[static_cast<std::size_t>(j - 1)];
        word_.push_back(old);
        word_[static_cast<std::size_t>(j - 1)] = n;
        if (old == j) --fixed_points_;
    }

    GrowthLaw law_;
    Rng rng_;
    std::vector<int> word_;      // cycle-insertion laws
    std::vector<int> code_;      // Mallows Lehmer code
    std::vector<int> regulars_;  // alpha law
    std::vector<int> singular_;  // alpha law, sorted by construction
    std::uint64_t theta_num_ = 0;
    std::uint64_t theta_den_ = 0;  // zero when theta does not fit the fast path
    int fixed_points_ = 0;
    int cycles_ = 0;
    long long inversions_ = 0;
};

// Exactly uniform sampling on the sphere of the given radius. Construction
// precomputes the count tables; draw() is cheap and exact (all branch
// decisions are big-integer draws).
class SphereSampler {
  public:
    SphereSampler(Metric m, int n, long long radius)
        : metric_(m), n_(n), radius_(radius), statistic_(radius_to_statistic(m, n, radius)) {
        if (n < 1) throw std::domain_error("SphereSampler: n must be >= 1");
        if (sphere_count(m, n, statistic_) == 0)
            throw std::domain_error("SphereSampler: empty sphere");
        switch (m) {
            case Metric::Hamming: derangements_ = derangement_table(n); break;
            case Metric::KendallTau: {
                prefix_counts_.resize(static_cast<std::size_t>(n) + 1);
                for (int j = 0; j <= n; ++j) {
                    const long long cap =
                        std::min<long long>(radius, static_cast<long long>(j) * (j - 1) / 2);
                    prefix_counts_[static_cast<std::size_t>(j)] = code_sum_counts(1, j, cap);
                }
                break;
            }
            case Metric::Cayley:
                weights_ = extension_counts(Metric::Cayley, n, statistic_, 1);
                break;
        }
    }

    Metric metric() const { return metric_; }
    long long radius() const { return radius_; }

    Permutation draw(Rng& rng) const {
        switch (metric_) {
            case Metric::Hamming: return draw_hamming(rng);
            case Metric::KendallTau: return draw_kendall(rng);
            case Metric::Cayley: return draw_cayley(rng);
        }
        throw std::logic_error("unreachable");
    }

  private:
    Permutation draw_hamming(Rng& rng) const {
        const int fixed = static_cast<int>(statistic_);
        std::vector<int> idx(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
        // uniform fixed set: partial Fisher-Yates over the positions
        for (int i = 0; i < fixed; ++i)
            std::swap(idx[static_cast<std::size_t>(i)],
                      idx[static_cast<std::size_t>(rng.uniform_int(i, n_ - 1))]);
        std::vector<int> word(static_cast<std::size_t>(n_));
        for (int i = 0; i < fixed; ++i) word[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)] - 1)] =
            idx[static_cast<std::size_t>(i)];
        std::vector<int> rest(idx.begin() + fixed, idx.end());
        derange_into(rng, rest, word);
        return Permutation(std::move(word));
    }

    // Uniform derangement via the two-cycle / longer-cycle split
    // d_m = (m-1)(d_{m-2} + d_{m-1}): element x either closes a 2-cycle with
    // a uniformly chosen partner or is inserted into a derangement of the
    // remaining elements. Decisions are logged top-down and replayed in
    // reverse so insertions see exactly the set deranged after them.
    void derange_into(Rng& rng, std::vector<int>& active, std::vector<int>& word) const {
        struct Step {
            int x;
            int partner;  // -1 for insertion steps
        };
        std::vector<Step> log;
        log.reserve(active.size());
        while (active.size() >= 2) {
            const auto m = static_cast<int>(active.size());
            const int x = active.back();
            active.pop_back();
            const BigInt pair_weight = (m - 1) * derangements_[static_cast<std::size_t>(m - 2)];
            const BigInt u = uniform_bigint_below(rng, derangements_[static_cast<std::size_t>(m)]);
            if (u < pair_weight) {
                const auto t = static_cast<std::size_t>(
                    BigInt(u / derangements_[static_cast<std::size_t>(m - 2)]).convert_to<long long>());
                const int y = active[t];
                active[t] = active.back();
                active.pop_back();
                log.push_back({x, y});
            } else {
                log.push_back({x, -1});
            }
        }
        std::vector<int> members;
        for (auto it = log.rbegin(); it != log.rend(); ++it) {
            if (it->partner >= 0) {
                word[static_cast<std::size_t>(it->x - 1)] = it->partner;
                word[static_cast<std::size_t>(it->partner - 1)] = it->x;
                members.push_back(it->x);
                members.push_back(it->partner);
            } else {
                const int y = members[static_cast<std::size_t>(
                    rng.uniform_int(0, static_cast<long long>(members.size()) - 1))];
                word[static_cast<std::size_t>(it->x - 1)] = word[static_cast<std::size_t>(y - 1)];
                word[static_cast<std::size_t>(y - 1)] = it->x;
                members.push_back(it->x);
            }
        }
    }

    Permutation draw_kendall(Rng& rng) const {
        std::vector<int> eta(static_cast<std::size_t>(n_));
        long long t = statistic_;
        for (int j = n_; j >= 1; --j) {
            const auto& prev = prefix_counts_[static_cast<std::size_t>(j - 1)];
            auto weight = [&prev](long long s) -> const BigInt& {
                static const BigInt zero = 0;
                if (s < 0 || s >= static_cast<long long>(prev.size())) return zero;
                return prev[static_cast<std::size_t>(s)];
            };
            BigInt u = uniform_bigint_below(
                rng, prefix_counts_[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)]);
            int e = 0;
            for (; e < j; ++e) {
                const BigInt& w = weight(t - e);
                if (u < w) break;
                u -= w;
            }
            eta[static_cast<std::size_t>(j - 1)] = e;
            t -= e;
        }
        return lehmer_decode(LehmerCode{eta});
    }

    Permutation draw_cayley(Rng& rng) const {
        std::vector<int> word{1};
        word.reserve(static_cast<std::size_t>(n_));
        long long c = 1;
        for (int j = 2; j <= n_; ++j) {
            const BigInt& total = weights_.at(j - 1, c);
            const BigInt& open = weights_.at(j, c + 1);
            const BigInt u = uniform_bigint_below(rng, total);
            if (u < open) {
                word.push_back(j);
                ++c;
            } else {
                const auto t = static_cast<std::size_t>(
                    BigInt((u - open) / weights_.at(j, c)).convert_to<long long>());
                word.push_back(word[t]);
                word[t] = j;
            }
        }
        return Permutation(std::move(word));
    }

    Metric metric_;
    int n_;
    long long radius_;
    long long statistic_;
    std::vector<BigInt> derangements_;                  // Hamming
    std::vector<std::vector<BigInt>> prefix_counts_;    // Kendall, per prefix length
    ExtensionCountTable weights_;                       // Cayley
};

inline Permutation sample_sphere_uniform(Metric m, int n, long long radius, Rng& rng) {
    return SphereSampler(m, n, radius).draw(rng);
}

// One step of the bivariate (singular, regular) fixed-point chain of the
// enriched alpha construction; (s, r) is the state after n-1 elements.
inline std::pair<int, int> bivariate_chain_step(int s, int r, int n, const Rational& alpha, Rng& rng) {
    if (alpha < 0 || alpha > 1) throw std::domain_error("bivariate_chain_step: alpha out of [0,1]");
    if (s < 0 || r < 0 || s + r > n - 1)
        throw std::domain_error("bivariate_chain_step: invalid state for this step");
    if (bernoulli_rational(rng, alpha)) return {s + 1, r};
    // the remaining mass splits uniformly over n - s slots:
    // one new regular singleton, r regular fixed points, n-1-r-s other regulars
    const long long t = rng.uniform_int(0, n - s - 1);
    if (t == 0) return {s, r + 1};
    if (t <= r) return {s, r - 1};
    return {s, r};
}

}  // namespace permsphere
