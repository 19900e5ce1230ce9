#pragma once

// Exact laws on S_n as rational-valued maps: laws of the growth processes by
// path enumeration, projections of uniform sphere laws by full enumeration,
// spherical-symmetry and backward-transition checks. Everything here is
// exhaustive and meant for desk-scale n.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "permsphere/count_tables.hpp"
#include "permsphere/numeric.hpp"
#include "permsphere/permutation.hpp"
#include "permsphere/samplers.hpp"

namespace permsphere {

struct ExactLaw {
    int n = 0;
    std::map<Permutation, Rational> probs;

    Rational total() const {
        Rational t = 0;
        for (const auto& [perm, p] : probs) t += p;
        return t;
    }
};

template <typename Fn>
inline void for_each_permutation(int n, Fn&& fn) {
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = i + 1;
    do {
        fn(Permutation(w));
    } while (std::next_permutation(w.begin(), w.end()));
}

inline ExactLaw uniform_law(int n) {
    ExactLaw law;
    law.n = n;
    const Rational p(1, factorial_big(n));
    for_each_permutation(n, [&law, &p](const Permutation& perm) { law.probs.emplace(perm, p); });
    return law;
}

// Enriched alpha-law states: permutation plus the set of singular elements
// encoded as a bitmask (bit j-1 set means element j is singular).
struct EnrichedLaw {
    int n = 0;
    Rational alpha;
    std::map<std::pair<Permutation, std::uint64_t>, Rational> probs;
};

inline EnrichedLaw exact_enriched_law(const Rational& alpha, int n) {
    if (n > 62) throw std::domain_error("exact_enriched_law: n too large for exhaustive enumeration");
    EnrichedLaw law;
    law.n = n;
    law.alpha = alpha;
    law.probs.emplace(std::make_pair(Permutation::identity(1), std::uint64_t{0}), 1 - alpha);
    law.probs.emplace(std::make_pair(Permutation::identity(1), std::uint64_t{1}), alpha);
    for (int m = 2; m <= n; ++m) {
        std::map<std::pair<Permutation, std::uint64_t>, Rational> next;
        for (const auto& [state, prob] : law.probs) {
            const auto& [perm, mask] = state;
            const int singular = static_cast<int>(std::popcount(mask));
            const Rational regular_share = (1 - alpha) / (m - singular);
            // element m singular: a new fixed point, flagged
            {
                auto ext = extensions(Metric::Hamming, perm).back();  // appended singleton
                next[std::make_pair(std::move(ext), mask | (std::uint64_t{1} << (m - 1)))] += prob * alpha;
            }
            // element m regular: next to the right of each regular element,
            // or as a regular singleton, each with the same probability
            const auto exts = extensions(Metric::Hamming, perm);
            for (int j = 1; j < m; ++j) {
                if (mask & (std::uint64_t{1} << (j - 1))) continue;
                next[std::make_pair(exts[static_cast<std::size_t>(j - 1)], mask)] += prob * regular_share;
            }
            next[std::make_pair(exts.back(), mask)] += prob * regular_share;
        }
        law.probs = std::move(next);
    }
    return law;
}

inline ExactLaw marginal_law(const EnrichedLaw& enriched) {
    ExactLaw law;
    law.n = enriched.n;
    for (const auto& [state, p] : enriched.probs) law.probs[state.first] += p;
    return law;
}

// Exact law of the growth process after n steps, by path enumeration.
inline ExactLaw exact_growth_law(const GrowthLaw& law, int n) {
    switch (law.kind) {
        case GrowthLaw::Kind::Alpha: return marginal_law(exact_enriched_law(law.alpha, n));
        case GrowthLaw::Kind::Uniform: return uniform_law(n);
        case GrowthLaw::Kind::Mallows: {
            ExactLaw out;
            out.n = n;
            std::map<Permutation, Rational> cur;
            cur.emplace(Permutation::identity(1), 1);
            for (int m = 2; m <= n; ++m) {
                std::map<Permutation, Rational> next;
                for (const auto& [perm, prob] : cur) {
                    const auto exts = extensions(Metric::KendallTau, perm);
                    if (law.param.infinite) {
                        next[exts[static_cast<std::size_t>(m - 1)]] += prob;
                        continue;
                    }
                    const Rational denom = q_integer(law.param.value, m);
                    Rational mass = 1;
                    for (int eta = 0; eta < m; ++eta) {
                        if (law.param.value == 0 && eta > 0) break;
                        const Rational step = law.param.value == 0 ? Rational(1) : mass / denom;
                        next[exts[static_cast<std::size_t>(eta)]] += prob * step;
                        mass *= law.param.value;
                    }
                }
                cur = std::move(next);
            }
            out.probs = std::move(cur);
            return out;
        }
        case GrowthLaw::Kind::Ewens: {
            ExactLaw out;
            out.n = n;
            std::map<Permutation, Rational> cur;
            cur.emplace(Permutation::identity(1), 1);
            for (int m = 2; m <= n; ++m) {
                std::map<Permutation, Rational> next;
                for (const auto& [perm, prob] : cur) {
                    const auto exts = extensions(Metric::Cayley, perm);
                    if (law.param.infinite) {
                        next[exts.back()] += prob;
                        continue;
                    }
                    const Rational singleton = law.param.value == 0
                                                   ? Rational(0)
                                                   : law.param.value / (law.param.value + (m - 1));
                    const Rational insert = law.param.value == 0
                                                ? Rational(1, m - 1)
                                                : Rational(1) / (law.param.value + (m - 1));
                    for (int j = 1; j < m; ++j)
                        next[exts[static_cast<std::size_t>(j - 1)]] += prob * insert;
                    if (singleton != 0) next[exts.back()] += prob * singleton;
                }
                cur = std::move(next);
            }
            out.probs = std::move(cur);
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

// Exact law of the n-projection of the uniform law on the sphere with
// statistic kappa in S_nu, by full enumeration of S_nu.
inline ExactLaw exact_projected_law(Metric m, int nu, long long kappa, int n,
                                    int exhaustive_cap = 8) {
    if (nu > exhaustive_cap)
        throw std::domain_error("exact_projected_law: nu exceeds the exhaustive cap");
    if (n < 1 || n > nu) throw std::domain_error("exact_projected_law: n out of range");
    const BigInt sphere = sphere_count(m, nu, kappa);
    if (sphere == 0) throw std::domain_error("exact_projected_law: empty sphere");
    ExactLaw law;
    law.n = n;
    const Rational unit(1, sphere);
    for_each_permutation(nu, [&](const Permutation& perm) {
        if (metric_statistic(m, perm) != kappa) return;
        law.probs[project_to(m, perm, n)] += unit;
    });
    return law;
}

// Pushforward through one projection step.
inline ExactLaw project_law(const ExactLaw& law, Metric m) {
    if (law.n < 2) throw std::domain_error("project_law: n must be >= 2");
    ExactLaw out;
    out.n = law.n - 1;
    for (const auto& [perm, p] : law.probs) out.probs[project(m, perm)] += p;
    return out;
}

inline std::map<long long, Rational> statistic_law(const ExactLaw& law, Metric m) {
    std::map<long long, Rational> out;
    for (const auto& [perm, p] : law.probs) out[metric_statistic(m, perm)] += p;
    return out;
}

// True iff the law is constant on each sphere of the metric. Permutations
// missing from the map carry probability zero, so a sphere with positive
// mass must be present in full.
inline bool spherically_symmetric(const ExactLaw& law, Metric m) {
    std::map<long long, Rational> value;
    std::map<long long, long long> members;
    for (const auto& [perm, p] : law.probs) {
        const long long k = metric_statistic(m, perm);
        auto [it, inserted] = value.emplace(k, p);
        if (!inserted && it->second != p) return false;
        ++members[k];
    }
    for (const auto& [k, v] : value)
        if (v != 0 && BigInt(members[k]) != sphere_count(m, law.n, k)) return false;
    return true;
}

// True iff the conditional law of the statistic at n given the statistic at
// nu is the same under both input laws (the backward transition property).
// Both laws must live on the same S_nu and be spherically symmetric.
inline bool backward_transition_equal(Metric m, const ExactLaw& law_a, const ExactLaw& law_b, int n) {
    if (law_a.n != law_b.n) throw std::invalid_argument("backward_transition_equal: size mismatch");
    if (n < 1 || n > law_a.n) throw std::domain_error("backward_transition_equal: n out of range");
    if (!spherically_symmetric(law_a, m) || !spherically_symmetric(law_b, m))
        throw std::domain_error("backward_transition_equal: inputs must be spherically symmetric");
    auto conditionals = [&](const ExactLaw& law) {
        std::map<long long, std::map<long long, Rational>> joint;
        std::map<long long, Rational> mass;
        for (const auto& [perm, p] : law.probs) {
            if (p == 0) continue;
            const long long kap = metric_statistic(m, perm);
            const long long k = metric_statistic(m, project_to(m, perm, n));
            joint[kap][k] += p;
            mass[kap] += p;
        }
        for (auto& [kap, row] : joint)
            for (auto& [k, p] : row) p /= mass[kap];
        return joint;
    };
    const auto ca = conditionals(law_a);
    const auto cb = conditionals(law_b);
    for (const auto& [kap, row_a] : ca) {
        const auto it = cb.find(kap);
        if (it == cb.end()) continue;  // statistic not reachable under the other law
        if (row_a != it->second) return false;
    }
    return true;
}

// Convex mixture of two laws on the same S_n.
inline ExactLaw mix_laws(const ExactLaw& a, const ExactLaw& b, const Rational& weight_a) {
    if (a.n != b.n) throw std::invalid_argument("mix_laws: size mismatch");
    ExactLaw out;
    out.n = a.n;
    for (const auto& [perm, p] : a.probs) out.probs[perm] += weight_a * p;
    for (const auto& [perm, p] : b.probs) out.probs[perm] += (1 - weight_a) * p;
    return out;
}

}  // namespace permsphere
