#pragma once

// Closed-form limit laws of the extreme families (per-permutation
// probabilities), probability-function tables satisfying the backward
// fixed-point recursion, reconstruction from the derangement column, the
// partition EPPF, and the canonical kappa(nu) regimes.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "permsphere/count_tables.hpp"
#include "permsphere/extension_counts.hpp"
#include "permsphere/numeric.hpp"
#include "permsphere/permutation.hpp"

namespace permsphere {

// Per-permutation probability of a permutation with statistic k under the
// extreme law with the given parameter. Statistics without permutations
// (Hamming k = n-1, out-of-range k) get probability 0.
inline Rational limit_law(Metric m, const ExtParam& param, int n, long long k) {
    if (n < 1) throw std::domain_error("limit_law: n must be >= 1");
    switch (m) {
        case Metric::Hamming: {
            if (param.infinite || param.value < 0 || param.value > 1)
                throw std::domain_error("limit_law: alpha must lie in [0,1]");
            if (k < 0 || k > n || k == n - 1) return 0;
            const Rational& alpha = param.value;
            Rational total = 0;
            for (long long j = 0; j <= k; ++j)
                total += Rational(binomial_big(k, j)) * pow_rational(alpha, j) *
                         pow_rational(1 - alpha, n - j) / Rational(factorial_big(n - j));
            return total;
        }
        case Metric::KendallTau: {
            const long long kmax = static_cast<long long>(n) * (n - 1) / 2;
            if (k < 0 || k > kmax) return 0;
            if (param.infinite) return k == kmax ? 1 : 0;
            if (param.value < 0) throw std::domain_error("limit_law: q must lie in [0,inf]");
            return pow_rational(param.value, k) / q_factorial(param.value, n);
        }
        case Metric::Cayley: {
            if (k < 1 || k > n) return 0;
            if (param.infinite) return k == n ? 1 : 0;
            if (param.value < 0) throw std::domain_error("limit_law: theta must lie in [0,inf]");
            if (param.value == 0)
                return k == 1 ? Rational(1, factorial_big(n - 1)) : Rational(0);
            return pow_rational(param.value, k) / rising_factorial(param.value, n);
        }
    }
    throw std::logic_error("unreachable");
}

// Same formulas for an irrational parameter held in floating point; the
// precision is whatever Real carries (default: 128-bit mantissa).
template <typename Real = Real128>
inline Real limit_law_real(Metric m, const Real& param, int n, long long k) {
    using std::pow;
    if (n < 1) throw std::domain_error("limit_law_real: n must be >= 1");
    auto ipow = [](Real base, long long e) {
        Real r = 1;
        for (; e > 0; e >>= 1, base *= base)
            if (e & 1) r *= base;
        return r;
    };
    switch (m) {
        case Metric::Hamming: {
            if (param < 0 || param > 1) throw std::domain_error("limit_law_real: alpha must lie in [0,1]");
            if (k < 0 || k > n || k == n - 1) return 0;
            Real total = 0;
            for (long long j = 0; j <= k; ++j)
                total += Real(binomial_big(k, j)) * ipow(param, j) * ipow(Real(1) - param, n - j) /
                         Real(factorial_big(n - j));
            return total;
        }
        case Metric::KendallTau: {
            const long long kmax = static_cast<long long>(n) * (n - 1) / 2;
            if (k < 0 || k > kmax) return 0;
            if (param < 0) throw std::domain_error("limit_law_real: q must be >= 0");
            Real qfact = 1;
            for (int j = 1; j <= n; ++j) {
                Real qj = 0, p = 1;
                for (int i = 0; i < j; ++i) {
                    qj += p;
                    p *= param;
                }
                qfact *= qj;
            }
            return ipow(param, k) / qfact;
        }
        case Metric::Cayley: {
            if (k < 1 || k > n) return 0;
            if (param < 0) throw std::domain_error("limit_law_real: theta must be >= 0");
            if (param == 0) return k == 1 ? Real(1) / Real(factorial_big(n - 1)) : Real(0);
            Real rise = 1;
            for (int i = 0; i < n; ++i) rise *= param + i;
            return ipow(param, k) / rise;
        }
    }
    throw std::logic_error("unreachable");
}

// A Hamming probability function p_{n,k}: the per-permutation probability of
// a permutation of [n] with k fixed points. Valid indices per row are
// k in {0,...,n-2, n}; the k = n-1 slot is stored as zero and never read.
struct HammingProbFunction {
    int n_max = 0;
    std::vector<std::vector<Rational>> rows;  // rows[n] has n+1 entries

    Rational at(int n, long long k) const {
        if (n < 1 || n > n_max || k < 0 || k > n) return 0;
        return rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }
};

inline std::vector<long long> hamming_valid_statistics(int n) {
    std::vector<long long> ks;
    for (long long k = 0; k + 2 <= n; ++k) ks.push_back(k);
    ks.push_back(n);
    return ks;
}

inline HammingProbFunction hamming_limit_table(const Rational& alpha, int n_max) {
    HammingProbFunction pf;
    pf.n_max = n_max;
    pf.rows.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 1; n <= n_max; ++n) {
        auto& row = pf.rows[static_cast<std::size_t>(n)];
        row.assign(static_cast<std::size_t>(n) + 1, 0);
        for (long long k : hamming_valid_statistics(n))
            row[static_cast<std::size_t>(k)] = limit_law(Metric::Hamming, ExtParam(alpha), n, k);
    }
    return pf;
}

// Rows p^{nu,kappa}_{n,k} of the Martin kernel for n <= n_max (an incomplete
// probability function; the boundary row is included when n_max = nu).
inline HammingProbFunction hamming_kernel_table(int nu, long long kappa, int n_max) {
    if (n_max > nu) throw std::domain_error("hamming_kernel_table: n_max must be <= nu");
    const BigInt sphere = sphere_count(Metric::Hamming, nu, kappa);
    if (sphere == 0) throw std::domain_error("hamming_kernel_table: empty sphere");
    const auto table = extension_counts(Metric::Hamming, nu, kappa, 1);
    HammingProbFunction pf;
    pf.n_max = n_max;
    pf.rows.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 1; n <= n_max; ++n) {
        auto& row = pf.rows[static_cast<std::size_t>(n)];
        row.assign(static_cast<std::size_t>(n) + 1, 0);
        for (long long k = 0; k <= n; ++k)
            if (k != n - 1) row[static_cast<std::size_t>(k)] = Rational(table.at(n, k), sphere);
    }
    return pf;
}

// Checks p_{n,k} = (n-k) p_{n+1,k} + p_{n+1,k+1} + k p_{n+1,k-1} exactly for
// all n < N over the valid indices. Terms with zero coefficient are skipped,
// so the unused k = n-1 slots are never consulted.
inline bool backward_recursion_holds(const HammingProbFunction& pf, int N) {
    if (N > pf.n_max) throw std::domain_error("backward_recursion_holds: N exceeds the table");
    for (int n = 1; n < N; ++n) {
        for (long long k : hamming_valid_statistics(n)) {
            Rational rhs = pf.at(n + 1, k + 1);
            if (k < n) rhs += (n - k) * pf.at(n + 1, k);
            if (k > 0) rhs += k * pf.at(n + 1, k - 1);
            if (pf.at(n, k) != rhs) return false;
        }
    }
    return true;
}

// Rebuilds the whole table from the derangement column p_{n,0} via
// p_{n+1,k+1} = p_{n,k} - (n-k) p_{n+1,k} - k p_{n+1,k-1}, which determines
// every solution of the backward recursion uniquely.
inline HammingProbFunction reconstruct_from_derangement_column(
    const std::function<Rational(int)>& p_n0, int n_max) {
    HammingProbFunction pf;
    pf.n_max = n_max;
    pf.rows.resize(static_cast<std::size_t>(n_max) + 1);
    std::vector<Rational> prev{Rational(1)};  // the empty permutation, p_{0,0} = 1
    for (int n = 1; n <= n_max; ++n) {
        std::vector<Rational> row(static_cast<std::size_t>(n) + 1, 0);
        row[0] = p_n0(n);
        const int m = n - 1;
        std::vector<long long> instances;
        if (m == 0) {
            instances = {0};
        } else {
            for (long long k : hamming_valid_statistics(m)) instances.push_back(k);
        }
        for (long long k : instances) {
            Rational v = prev[static_cast<std::size_t>(k)];
            if (k < m) v -= (m - k) * row[static_cast<std::size_t>(k)];
            if (k > 0) v -= k * row[static_cast<std::size_t>(k - 1)];
            row[static_cast<std::size_t>(k + 1)] = v;
        }
        pf.rows[static_cast<std::size_t>(n)] = row;
        prev = std::move(row);
    }
    return pf;
}

// EPPF of the cycle partition: p(n_1,...,n_l) = p_{n,k} prod_j (n_j - 1)!
// where n is the total size and k the multiplicity of part 1. The map
// p must be indexed by the fixed-point statistic.
template <typename ProbFn>
inline Rational eppf(ProbFn&& p_nk, const std::vector<int>& parts) {
    if (parts.empty()) throw std::domain_error("eppf: empty partition");
    int n = 0;
    long long ones = 0;
    Rational weight = 1;
    for (int part : parts) {
        if (part < 1) throw std::domain_error("eppf: parts must be positive");
        n += part;
        if (part == 1) ++ones;
        weight *= Rational(factorial_big(part - 1));
    }
    return p_nk(n, ones) * weight;
}

inline Rational eppf(const HammingProbFunction& pf, const std::vector<int>& parts) {
    return eppf([&pf](int n, long long k) { return pf.at(n, k); }, parts);
}

// kappa(nu) regimes inducing the extreme laws in the Martin-kernel limit.
struct KappaRegime {
    std::string name;
    std::function<long long(long long)> fn;
    long long operator()(long long nu) const { return fn(nu); }
};

inline KappaRegime regime_hamming_alpha(const Rational& alpha) {
    if (alpha < 0 || alpha > 1) throw std::domain_error("regime_hamming_alpha: alpha out of [0,1]");
    KappaRegime r;
    r.name = "alpha=" + format_rational(alpha);
    r.fn = [alpha](long long nu) {
        long long kappa = round_half_even_ll(alpha * Rational(nu));
        if (kappa == nu - 1) kappa = nu - 2;  // radius-1 sphere is empty
        return kappa;
    };
    return r;
}

inline KappaRegime regime_mallows(const ExtParam& q) {
    KappaRegime r;
    r.name = "q=" + format_ext_param(q);
    r.fn = [q](long long nu) -> long long {
        const long long kmax = nu * (nu - 1) / 2;
        if (q.infinite) return kmax;
        if (q.value < 0) throw std::domain_error("regime_mallows: q out of range");
        if (q.value == 1) return kmax / 2;
        if (q.value < 1) {
            const long long kappa = round_half_even_ll(q.value * Rational(nu) / (1 - q.value));
            return std::min(kappa, kmax);
        }
        const long long tail = round_half_even_ll(Rational(nu) / (q.value - 1));
        return std::max<long long>(kmax - tail, 0);
    };
    return r;
}

inline KappaRegime regime_ewens(const ExtParam& theta) {
    KappaRegime r;
    r.name = "theta=" + format_ext_param(theta);
    r.fn = [theta](long long nu) -> long long {
        if (theta.infinite) return nu;
        const long long kappa = std::llround(to_double(theta.value) * std::log(static_cast<double>(nu)));
        return std::min<long long>(std::max<long long>(kappa, 1), nu);
    };
    return r;
}

}  // namespace permsphere
