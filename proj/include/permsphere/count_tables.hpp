#pragma once

// Exact sphere counts for the three metrics: derangement-based counts
// D_{n,k} = C(n,k) d_{n-k} (Hamming, k fixed points), Mahonian numbers
// M_{n,k} (Kendall-tau, k inversions) and unsigned Stirling numbers of the
// first kind c(n,k) (Cayley, k cycles). Everything is an exact big integer;
// out-of-range k yields count 0 rather than an error.

#include <map>
#include <stdexcept>
#include <vector>

#include "permsphere/numeric.hpp"
#include "permsphere/permutation.hpp"

namespace permsphere {

inline std::vector<BigInt> derangement_table(int n_max) {
    std::vector<BigInt> d(static_cast<std::size_t>(n_max) + 1);
    d[0] = 1;
    if (n_max >= 1) d[1] = 0;
    for (int n = 2; n <= n_max; ++n)
        d[static_cast<std::size_t>(n)] =
            (n - 1) * (d[static_cast<std::size_t>(n - 1)] + d[static_cast<std::size_t>(n - 2)]);
    return d;
}

inline BigInt derangement_count(int n) {
    if (n < 0) throw std::domain_error("derangement_count: negative n");
    return derangement_table(n)[static_cast<std::size_t>(n)];
}

inline BigInt hamming_sphere_count(int n, long long k) {
    if (k < 0 || k > n) return 0;
    return binomial_big(n, k) * derangement_count(n - static_cast<int>(k));
}

// Counts of integer strings eta_{j_lo}..eta_{j_hi} with 0 <= eta_j < j and
// sum t, for t = 0..t_max. With j_lo = 1 this is the Mahonian row builder;
// with j_lo = n+1 it counts Kendall-tau extension strings.
inline std::vector<BigInt> code_sum_counts(int j_lo, int j_hi, long long t_max) {
    std::vector<BigInt> cur(static_cast<std::size_t>(t_max) + 1);
    cur[0] = 1;
    std::vector<BigInt> prefix(static_cast<std::size_t>(t_max) + 2);
    for (int j = j_lo; j <= j_hi; ++j) {
        prefix[0] = 0;
        for (long long t = 0; t <= t_max; ++t)
            prefix[static_cast<std::size_t>(t) + 1] = prefix[static_cast<std::size_t>(t)] + cur[static_cast<std::size_t>(t)];
        for (long long t = t_max; t >= 0; --t) {
            const long long lo = std::max<long long>(0, t - (j - 1));
            cur[static_cast<std::size_t>(t)] =
                prefix[static_cast<std::size_t>(t) + 1] - prefix[static_cast<std::size_t>(lo)];
        }
    }
    return cur;
}

inline std::vector<BigInt> mahonian_row(int n, long long t_max) { return code_sum_counts(1, n, t_max); }

inline BigInt mahonian_number(int n, long long k) {
    const long long kmax = static_cast<long long>(n) * (n - 1) / 2;
    if (k < 0 || k > kmax) return 0;
    return mahonian_row(n, k)[static_cast<std::size_t>(k)];
}

// Row c(n, .) of unsigned Stirling numbers of the first kind, k = 0..k_max.
inline std::vector<BigInt> stirling_first_row(int n, long long k_max) {
    std::vector<BigInt> prev(static_cast<std::size_t>(k_max) + 1), cur(static_cast<std::size_t>(k_max) + 1);
    prev[0] = 1;  // c(0,0) = 1
    for (int m = 1; m <= n; ++m) {
        cur[0] = 0;
        for (long long k = 1; k <= k_max; ++k)
            cur[static_cast<std::size_t>(k)] =
                prev[static_cast<std::size_t>(k - 1)] + (m - 1) * prev[static_cast<std::size_t>(k)];
        std::swap(prev, cur);
    }
    return prev;
}

inline BigInt stirling_first(int n, long long k) {
    if (k < (n == 0 ? 0 : 1) || k > n) return 0;
    return stirling_first_row(n, k)[static_cast<std::size_t>(k)];
}

inline BigInt sphere_count(Metric m, int n, long long k) {
    if (n < 1) throw std::domain_error("sphere_count: n must be >= 1");
    switch (m) {
        case Metric::Hamming: return hamming_sphere_count(n, k);
        case Metric::KendallTau: return mahonian_number(n, k);
        case Metric::Cayley: return stirling_first(n, k);
    }
    throw std::logic_error("unreachable");
}

// Sphere sizes for n = 1..n_max, statistic k = 0..k_cap(n). Rows are built
// once and immutable afterwards.
struct CountTable {
    Metric metric = Metric::Hamming;
    int n_max = 0;
    std::vector<std::vector<BigInt>> rows;  // rows[n][k]

    const BigInt& at(int n, long long k) const {
        static const BigInt zero = 0;
        if (n < 1 || n > n_max) return zero;
        const auto& row = rows[static_cast<std::size_t>(n)];
        if (k < 0 || k >= static_cast<long long>(row.size())) return zero;
        return row[static_cast<std::size_t>(k)];
    }
};

inline CountTable build_count_table(Metric m, int n_max, long long k_cap = -1) {
    CountTable t;
    t.metric = m;
    t.n_max = n_max;
    t.rows.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 1; n <= n_max; ++n) {
        long long kmax = statistic_max(m, n);
        if (k_cap >= 0) kmax = std::min(kmax, k_cap);
        std::vector<BigInt> row;
        switch (m) {
            case Metric::Hamming: {
                const auto d = derangement_table(n);
                row.resize(static_cast<std::size_t>(kmax) + 1);
                for (long long k = 0; k <= kmax; ++k)
                    row[static_cast<std::size_t>(k)] =
                        binomial_big(n, k) * d[static_cast<std::size_t>(n - k)];
                break;
            }
            case Metric::KendallTau: row = mahonian_row(n, kmax); break;
            case Metric::Cayley: row = stirling_first_row(n, kmax); break;
        }
        t.rows[static_cast<std::size_t>(n)] = std::move(row);
    }
    return t;
}

// Checks D_{n,k} = (n-k-1) D_{n-1,k} + D_{n-1,k-1} + (k+1) D_{n-1,k+1} for
// all 0 <= k <= n, with D_{m,j} = 0 for j outside 0..m.
inline bool hamming_recursion_holds(int n) {
    if (n < 2) throw std::domain_error("hamming_recursion_holds: n must be >= 2");
    for (long long k = 0; k <= n; ++k) {
        const BigInt lhs = hamming_sphere_count(n, k);
        const BigInt rhs = (n - k - 1) * hamming_sphere_count(n - 1, k) +
                           hamming_sphere_count(n - 1, k - 1) +
                           (k + 1) * hamming_sphere_count(n - 1, k + 1);
        if (lhs != rhs) return false;
    }
    return true;
}

}  // namespace permsphere
