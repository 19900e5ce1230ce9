#pragma once

// Extension counts D^{nu,kappa}_{n,k}: the number of extensions of a
// permutation of [n] with statistic k to a permutation of [nu] with
// statistic kappa. Computed by backward dynamic programming from the
// boundary row at nu, using the per-metric branching counts of the
// projection systems. The Martin kernel is the exact rational ratio
// D^{nu,kappa}_{n,k} / D_{nu,kappa}.

#include <stdexcept>
#include <vector>

#include "permsphere/count_tables.hpp"
#include "permsphere/numeric.hpp"
#include "permsphere/permutation.hpp"

namespace permsphere {

namespace detail {

inline long long extension_row_width(Metric m, int n, long long kappa) {
    // statistics reachable at size n on a path to statistic kappa at size nu
    switch (m) {
        case Metric::Hamming: return n;  // k in 0..n
        case Metric::KendallTau: return std::min<long long>(kappa, static_cast<long long>(n) * (n - 1) / 2);
        case Metric::Cayley: return std::min<long long>(kappa, n);
    }
    throw std::logic_error("unreachable");
}

// One backward step: from the row of D^{nu,kappa}_{n+1,.} to D^{nu,kappa}_{n,.}.
inline std::vector<BigInt> extension_step_down(Metric m, int n, long long kappa,
                                               const std::vector<BigInt>& next) {
    auto get = [&next](long long k) -> const BigInt& {
        static const BigInt zero = 0;
        if (k < 0 || k >= static_cast<long long>(next.size())) return zero;
        return next[static_cast<std::size_t>(k)];
    };
    const long long width = extension_row_width(m, n, kappa);
    std::vector<BigInt> row(static_cast<std::size_t>(width) + 1);
    switch (m) {
        case Metric::Hamming:
            // a size-n permutation with k fixed points has one extension with
            // k+1 of them, k with k-1 and n-k with k
            for (long long k = 0; k <= width; ++k)
                row[static_cast<std::size_t>(k)] =
                    get(k + 1) + k * get(k - 1) + (n - k) * get(k);
            // k = n-1 is never attained; the slot only ever feeds other
            // unattainable slots, so it is kept at the true count of zero
            if (n >= 1) row[static_cast<std::size_t>(n - 1)] = 0;
            break;
        case Metric::KendallTau: {
            // window sums over eta_{n+1} in 0..n via suffix sums of the next row
            std::vector<BigInt> suffix(next.size() + 1);
            for (long long k = static_cast<long long>(next.size()) - 1; k >= 0; --k)
                suffix[static_cast<std::size_t>(k)] =
                    suffix[static_cast<std::size_t>(k) + 1] + next[static_cast<std::size_t>(k)];
            auto suf = [&suffix](long long k) -> const BigInt& {
                static const BigInt zero = 0;
                if (k < 0) k = 0;
                if (k >= static_cast<long long>(suffix.size())) return suffix.back();
                return suffix[static_cast<std::size_t>(k)];
            };
            for (long long k = 0; k <= width; ++k) row[static_cast<std::size_t>(k)] = suf(k) - suf(k + n + 1);
            break;
        }
        case Metric::Cayley:
            // n extensions keep the cycle count, one adds a cycle
            for (long long k = 0; k <= width; ++k)
                row[static_cast<std::size_t>(k)] = n * get(k) + get(k + 1);
            break;
    }
    return row;
}

inline void check_extension_args(Metric m, int nu, long long kappa) {
    if (nu < 1) throw std::domain_error("extension counts: nu must be >= 1");
    if (kappa < statistic_min(m, nu) || kappa > statistic_max(m, nu))
        throw std::domain_error("extension counts: kappa out of range");
}

}  // namespace detail

// Single row D^{nu,kappa}_{n,.}; index k, entries beyond the stored width are 0.
inline std::vector<BigInt> extension_row(Metric m, int nu, long long kappa, int n) {
    detail::check_extension_args(m, nu, kappa);
    if (n < 1 || n > nu) throw std::domain_error("extension_row: n out of range");
    std::vector<BigInt> row(static_cast<std::size_t>(detail::extension_row_width(m, nu, kappa)) + 1);
    row[static_cast<std::size_t>(kappa)] = 1;
    for (int mlevel = nu - 1; mlevel >= n; --mlevel)
        row = detail::extension_step_down(m, mlevel, kappa, row);
    return row;
}

struct ExtensionCountTable {
    Metric metric = Metric::Hamming;
    int nu = 0;
    long long kappa = 0;
    int n_min = 1;
    std::vector<std::vector<BigInt>> rows;  // rows[n - n_min][k]

    const BigInt& at(int n, long long k) const {
        static const BigInt zero = 0;
        if (n < n_min || n > nu) return zero;
        const auto& row = rows[static_cast<std::size_t>(n - n_min)];
        if (k < 0 || k >= static_cast<long long>(row.size())) return zero;
        return row[static_cast<std::size_t>(k)];
    }
};

inline ExtensionCountTable extension_counts(Metric m, int nu, long long kappa, int n_min = 1) {
    detail::check_extension_args(m, nu, kappa);
    if (n_min < 1 || n_min > nu) throw std::domain_error("extension_counts: n_min out of range");
    ExtensionCountTable t;
    t.metric = m;
    t.nu = nu;
    t.kappa = kappa;
    t.n_min = n_min;
    t.rows.resize(static_cast<std::size_t>(nu - n_min) + 1);
    std::vector<BigInt> row(static_cast<std::size_t>(detail::extension_row_width(m, nu, kappa)) + 1);
    row[static_cast<std::size_t>(kappa)] = 1;
    t.rows.back() = row;
    for (int n = nu - 1; n >= n_min; --n) {
        row = detail::extension_step_down(m, n, kappa, row);
        t.rows[static_cast<std::size_t>(n - n_min)] = row;
    }
    return t;
}

// Closed form for the Hamming derangement column (k = 0):
//   D^{nu,kappa}_{n,0} = sum_m C(nu-n, m) n(n+1)...(n+m-1) C(nu-n-m, kappa) d_{nu-n-m-kappa}
// summed over m = 0..nu-n-kappa; zero when kappa > nu - n.
inline BigInt hamming_extension_closed_form(int nu, long long kappa, int n) {
    if (n < 1 || n > nu) throw std::domain_error("hamming_extension_closed_form: n out of range");
    if (kappa < 0 || kappa > nu - n) return 0;
    const auto d = derangement_table(nu);
    BigInt total = 0;
    BigInt rising = 1;  // n (n+1) ... (n+m-1)
    for (long long mm = 0; mm <= nu - n - kappa; ++mm) {
        if (mm > 0) rising *= n + mm - 1;
        total += binomial_big(nu - n, mm) * rising * binomial_big(nu - n - mm, kappa) *
                 d[static_cast<std::size_t>(nu - n - mm - kappa)];
    }
    return total;
}

// Martin kernel p^{nu,kappa}_{n,k} = D^{nu,kappa}_{n,k} / D_{nu,kappa}.
inline Rational martin_kernel(Metric m, int nu, long long kappa, int n, long long k) {
    const BigInt sphere = sphere_count(m, nu, kappa);
    if (sphere == 0) throw std::domain_error("martin_kernel: empty sphere at (nu, kappa)");
    const auto row = extension_row(m, nu, kappa, n);
    const BigInt ext = (k < 0 || k >= static_cast<long long>(row.size()))
                           ? BigInt(0)
                           : row[static_cast<std::size_t>(k)];
    return Rational(ext, sphere);
}

// Whole kernel row at size n (index k), sharing one sphere-count computation.
inline std::vector<Rational> martin_kernel_row(Metric m, int nu, long long kappa, int n) {
    const BigInt sphere = sphere_count(m, nu, kappa);
    if (sphere == 0) throw std::domain_error("martin_kernel_row: empty sphere at (nu, kappa)");
    const auto row = extension_row(m, nu, kappa, n);
    std::vector<Rational> out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) out[i] = Rational(row[i], sphere);
    return out;
}

}  // namespace permsphere
