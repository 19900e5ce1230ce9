#pragma once

// Machine-readable exports: count tables as CSV ("n,k,count") and JSON,
// kernel-convergence reports as CSV, newline-delimited sample dumps, and
// run-metadata JSON. CSV is the stable data interface; metadata carries the
// law, parameters, seed and replicate count of every randomized run.

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>
#include <vector>

#include "permsphere/count_tables.hpp"
#include "permsphere/extension_counts.hpp"
#include "permsphere/numeric.hpp"
#include "permsphere/permutation.hpp"
#include "permsphere/samplers.hpp"
#include "permsphere/verify.hpp"

namespace permsphere {

using json = nlohmann::json;

inline void write_count_table_csv(std::ostream& os, const CountTable& table, int n_from = -1) {
    os << "n,k,count\n";
    const int lo = n_from < 1 ? 1 : n_from;
    for (int n = lo; n <= table.n_max; ++n) {
        const auto& row = table.rows[static_cast<std::size_t>(n)];
        for (std::size_t k = 0; k < row.size(); ++k)
            os << n << ',' << k << ',' << row[k].str() << '\n';
    }
}

inline json count_table_json(const CountTable& table, int n_from = -1) {
    json rows = json::array();
    const int lo = n_from < 1 ? 1 : n_from;
    for (int n = lo; n <= table.n_max; ++n) {
        const auto& row = table.rows[static_cast<std::size_t>(n)];
        for (std::size_t k = 0; k < row.size(); ++k)
            rows.push_back({{"n", n}, {"k", k}, {"count", row[k].str()}});
    }
    return json{{"metric", metric_name(table.metric)}, {"rows", rows}};
}

inline void write_extension_table_csv(std::ostream& os, const ExtensionCountTable& table) {
    os << "n,k,count\n";
    for (int n = table.n_min; n <= table.nu; ++n) {
        const auto& row = table.rows[static_cast<std::size_t>(n - table.n_min)];
        for (std::size_t k = 0; k < row.size(); ++k)
            os << n << ',' << k << ',' << row[k].str() << '\n';
    }
}

inline void write_kernel_rows_csv(std::ostream& os, const std::vector<KernelRow>& rows) {
    const auto saved = os.precision(17);  // floats must round-trip
    os << "nu,kappa,n,k,exact_num,exact_den,float_value,limit_value,abs_err\n";
    for (const auto& row : rows) {
        os << row.nu << ',' << row.kappa << ',' << row.n << ',' << row.k << ','
           << boost::multiprecision::numerator(row.kernel).str() << ','
           << boost::multiprecision::denominator(row.kernel).str() << ',' << to_double(row.kernel)
           << ',' << to_double(row.limit) << ',' << to_double(row.abs_err) << '\n';
    }
    os.precision(saved);
}

inline void write_monotonicity_csv(std::ostream& os, const MonotonicityReport& report) {
    os << "metric,nu,statistic_hi,statistic_lo,radius_hi,radius_lo,n,ok\n";
    for (const auto& e : report.entries)
        os << metric_name(report.metric) << ',' << report.nu << ',' << e.statistic_hi << ','
           << e.statistic_lo << ',' << e.radius_hi << ',' << e.radius_lo << ',' << e.n << ','
           << (e.ok ? 1 : 0) << '\n';
}

inline void write_asymptotics_csv(std::ostream& os, const std::vector<AsymptoticsSummary>& rows) {
    const auto saved = os.precision(17);
    os << "statistic,n,replicates,mean,stddev,half_ci\n";
    for (const auto& s : rows)
        os << s.statistic << ',' << s.n << ',' << s.replicates << ',' << s.mean << ',' << s.stddev
           << ',' << s.half_ci << '\n';
    os.precision(saved);
}

inline void write_samples(std::ostream& os, const std::vector<Permutation>& samples) {
    for (const auto& perm : samples) os << format_one_line(perm) << '\n';
}

inline json sample_metadata(const GrowthLaw& law, int n, long long count, std::uint64_t seed) {
    json meta{{"law", law_name(law)}, {"n", n}, {"count", count}, {"seed", seed}};
    switch (law.kind) {
        case GrowthLaw::Kind::Alpha: meta["alpha"] = format_rational(law.alpha); break;
        case GrowthLaw::Kind::Mallows: meta["q"] = format_ext_param(law.param); break;
        case GrowthLaw::Kind::Ewens: meta["theta"] = format_ext_param(law.param); break;
        case GrowthLaw::Kind::Uniform: break;
    }
    return meta;
}

inline json sphere_metadata(Metric m, int n, long long radius, long long count, std::uint64_t seed) {
    return json{{"law", "sphere"}, {"metric", metric_name(m)}, {"n", n},
                {"radius", radius}, {"count", count}, {"seed", seed}};
}

}  // namespace permsphere
