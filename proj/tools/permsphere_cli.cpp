// Command-line front end: reproducible sampling, exact enumeration, Martin
// kernel reports and the verification suites. CSV goes to --out (default
// stdout); run metadata is JSON. Identical command, seed and parameters
// produce byte-identical primary output.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "permsphere/permsphere.hpp"

namespace ps = permsphere;

namespace {

struct RunConfig {
    std::string law;
    std::string metric = "hamming";
    std::string alpha, q, theta;
    int n = 0;
    long long radius = -1;
    long long count = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out = "-";
    std::string meta;
    std::string format = "csv";
    // enumerate
    bool all_sizes = false;
    long long k_max = -1;
    bool extension = false;
    int nu = 0;
    long long kappa = -1;
    bool kappa_given = false;
    int min_n = 1;
    // kernel
    std::string regime;
    std::string nu_list = "";
    long long k_filter = -1;
    bool k_given = false;
    // verify
    std::string suite = "all";
    int max_nu = 6;
    long long samples = 200000;
    std::string report_dir;
};

std::uint64_t pick_seed(RunConfig& cfg) {
    if (cfg.seed_given) return cfg.seed;
    if (const char* env = std::getenv("PERMSPHERE_SEED")) {
        cfg.seed = std::strtoull(env, nullptr, 10);
        return cfg.seed;
    }
    cfg.seed = std::random_device{}();
    return cfg.seed;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw CLI::RuntimeError("cannot open output path: " + path, 1);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void write_metadata(const RunConfig& cfg, const ps::json& meta) {
    if (!cfg.meta.empty()) {
        std::ofstream mf(cfg.meta);
        if (!mf) throw CLI::RuntimeError("cannot open metadata path: " + cfg.meta, 1);
        mf << meta.dump(2) << '\n';
    } else if (cfg.out != "-") {
        std::ofstream mf(cfg.out + ".meta.json");
        mf << meta.dump(2) << '\n';
    } else {
        std::cerr << meta.dump(2) << '\n';
    }
}

void note_decimal_parameters(ps::json& meta, std::initializer_list<std::pair<const char*, const std::string*>> params) {
    for (const auto& [key, raw] : params) {
        if (raw->find('.') == std::string::npos) continue;
        meta["notes"].push_back(std::string(key) + "=" + *raw +
                                " was a decimal; parsed as the exact rational " +
                                ps::format_rational(ps::parse_rational(*raw)));
    }
}

int cmd_sample(RunConfig& cfg) {
    const std::uint64_t seed = pick_seed(cfg);
    Output out(cfg.out);
    std::vector<ps::Permutation> samples;
    samples.reserve(static_cast<std::size_t>(cfg.count));
    ps::json meta;
    if (cfg.law == "sphere") {
        const ps::Metric m = ps::parse_metric(cfg.metric);
        if (cfg.radius < 0) throw CLI::RuntimeError("sphere sampling needs --radius", 1);
        const ps::SphereSampler sampler(m, cfg.n, cfg.radius);
        for (long long i = 0; i < cfg.count; ++i) {
            ps::Rng rng(seed, static_cast<std::uint64_t>(i));
            samples.push_back(sampler.draw(rng));
        }
        meta = ps::sphere_metadata(m, cfg.n, cfg.radius, cfg.count, seed);
    } else {
        ps::GrowthLaw law;
        if (cfg.law == "uniform") {
            law = ps::growth_uniform();
        } else if (cfg.law == "alpha") {
            if (cfg.alpha.empty()) throw CLI::RuntimeError("--law alpha needs --alpha", 1);
            law = ps::growth_alpha(ps::parse_rational(cfg.alpha));
        } else if (cfg.law == "mallows") {
            if (cfg.q.empty()) throw CLI::RuntimeError("--law mallows needs --q", 1);
            law = ps::growth_mallows(ps::parse_ext_param(cfg.q));
        } else if (cfg.law == "ewens") {
            if (cfg.theta.empty()) throw CLI::RuntimeError("--law ewens needs --theta", 1);
            law = ps::growth_ewens(ps::parse_ext_param(cfg.theta));
        } else {
            throw CLI::RuntimeError("unknown law: " + cfg.law, 1);
        }
        for (long long i = 0; i < cfg.count; ++i) {
            ps::GrowthProcess proc(law, seed, static_cast<std::uint64_t>(i));
            proc.run_to(cfg.n);
            samples.push_back(proc.permutation());
        }
        meta = ps::sample_metadata(law, cfg.n, cfg.count, seed);
    }
    ps::write_samples(out.stream(), samples);
    note_decimal_parameters(meta, {{"alpha", &cfg.alpha}, {"q", &cfg.q}, {"theta", &cfg.theta}});
    write_metadata(cfg, meta);
    return 0;
}

int cmd_enumerate(RunConfig& cfg) {
    const ps::Metric m = ps::parse_metric(cfg.metric);
    Output out(cfg.out);
    if (cfg.extension) {
        if (cfg.nu <= 0 || !cfg.kappa_given)
            throw CLI::RuntimeError("--extension needs --nu and --kappa", 1);
        const auto table = ps::extension_counts(m, cfg.nu, cfg.kappa, cfg.min_n);
        ps::write_extension_table_csv(out.stream(), table);
        return 0;
    }
    long long k_cap = cfg.k_max;
    if (m == ps::Metric::KendallTau) {
        const long long kmax = k_cap >= 0 ? k_cap : static_cast<long long>(cfg.n) * (cfg.n - 1) / 2;
        const long long cells = (kmax + 1) * static_cast<long long>(cfg.n);
        if (cells > 20'000'000)
            throw CLI::RuntimeError("Kendall table too large; restrict with --kmax", 1);
    }
    const auto table = ps::build_count_table(m, cfg.n, k_cap);
    const int from = cfg.all_sizes ? 1 : cfg.n;
    if (cfg.format == "json")
        out.stream() << ps::count_table_json(table, from).dump(2) << '\n';
    else
        ps::write_count_table_csv(out.stream(), table, from);
    return 0;
}

int cmd_kernel(RunConfig& cfg) {
    const ps::Metric m = ps::parse_metric(cfg.metric);
    Output out(cfg.out);
    std::vector<long long> nus;
    {
        std::stringstream ss(cfg.nu_list);
        std::string item;
        while (std::getline(ss, item, ',')) if (!item.empty()) nus.push_back(std::stoll(item));
    }
    if (nus.empty() && cfg.nu > 0) nus.push_back(cfg.nu);
    if (nus.empty()) throw CLI::RuntimeError("kernel needs --nu", 1);
    std::optional<long long> k_filter;
    if (cfg.k_given) k_filter = cfg.k_filter;

    if (!cfg.regime.empty()) {
        const auto eq = cfg.regime.find('=');
        if (eq == std::string::npos)
            throw CLI::RuntimeError("--regime must look like alpha=1/2, q=1/2 or theta=2", 1);
        const std::string key = cfg.regime.substr(0, eq);
        const std::string val = cfg.regime.substr(eq + 1);
        ps::KappaRegime regime;
        ps::ExtParam param;
        if (key == "alpha") {
            param = ps::ExtParam(ps::parse_rational(val));
            regime = ps::regime_hamming_alpha(param.value);
        } else if (key == "q") {
            param = ps::parse_ext_param(val);
            regime = ps::regime_mallows(param);
        } else if (key == "theta") {
            param = ps::parse_ext_param(val);
            regime = ps::regime_ewens(param);
        } else {
            throw CLI::RuntimeError("unknown regime parameter: " + key, 1);
        }
        const auto rows = ps::kernel_convergence_rows(m, regime, param, nus, cfg.n, k_filter);
        ps::write_kernel_rows_csv(out.stream(), rows);
        return 0;
    }
    if (!cfg.kappa_given) throw CLI::RuntimeError("kernel needs --regime or --kappa", 1);
    out.stream().precision(17);
    out.stream() << "nu,kappa,n,k,exact_num,exact_den,float_value,limit_value,abs_err\n";
    for (long long nu : nus) {
        for (int n = 1; n <= cfg.n; ++n) {
            const auto row = ps::martin_kernel_row(m, static_cast<int>(nu), cfg.kappa, n);
            for (long long k = 0; k < static_cast<long long>(row.size()); ++k) {
                if (k_filter && k != *k_filter) continue;
                if (m == ps::Metric::Hamming && k == n - 1) continue;
                const auto& v = row[static_cast<std::size_t>(k)];
                out.stream() << nu << ',' << cfg.kappa << ',' << n << ',' << k << ','
                             << boost::multiprecision::numerator(v).str() << ','
                             << boost::multiprecision::denominator(v).str() << ','
                             << ps::to_double(v) << ",nan,nan\n";
            }
        }
    }
    return 0;
}

int cmd_verify(RunConfig& cfg) {
    const std::uint64_t seed = pick_seed(cfg);
    int failures = 0;
    auto report = [&failures](const std::string& name, bool ok) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << '\n';
        if (!ok) ++failures;
    };
    auto report_stream = [&cfg](const std::string& name) -> std::ofstream {
        std::ofstream f;
        if (!cfg.report_dir.empty()) {
            f.open(cfg.report_dir + "/" + name);
            if (!f) throw CLI::RuntimeError("cannot write report into " + cfg.report_dir, 1);
        }
        return f;
    };
    const bool all = cfg.suite == "all";
    const std::vector<ps::Metric> metrics{ps::Metric::Hamming, ps::Metric::KendallTau,
                                          ps::Metric::Cayley};

    if (all || cfg.suite == "symmetry") {
        auto csv = report_stream("symmetry.csv");
        if (csv.is_open()) csv << "metric,nu,kappa,n,symmetric\n";
        const int cap = std::min(cfg.max_nu, 6);
        for (ps::Metric m : metrics) {
            bool ok = true;
            for (int nu = 2; nu <= cap; ++nu)
                for (long long kappa = ps::statistic_min(m, nu); kappa <= ps::statistic_max(m, nu);
                     ++kappa) {
                    if (ps::sphere_count(m, nu, kappa) == 0) continue;
                    for (int n = 1; n < nu; ++n) {
                        const bool sym =
                            ps::spherically_symmetric(ps::exact_projected_law(m, nu, kappa, n), m);
                        if (csv.is_open())
                            csv << ps::metric_name(m) << ',' << nu << ',' << kappa << ',' << n << ','
                                << (sym ? 1 : 0) << '\n';
                        ok = ok && sym;
                    }
                }
            report(std::string("symmetry of projected sphere laws, metric=") + ps::metric_name(m), ok);
        }
    }
    if (all || cfg.suite == "monotonicity") {
        auto csv = report_stream("monotonicity.csv");
        bool wrote_header = false;
        for (ps::Metric m : metrics) {
            bool ok = true;
            for (int nu = 2; nu <= cfg.max_nu; ++nu) {
                const auto rep = ps::check_monotonicity(m, nu);
                if (csv.is_open()) {
                    std::ostringstream block;
                    ps::write_monotonicity_csv(block, rep);
                    const std::string text = block.str();
                    const auto body = text.find('\n') + 1;
                    if (!wrote_header) {
                        csv << text.substr(0, body);
                        wrote_header = true;
                    }
                    csv << text.substr(body);
                }
                ok = ok && rep.all_ok;
            }
            report(std::string("projection monotonicity, metric=") + ps::metric_name(m), ok);
        }
    }
    if (all || cfg.suite == "consistency") {
        const int cap = std::min(cfg.max_nu, 5);
        const std::vector<ps::GrowthLaw> laws{
            ps::growth_uniform(), ps::growth_alpha(ps::Rational(1, 2)),
            ps::growth_mallows(ps::ExtParam(ps::Rational(1, 2))),
            ps::growth_ewens(ps::ExtParam(ps::Rational(2)))};
        for (const auto& law : laws) {
            bool ok = true;
            const ps::Metric m = ps::law_metric(law);
            for (int n = 2; n <= cap; ++n) {
                const auto big = ps::exact_growth_law(law, n);
                ok = ok && ps::spherically_symmetric(big, m);
                ok = ok && (ps::project_law(big, m).probs == ps::exact_growth_law(law, n - 1).probs);
            }
            report("projection consistency, law=" + ps::law_name(law), ok);
        }
        const auto uni = ps::exact_growth_law(ps::growth_uniform(), cap);
        const auto ewens = ps::exact_growth_law(ps::growth_ewens(ps::ExtParam(ps::Rational(2))), cap);
        const auto alpha = ps::exact_growth_law(ps::growth_alpha(ps::Rational(1, 2)), cap);
        bool ok = true;
        for (int n = 1; n < cap; ++n) {
            ok = ok && ps::backward_transition_equal(ps::Metric::Cayley, uni, ewens, n);
            ok = ok && ps::backward_transition_equal(ps::Metric::Hamming, uni, alpha, n);
        }
        report("backward transition laws agree across laws", ok);
    }
    if (all || cfg.suite == "asymptotics") {
        const int reps = 20;
        const long long n = std::max<long long>(cfg.samples / 4, 4000);
        const auto a = ps::asymptotics_experiment(ps::growth_alpha(ps::Rational(3, 10)), n, reps, seed);
        report("F/n near 0.3 for alpha=0.3 (got " + std::to_string(a.mean) + ")",
               std::abs(a.mean - 0.3) < 0.02);
        const auto b = ps::asymptotics_experiment(ps::growth_mallows(ps::ExtParam(ps::Rational(1, 2))),
                                                  n, reps, seed);
        report("I/n near 1 for q=1/2 (got " + std::to_string(b.mean) + ")",
               std::abs(b.mean - 1.0) < 0.05);
        const auto c = ps::asymptotics_experiment(ps::growth_ewens(ps::ExtParam(ps::Rational(1))),
                                                  n, reps, seed);
        report("C/log n near 1 for theta=1 (got " + std::to_string(c.mean) + ")",
               std::abs(c.mean - 1.0) < 0.25);
        auto csv = report_stream("asymptotics.csv");
        if (csv.is_open()) ps::write_asymptotics_csv(csv, {a, b, c});
    }
    std::cout << (failures == 0 ? "all checks passed" : "FAILURES: " + std::to_string(failures))
              << '\n';
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spherically symmetric random permutations: enumeration, sampling, verification"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_seed = [&cfg](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "RNG seed (default: PERMSPHERE_SEED or random)")
            ->each([&cfg](const std::string&) { cfg.seed_given = true; });
    };

    CLI::App* sample = app.add_subcommand("sample", "draw permutations from a growth law or a sphere");
    sample->add_option("--law", cfg.law, "uniform | alpha | mallows | ewens | sphere")->required();
    sample->add_option("--alpha", cfg.alpha, "alpha parameter (rational or decimal)");
    sample->add_option("--q", cfg.q, "Mallows q (rational, decimal or inf)");
    sample->add_option("--theta", cfg.theta, "Ewens theta (rational, decimal or inf)");
    sample->add_option("--metric", cfg.metric, "metric for sphere sampling");
    sample->add_option("--radius", cfg.radius, "sphere radius (distance to the identity)");
    sample->add_option("--n", cfg.n, "permutation size")->required();
    sample->add_option("--count", cfg.count, "number of samples");
    sample->add_option("--out", cfg.out, "output path or - for stdout");
    sample->add_option("--meta", cfg.meta, "metadata JSON path");
    add_seed(sample);

    CLI::App* enumerate = app.add_subcommand("enumerate", "emit exact sphere or extension counts");
    enumerate->add_option("--metric", cfg.metric, "hamming | kendall | cayley")->required();
    enumerate->add_option("--n", cfg.n, "table size");
    enumerate->add_flag("--all", cfg.all_sizes, "emit all sizes 1..n, not just n");
    enumerate->add_option("--kmax", cfg.k_max, "cap on the statistic (Kendall memory guard)");
    enumerate->add_flag("--extension", cfg.extension, "emit extension counts instead");
    enumerate->add_option("--nu", cfg.nu, "extension target size");
    enumerate->add_option("--kappa", cfg.kappa, "extension target statistic")
        ->each([&cfg](const std::string&) { cfg.kappa_given = true; });
    enumerate->add_option("--min-n", cfg.min_n, "smallest size row to emit");
    enumerate->add_option("--format", cfg.format, "csv | json");
    enumerate->add_option("--out", cfg.out, "output path or - for stdout");

    CLI::App* kernel = app.add_subcommand("kernel", "Martin kernel values and convergence reports");
    kernel->add_option("--metric", cfg.metric, "hamming | kendall | cayley")->required();
    kernel->add_option("--regime", cfg.regime, "alpha=A, q=Q or theta=T");
    kernel->add_option("--nu", cfg.nu_list, "comma-separated list of nu values");
    kernel->add_option("--kappa", cfg.kappa, "explicit statistic at nu (instead of a regime)")
        ->each([&cfg](const std::string&) { cfg.kappa_given = true; });
    kernel->add_option("--n", cfg.n, "largest projection size")->required();
    kernel->add_option("--k", cfg.k_filter, "restrict to one statistic value")
        ->each([&cfg](const std::string&) { cfg.k_given = true; });
    kernel->add_option("--out", cfg.out, "output path or - for stdout");

    CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
    verify->add_option("--suite", cfg.suite, "symmetry | monotonicity | consistency | asymptotics | all");
    verify->add_option("--max-nu", cfg.max_nu, "exhaustive size cap");
    verify->add_option("--samples", cfg.samples, "Monte-Carlo scale for asymptotics");
    verify->add_option("--report-dir", cfg.report_dir, "write per-suite CSV reports into this directory");
    add_seed(verify);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) return cmd_sample(cfg);
        if (enumerate->parsed()) return cmd_enumerate(cfg);
        if (kernel->parsed()) return cmd_kernel(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
    } catch (const CLI::RuntimeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.get_exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
