// Command-line front end: net generation, estimation, median-of-means runs,
// greedy worst-case-error optimization, t-parameter and dual-net probes, the
// omega closed forms, and the convergence sweep driver.
//
// Results go to stdout (or --out); diagnostics go to stderr. Exit codes:
// 0 success, 1 runtime error, 2 flag error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hankelnet/bench.hpp"
#include "hankelnet/estimators.hpp"
#include "hankelnet/netgen.hpp"
#include "hankelnet/pointgen.hpp"
#include "hankelnet/walshlab.hpp"
#include "hankelnet/wce.hpp"

namespace {

using json = nlohmann::json;
using namespace hankelnet;

constexpr const char* kVersion = "0.1.0";

struct CommonFlags {
    std::string design = "hrd";
    int base = 2;
    int m = 4;
    int dim = 1;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_design = true) {
    if (with_design)
        cmd->add_option("--design", flags.design, "design kind: hrd, urd, lms-sobol")
            ->check(CLI::IsMember({"hrd", "urd", "lms-sobol"}));
    cmd->add_option("--base", flags.base, "prime base b");
    cmd->add_option("--m", flags.m, "size exponent, N = b^m");
    cmd->add_option("--dim", flags.dim, "dimension s");
    cmd->add_option("--seed", flags.seed, "master seed");
    cmd->add_option("--out", flags.out, "write results to this file instead of stdout");
    cmd->add_option("--format", flags.format, "output format")->check(CLI::IsMember({"csv", "json"}));
}

std::ostream& open_sink(const CommonFlags& flags, std::ofstream& file) {
    if (flags.out.empty()) return std::cout;
    file.open(flags.out);
    if (!file) throw std::runtime_error("cannot open output file: " + flags.out);
    return file;
}

std::vector<std::uint64_t> parse_k_list(const std::string& text) {
    std::vector<std::uint64_t> k;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) k.push_back(std::stoull(item));
    if (k.empty()) throw std::runtime_error("empty k vector");
    return k;
}

void cmd_gen(const CommonFlags& flags, bool shift) {
    const PrimeBase b(flags.base);
    const int E = default_precision(b);
    const NetDesign design = draw_design(parse_design_kind(flags.design), RngSeed{flags.seed}, b,
                                         E, flags.m, flags.dim, shift);
    std::ofstream file;
    std::ostream& out = open_sink(flags, file);
    out << "n";
    for (int j = 1; j <= flags.dim; ++j) out << ",x" << j;
    out << "\n";
    char buf[32];
    scan_points_gray(design, [&](std::uint64_t n, std::span<const double> x) {
        out << n;
        for (double v : x) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << ',' << buf;
        }
        out << "\n";
    });
}

IntegrandSpec integrand_from_flags(const std::string& name, int s, double c,
                                   const std::string& weight_mode, PrimeBase b) {
    return make_integrand(parse_integrand_kind(name), s, c, weight_mode, b, default_precision(b));
}

void cmd_estimate(const CommonFlags& flags, const std::string& integrand, double c,
                  const std::string& weight_mode, bool shift) {
    const PrimeBase b(flags.base);
    const IntegrandSpec spec = integrand_from_flags(integrand, flags.dim, c, weight_mode, b);
    const NetDesign design = draw_design(parse_design_kind(flags.design), RngSeed{flags.seed}, b,
                                         default_precision(b), flags.m, flags.dim, shift);
    const double estimate = qmc_mean(spec.eval, design);
    std::ofstream file;
    std::ostream& out = open_sink(flags, file);
    if (flags.format == "csv") {
        ExperimentRecord rec;
        rec.config.kind = parse_design_kind(flags.design);
        rec.config.base = b;
        rec.config.m = flags.m;
        rec.config.s = flags.dim;
        rec.config.r = 1;
        rec.config.seed = RngSeed{flags.seed};
        rec.estimate = estimate;
        rec.squared_error = (estimate - spec.exact_integral) * (estimate - spec.exact_integral);
        out << experiment_csv_header() << "\n"
            << experiment_csv_row(rec, integrand, c, weight_mode) << "\n";
        return;
    }
    json rec{{"design_kind", flags.design},
             {"b", flags.base},
             {"m", flags.m},
             {"s", flags.dim},
             {"integrand", integrand},
             {"estimate", estimate},
             {"exact", spec.exact_integral},
             {"sq_error", (estimate - spec.exact_integral) * (estimate - spec.exact_integral)},
             {"seed", flags.seed}};
    out << rec.dump() << "\n";
}

void cmd_mom(const CommonFlags& flags, const std::string& integrand, double c,
             const std::string& weight_mode, int r, const std::string& r_mode, double r_log_base,
             int batches, bool shift) {
    const PrimeBase b(flags.base);
    const IntegrandSpec spec = integrand_from_flags(integrand, flags.dim, c, weight_mode, b);
    EstimatorConfig config;
    config.kind = parse_design_kind(flags.design);
    config.base = b;
    config.m = flags.m;
    config.s = flags.dim;
    config.r_mode = parse_r_mode(r_mode);
    config.r = config.r_mode == RMode::fixed ? r
                                             : r_schedule(flags.m, config.r_mode, r, r_log_base);
    config.with_shift = shift;
    config.seed = RngSeed{flags.seed};
    const MseSummary summary = mse_experiment(spec.eval, spec.exact_integral, config, batches);
    std::ofstream file;
    std::ostream& out = open_sink(flags, file);
    if (flags.format == "json") {
        json rows = json::array();
        for (const auto& rec : summary.records)
            rows.push_back({{"design", flags.design},
                            {"b", flags.base},
                            {"m", flags.m},
                            {"s", flags.dim},
                            {"integrand", integrand},
                            {"c", c},
                            {"weight_mode", weight_mode},
                            {"r", config.r},
                            {"batch", rec.batch},
                            {"estimate", rec.estimate},
                            {"sq_error", rec.squared_error},
                            {"seed", flags.seed}});
        out << rows.dump() << "\n";
        return;
    }
    out << experiment_csv_header() << "\n";
    for (const auto& rec : summary.records)
        out << experiment_csv_row(rec, integrand, c, weight_mode) << "\n";
}

void cmd_optimize(const CommonFlags& flags, int r, int alpha, double c,
                  const std::string& weight_mode, const std::string& dump_points) {
    const PrimeBase b(flags.base);
    const ProductWeights gamma = weight_mode == "equal" ? equal_weights(flags.dim)
                                                        : exp_weights(flags.dim, c);
    const GreedyResult result = greedy_select(RngSeed{flags.seed}, r, b, flags.m, flags.dim, gamma,
                                              alpha, parse_design_kind(flags.design));
    json rec{{"design_kind", flags.design}, {"b", flags.base},  {"m", flags.m},
             {"s", flags.dim},              {"alpha", alpha},   {"r", r},
             {"seed", flags.seed},          {"wce_values", result.wce_values},
             {"best_index", result.best_index},                 {"best_wce", result.best_wce}};
    std::ofstream file;
    open_sink(flags, file) << rec.dump() << "\n";
    if (!dump_points.empty()) {
        std::ofstream pts(dump_points);
        if (!pts) throw std::runtime_error("cannot open point dump file: " + dump_points);
        pts << "n";
        for (int j = 1; j <= flags.dim; ++j) pts << ",x" << j;
        pts << "\n";
        char buf[32];
        scan_points_gray(result.best, [&](std::uint64_t n, std::span<const double> x) {
            pts << n;
            for (double v : x) {
                std::snprintf(buf, sizeof(buf), "%.17g", v);
                pts << ',' << buf;
            }
            pts << "\n";
        });
    }
}

void cmd_tparam(const CommonFlags& flags, const std::string& coords) {
    const PrimeBase b(flags.base);
    const NetDesign design = draw_design(parse_design_kind(flags.design), RngSeed{flags.seed}, b,
                                         default_precision(b), flags.m, flags.dim, false);
    json rec{{"design_kind", flags.design}, {"b", flags.base}, {"m", flags.m},
             {"s", flags.dim},              {"seed", flags.seed}};
    if (coords.empty()) {
        rec["t"] = t_parameter(design);
    } else {
        std::vector<int> u;
        for (std::uint64_t v : parse_k_list(coords)) u.push_back(static_cast<int>(v) - 1);
        rec["u"] = json::parse("[]");
        for (int j : u) rec["u"].push_back(j + 1);
        rec["t_u"] = t_u_parameter(design, u);
    }
    std::ofstream file;
    open_sink(flags, file) << rec.dump() << "\n";
}

void cmd_dualprob(const CommonFlags& flags, const std::string& k_text, const std::string& k2_text,
                  std::uint64_t trials) {
    const PrimeBase b(flags.base);
    const auto k = parse_k_list(k_text);
    if (static_cast<int>(k.size()) != flags.dim)
        throw std::runtime_error("k must have one component per dimension");
    const DesignKind kind = parse_design_kind(flags.design);
    json rec{{"design_kind", flags.design}, {"b", flags.base}, {"m", flags.m},
             {"s", flags.dim},              {"k", k},          {"trials", trials},
             {"seed", flags.seed}};
    if (k2_text.empty()) {
        if (kind != DesignKind::lms_sobol)
            rec["exact"] = marginal_dual_prob_exact(k, b, flags.m, kind);
        const McEstimate mc = mc_dual_prob(RngSeed{flags.seed}, k, b, flags.m, flags.dim, kind,
                                           trials);
        rec["mc_estimate"] = mc.estimate;
        rec["mc_stderr"] = mc.stderr_;
    } else {
        const auto k2 = parse_k_list(k2_text);
        if (k2.size() != k.size()) throw std::runtime_error("k2 must match the dimension of k");
        rec["k2"] = k2;
        rec["exact"] = joint_dual_prob_exact(k, k2, b, flags.m, kind);
        std::uint64_t hits = 0;
        const int E = default_precision(b);
        for (std::uint64_t t = 0; t < trials; ++t) {
            const NetDesign d = draw_design(kind, RngSeed{flags.seed}.child("trial", t), b, E,
                                            flags.m, flags.dim, false);
            if (dual_contains(d, k) && dual_contains(d, k2)) ++hits;
        }
        const double est = static_cast<double>(hits) / static_cast<double>(trials);
        rec["mc_estimate"] = est;
        rec["mc_stderr"] = std::sqrt(est * (1.0 - est) / static_cast<double>(trials));
    }
    std::ofstream file;
    open_sink(flags, file) << rec.dump() << "\n";
}

void cmd_omega(const CommonFlags& flags, int alpha, double x, std::uint64_t k_max) {
    std::ofstream file;
    std::ostream& out = open_sink(flags, file);
    char buf[32];
    if (flags.base == 2 && (alpha == 1 || alpha == 2) && k_max == 0) {
        std::snprintf(buf, sizeof(buf), "%.17g", alpha == 1 ? omega2(x) : omega3(x));
        out << buf << "\n";
        return;
    }
    const SeriesValue v = omega_series(x, alpha, PrimeBase(flags.base),
                                       k_max == 0 ? (std::uint64_t{1} << 16) : k_max);
    std::snprintf(buf, sizeof(buf), "%.17g", v.value);
    out << buf << "\n";
}

void cmd_bench(const std::string& config_path, const std::string& out_override,
               std::optional<std::uint64_t> seed_override) {
    SweepConfig config = load_sweep_config(config_path);
    if (!out_override.empty()) config.out = out_override;
    if (seed_override) config.seed = *seed_override;
    if (config.out.empty()) throw std::runtime_error("sweep config: missing out path");
    const SweepSummary summary = run_sweep(config);
    json rec;
    rec["cells"] = json::array();
    for (const auto& cell : summary.cells)
        rec["cells"].push_back({{"design", design_kind_name(cell.design)},
                                {"b", cell.base},
                                {"m", cell.m},
                                {"median_sq_error", cell.median_sq_error}});
    rec["slopes"] = json::array();
    for (const auto& slope : summary.slopes)
        rec["slopes"].push_back({{"design", design_kind_name(slope.design)},
                                 {"b", slope.base},
                                 {"log2_slope", slope.slope}});
    std::cout << rec.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"digital-net toolkit: Hankel random designs, scrambling, estimators"};
    app.require_subcommand(0, 1);

    bool show_version = false;
    app.add_flag("--version", show_version, "print version and Sobol' table checksum");

    CommonFlags gen_flags, est_flags, mom_flags, opt_flags, tparam_flags, dual_flags, omega_flags;
    est_flags.format = "json";  // probe-style commands default to JSON records

    auto* gen = app.add_subcommand("gen", "generate a net and dump its points as CSV");
    add_common(gen, gen_flags);
    bool gen_shift = false;
    gen->add_flag("--shift,!--no-shift", gen_shift, "apply a random digital shift (default off)");

    auto* estimate = app.add_subcommand("estimate", "single-design QMC estimate of an integrand");
    add_common(estimate, est_flags);
    std::string est_integrand = "product-power", est_weights = "exp";
    double est_c = 1.5;
    bool est_shift = true;
    estimate->add_option("--integrand", est_integrand, "product-power, lognormal, t-exp");
    estimate->add_option("--c", est_c, "product-power exponent");
    estimate->add_option("--weights", est_weights, "exp or equal");
    estimate->add_flag("--shift,!--no-shift", est_shift, "apply a random digital shift (default on)");

    auto* mom = app.add_subcommand("mom", "median-of-means estimate, CSV rows per batch");
    add_common(mom, mom_flags);
    std::string mom_integrand = "product-power", mom_weights = "exp", mom_r_mode = "fixed";
    double mom_c = 1.5, mom_r_log_base = 0.0;
    int mom_r = 15, mom_batches = 1;
    bool mom_shift = true;
    mom->add_option("--integrand", mom_integrand, "product-power, lognormal, t-exp");
    mom->add_option("--c", mom_c, "product-power exponent");
    mom->add_option("--weights", mom_weights, "exp or equal");
    mom->add_option("--r", mom_r, "replicate count (odd) for fixed mode");
    mom->add_option("--r-mode", mom_r_mode, "fixed or m-log-m");
    mom->add_option("--r-log-base", mom_r_log_base, "log base for m-log-m (default natural)");
    mom->add_option("--batches", mom_batches, "outer batch count");
    mom->add_flag("--shift,!--no-shift", mom_shift, "apply random digital shifts (default on)");

    auto* optimize = app.add_subcommand("optimize", "greedy best-of-batch design selection");
    add_common(optimize, opt_flags);
    int opt_r = 15, opt_alpha = 1;
    double opt_c = 1.5;
    std::string opt_weights = "exp", opt_dump;
    optimize->add_option("--r", opt_r, "batch size");
    optimize->add_option("--alpha", opt_alpha, "smoothness order (1 or 2)");
    optimize->add_option("--c", opt_c, "weight decay exponent");
    optimize->add_option("--weights", opt_weights, "exp or equal");
    optimize->add_option("--dump-points", opt_dump, "also dump the winning net's points to a file");

    auto* tparam = app.add_subcommand("tparam", "t-parameter of a drawn design");
    add_common(tparam, tparam_flags);
    std::string tparam_coords;
    tparam->add_option("--coords", tparam_coords, "restrict to these 1-based coordinates (comma list)");

    auto* dualprob = app.add_subcommand("dualprob", "dual-net inclusion probability probes");
    add_common(dualprob, dual_flags);
    std::string dual_k, dual_k2;
    std::uint64_t dual_trials = 100000;
    dualprob->add_option("--k", dual_k, "frequency vector, comma list, one entry per dimension")
        ->required();
    dualprob->add_option("--k2", dual_k2, "second frequency vector for joint probabilities");
    dualprob->add_option("--trials", dual_trials, "Monte Carlo trials");

    auto* omega = app.add_subcommand("omega", "evaluate omega_{alpha+1}(x)");
    add_common(omega, omega_flags, false);
    int omega_alpha = 1;
    double omega_x = 0.0;
    std::uint64_t omega_kmax = 0;
    omega->add_option("--alpha", omega_alpha, "smoothness order")->required();
    omega->add_option("--x", omega_x, "evaluation point in [0, 1)")->required();
    omega->add_option("--kmax", omega_kmax, "series truncation (0 = closed form when available)");

    auto* bench = app.add_subcommand("bench", "convergence sweep from a config file");
    std::string bench_config, bench_out;
    std::uint64_t bench_seed = 0;
    bool bench_seed_set = false;
    bench->add_option("--config", bench_config, "flat key = value config file")->required();
    bench->add_option("--out", bench_out, "override the configured CSV output path");
    bench->add_option("--seed", bench_seed, "override the configured seed")
        ->each([&](const std::string&) { bench_seed_set = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (show_version) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%016llx",
                          static_cast<unsigned long long>(sobol_table_checksum()));
            std::cout << "hankelnet " << kVersion << " sobol-table-fnv1a " << buf << "\n";
            return 0;
        }
        if (gen->parsed()) cmd_gen(gen_flags, gen_shift);
        else if (estimate->parsed())
            cmd_estimate(est_flags, est_integrand, est_c, est_weights, est_shift);
        else if (mom->parsed())
            cmd_mom(mom_flags, mom_integrand, mom_c, mom_weights, mom_r, mom_r_mode,
                    mom_r_log_base, mom_batches, mom_shift);
        else if (optimize->parsed())
            cmd_optimize(opt_flags, opt_r, opt_alpha, opt_c, opt_weights, opt_dump);
        else if (tparam->parsed()) cmd_tparam(tparam_flags, tparam_coords);
        else if (dualprob->parsed()) cmd_dualprob(dual_flags, dual_k, dual_k2, dual_trials);
        else if (omega->parsed()) cmd_omega(omega_flags, omega_alpha, omega_x, omega_kmax);
        else if (bench->parsed())
            cmd_bench(bench_config, bench_out,
                      bench_seed_set ? std::optional<std::uint64_t>(bench_seed) : std::nullopt);
        else {
            std::cerr << app.help() << std::endl;
            return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
