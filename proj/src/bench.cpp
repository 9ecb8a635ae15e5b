#include "hankelnet/bench.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hankelnet {

IntegrandKind parse_integrand_kind(std::string_view name) {
    if (name == "product-power" || name == "product_power") return IntegrandKind::product_power;
    if (name == "lognormal") return IntegrandKind::lognormal;
    if (name == "t-exp" || name == "t_exp") return IntegrandKind::t_exp;
    throw std::invalid_argument("unknown integrand: " + std::string(name));
}

std::string_view integrand_kind_name(IntegrandKind kind) {
    switch (kind) {
        case IntegrandKind::product_power: return "product-power";
        case IntegrandKind::lognormal: return "lognormal";
        case IntegrandKind::t_exp: return "t-exp";
    }
    return "?";
}

double product_power(std::span<const double> t, double c, std::span<const double> gamma) {
    if (t.size() != gamma.size())
        throw std::invalid_argument("product_power: dimension mismatch");
    const double centering = 1.0 / (1.0 + c);
    double prod = 1.0;
    for (std::size_t j = 0; j < t.size(); ++j)
        prod *= 1.0 + gamma[j] * (std::pow(t[j], c) - centering);
    return prod;
}

double product_power(std::span<const double> t, double c, const ProductWeights& gamma) {
    return product_power(t, c, std::span<const double>(gamma.gamma));
}

double lognormal(std::span<const double> t, double zero_nudge) {
    double sum = 0.0;
    for (double tj : t) sum += inverse_normal_cdf(tj == 0.0 ? zero_nudge : tj);
    return std::exp(sum);
}

double t_exp(std::span<const double> t) {
    double prod = 1.0;
    for (double tj : t) prod *= tj * std::exp(tj);
    return prod;
}

ProductWeights exp_weights(int s, double c) {
    if (s < 1) throw std::invalid_argument("exp_weights: dimension must be >= 1");
    const double decay = std::ceil(c);
    std::vector<double> g(static_cast<std::size_t>(s));
    for (int j = 1; j <= s; ++j) g[static_cast<std::size_t>(j - 1)] = std::exp(-decay * j);
    return ProductWeights(std::move(g));
}

ProductWeights equal_weights(int s) {
    if (s < 1) throw std::invalid_argument("equal_weights: dimension must be >= 1");
    return ProductWeights(std::vector<double>(static_cast<std::size_t>(s), 1.0));
}

double inverse_normal_cdf(double u) {
    if (!(u > 0.0) || !(u < 1.0))
        throw std::invalid_argument("inverse_normal_cdf: argument must lie in (0, 1)");

    // Acklam's rational approximation.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double bb[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double cc[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00, 2.938163982698783e+00};
    static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (u < plow) {
        const double q = std::sqrt(-2.0 * std::log(u));
        x = (((((cc[0] * q + cc[1]) * q + cc[2]) * q + cc[3]) * q + cc[4]) * q + cc[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
    } else if (u <= 1.0 - plow) {
        const double q = u - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((bb[0] * r + bb[1]) * r + bb[2]) * r + bb[3]) * r + bb[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - u));
        x = -(((((cc[0] * q + cc[1]) * q + cc[2]) * q + cc[3]) * q + cc[4]) * q + cc[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1.0);
    }

    // One Halley refinement against Phi computed from erfc.
    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - u;
    const double r = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - r / (1.0 + 0.5 * x * r);
}

IntegrandSpec make_integrand(IntegrandKind kind, int s, double c, std::string_view weight_mode,
                             PrimeBase b, int precision) {
    IntegrandSpec spec;
    spec.kind = kind;
    spec.s = s;
    spec.c = c;
    switch (kind) {
        case IntegrandKind::product_power: {
            if (weight_mode == "exp") spec.gamma = exp_weights(s, c);
            else if (weight_mode == "equal") spec.gamma = equal_weights(s);
            else throw std::invalid_argument("unknown weight mode: " + std::string(weight_mode));
            spec.exact_integral = 1.0;
            const ProductWeights gamma = spec.gamma;
            spec.eval = [gamma, c](std::span<const double> t) {
                return product_power(t, c, gamma);
            };
            break;
        }
        case IntegrandKind::lognormal: {
            spec.exact_integral = std::exp(0.5 * s);
            const double nudge = std::pow(static_cast<double>(b.value()), -(precision + 1));
            spec.eval = [nudge](std::span<const double> t) { return lognormal(t, nudge); };
            break;
        }
        case IntegrandKind::t_exp: {
            spec.exact_integral = 1.0;
            // Var of a product of independent unit-mean factors:
            // E[f^2] - 1 = ((e^2-1)/4)^s - 1. For s = 1 this reduces to
            // (e^2-1)/4 - 1.
            spec.exact_variance = std::pow((std::exp(2.0) - 1.0) / 4.0, s) - 1.0;
            spec.eval = [](std::span<const double> t) { return t_exp(t); };
            break;
        }
    }
    return spec;
}

namespace {

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) continue;
        items.push_back(item.substr(first, last - first + 1));
    }
    return items;
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
    SweepConfig cfg;
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("sweep config: expected key = value, got: " + line);
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    for (const auto& [key, value] : kv) {
        if (key == "design") {
            for (const auto& name : split_list(value)) cfg.designs.push_back(parse_design_kind(name));
        } else if (key == "base") {
            for (const auto& name : split_list(value)) cfg.bases.push_back(std::stoi(name));
        } else if (key == "m_min") cfg.m_min = std::stoi(value);
        else if (key == "m_max") cfg.m_max = std::stoi(value);
        else if (key == "s") cfg.s = std::stoi(value);
        else if (key == "integrand") cfg.integrand = parse_integrand_kind(value);
        else if (key == "c") cfg.c = std::stod(value);
        else if (key == "weight_mode") cfg.weight_mode = value;
        else if (key == "r_mode") cfg.r_mode = parse_r_mode(value);
        else if (key == "r") cfg.r_fixed = std::stoi(value);
        else if (key == "batches") cfg.batches = std::stoi(value);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "out") cfg.out = value;
        else throw std::invalid_argument("sweep config: unknown key: " + key);
    }
    if (cfg.designs.empty()) throw std::invalid_argument("sweep config: missing design");
    if (cfg.bases.empty()) cfg.bases.push_back(2);
    if (cfg.m_min < 1 || cfg.m_max < cfg.m_min)
        throw std::invalid_argument("sweep config: m range must be nonempty and ascending");
    return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sweep config: " + path);
    return parse_sweep_config(in);
}

SweepSummary run_sweep(const SweepConfig& config) {
    std::ofstream out(config.out);
    if (!out) throw std::runtime_error("cannot open sweep output for writing: " + config.out);
    out << experiment_csv_header() << "\n";

    SweepSummary summary;
    for (DesignKind design : config.designs) {
        for (int base : config.bases) {
            const PrimeBase b(base);
            const int E = default_precision(b);
            const IntegrandSpec spec =
                make_integrand(config.integrand, config.s, config.c, config.weight_mode, b, E);
            std::vector<double> ms, medians;
            for (int m = config.m_min; m <= config.m_max; ++m) {
                EstimatorConfig est;
                est.kind = design;
                est.base = b;
                est.m = m;
                est.s = config.s;
                est.r_mode = config.r_mode;
                est.r = r_schedule(m, config.r_mode, config.r_fixed);
                est.seed = RngSeed{config.seed}
                               .child(design_kind_name(design), static_cast<std::uint64_t>(base))
                               .child("m", static_cast<std::uint64_t>(m));
                const MseSummary cell = mse_experiment(spec.eval, spec.exact_integral, est,
                                                       config.batches);
                for (const auto& rec : cell.records)
                    out << experiment_csv_row(rec, integrand_kind_name(config.integrand), config.c,
                                              config.weight_mode)
                        << "\n";
                summary.cells.push_back({design, base, m, cell.median_sq_error});
                ms.push_back(static_cast<double>(m));
                medians.push_back(cell.median_sq_error);
            }
            if (ms.size() >= 2)
                summary.slopes.push_back({design, base, fitted_log2_slope(ms, medians)});
        }
    }
    if (!out) throw std::runtime_error("sweep output write failed: " + config.out);
    return summary;
}

}  // namespace hankelnet
