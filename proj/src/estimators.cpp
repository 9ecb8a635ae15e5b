#include "hankelnet/estimators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hankelnet {

double qmc_mean(const Integrand& f, const PointSet& points) {
    if (points.n_points == 0) throw std::invalid_argument("qmc_mean: empty point set");
    long double sum = 0.0L;
    for (std::uint64_t n = 0; n < points.n_points; ++n)
        sum += f(std::span<const double>(points.coords.data() + n * static_cast<std::uint64_t>(points.s),
                                         static_cast<std::size_t>(points.s)));
    return static_cast<double>(sum / static_cast<long double>(points.n_points));
}

double qmc_mean(const Integrand& f, const NetDesign& design) {
    long double sum = 0.0L;
    scan_points_gray(design, [&](std::uint64_t, std::span<const double> x) { sum += f(x); });
    return static_cast<double>(sum / static_cast<long double>(design.n_points()));
}

double median(std::vector<double> values) {
    if (values.empty() || values.size() % 2 == 0)
        throw std::invalid_argument("median requires odd replicate count");
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
    std::nth_element(values.begin(), mid, values.end());
    return *mid;
}

double median_of_means(const Integrand& f, const DesignFactory& factory, int n_replicates,
                       RngSeed seed) {
    if (n_replicates < 1 || n_replicates % 2 == 0)
        throw std::invalid_argument("median requires odd replicate count");
    std::vector<double> means;
    means.reserve(static_cast<std::size_t>(n_replicates));
    for (int j = 0; j < n_replicates; ++j)
        means.push_back(qmc_mean(f, factory(seed.child("rep", static_cast<std::uint64_t>(j)))));
    return median(std::move(means));
}

RMode parse_r_mode(std::string_view name) {
    if (name == "fixed") return RMode::fixed;
    if (name == "m-log-m" || name == "m_log_m") return RMode::m_log_m;
    throw std::invalid_argument("unknown r mode: " + std::string(name));
}

std::string_view r_mode_name(RMode mode) {
    return mode == RMode::fixed ? "fixed" : "m-log-m";
}

int r_schedule(int m, RMode mode, int fixed_r, double log_base) {
    if (m < 1) throw std::invalid_argument("r_schedule: m must be >= 1");
    if (mode == RMode::fixed) {
        if (fixed_r < 1 || fixed_r % 2 == 0)
            throw std::invalid_argument("r_schedule: fixed replicate count must be odd");
        return fixed_r;
    }
    const double log_m = log_base > 0.0 ? std::log(m) / std::log(log_base) : std::log(m);
    int r = std::max(1, static_cast<int>(std::ceil(m * log_m)));
    if (r % 2 == 0) ++r;
    return r;
}

MseSummary mse_experiment(const Integrand& f, double exact, const EstimatorConfig& config,
                          int n_outer) {
    if (n_outer < 1) throw std::invalid_argument("mse_experiment: need at least one batch");
    const int E = default_precision(config.base);
    MseSummary summary;
    summary.records.reserve(static_cast<std::size_t>(n_outer));
    const DesignFactory factory = [&](RngSeed s) {
        return draw_design(config.kind, s, config.base, E, config.m, config.s, config.with_shift);
    };
    long double total = 0.0L;
    for (int batch = 0; batch < n_outer; ++batch) {
        const auto t0 = std::chrono::steady_clock::now();
        const RngSeed batch_seed = config.seed.child("batch", static_cast<std::uint64_t>(batch));
        const double estimate = median_of_means(f, factory, config.r, batch_seed);
        const auto t1 = std::chrono::steady_clock::now();
        ExperimentRecord rec;
        rec.config = config;
        rec.batch = batch;
        rec.estimate = estimate;
        rec.squared_error = (estimate - exact) * (estimate - exact);
        rec.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
        total += rec.squared_error;
        summary.records.push_back(rec);
    }
    std::vector<double> errors;
    errors.reserve(summary.records.size());
    for (const auto& r : summary.records) errors.push_back(r.squared_error);
    std::sort(errors.begin(), errors.end());
    const auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(errors.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, errors.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return errors[lo] * (1.0 - frac) + errors[hi] * frac;
    };
    summary.median_sq_error = quantile(0.5);
    summary.q1_sq_error = quantile(0.25);
    summary.q3_sq_error = quantile(0.75);
    summary.mean_sq_error = static_cast<double>(total / static_cast<long double>(n_outer));
    return summary;
}

std::string experiment_csv_header() {
    return "design,b,m,s,integrand,c,weight_mode,r,batch,estimate,sq_error,seed";
}

std::string experiment_csv_row(const ExperimentRecord& rec, std::string_view integrand,
                               double c, std::string_view weight_mode) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,%d,%d,%d,%s,%.17g,%s,%d,%d,%.17g,%.17g,%llu",
                  std::string(design_kind_name(rec.config.kind)).c_str(), rec.config.base.value(),
                  rec.config.m, rec.config.s, std::string(integrand).c_str(), c,
                  std::string(weight_mode).c_str(), rec.config.r, rec.batch, rec.estimate,
                  rec.squared_error,
                  static_cast<unsigned long long>(rec.config.seed.master));
    return buf;
}

double fitted_log2_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("slope fit needs at least two points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double ly = std::log2(y[i]);
        sx += x[i];
        sy += ly;
        sxx += x[i] * x[i];
        sxy += x[i] * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace hankelnet
