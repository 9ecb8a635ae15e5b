#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hankelnet/netgen.hpp"
#include "hankelnet/pointgen.hpp"
#include "hankelnet/rng.hpp"

// QMC mean, median-of-means over independent shifted designs, replicate-count
// schedules, and the MSE experiment driver.

namespace hankelnet {

using Integrand = std::function<double(std::span<const double>)>;
using DesignFactory = std::function<NetDesign(RngSeed)>;

/// (1/N) sum_n f(x_n).
double qmc_mean(const Integrand& f, const PointSet& points);

/// Same mean evaluated while streaming the design's points.
double qmc_mean(const Integrand& f, const NetDesign& design);

/// Exact middle order statistic; throws for an even count.
double median(std::vector<double> values);

/// Median of n_replicates independent QMC means; replicate j draws its
/// design from factory(seed.child("rep", j)).
double median_of_means(const Integrand& f, const DesignFactory& factory, int n_replicates,
                       RngSeed seed);

enum class RMode { fixed, m_log_m };

RMode parse_r_mode(std::string_view name);
std::string_view r_mode_name(RMode mode);

/// Replicate count: the configured constant in fixed mode (default 15), or
/// the smallest odd integer >= ceil(m * log(m)) in m_log_m mode (natural log
/// by default; the base is adjustable).
int r_schedule(int m, RMode mode, int fixed_r = 15, double log_base = 0.0);

struct EstimatorConfig {
    DesignKind kind = DesignKind::hrd;
    PrimeBase base{2};
    int m = 1;
    int s = 1;
    int r = 15;  // odd
    RMode r_mode = RMode::fixed;
    bool with_shift = true;
    RngSeed seed;
};

struct ExperimentRecord {
    EstimatorConfig config;
    int batch = 0;
    double estimate = 0.0;
    double squared_error = 0.0;
    double wall_seconds = 0.0;
};

struct MseSummary {
    std::vector<ExperimentRecord> records;
    double median_sq_error = 0.0;
    double q1_sq_error = 0.0;
    double q3_sq_error = 0.0;
    double mean_sq_error = 0.0;
};

/// Runs n_outer independent median-of-means estimates with derived seeds and
/// reports order statistics of the squared errors.
MseSummary mse_experiment(const Integrand& f, double exact, const EstimatorConfig& config,
                          int n_outer);

/// Header and row formatting of the shared experiment CSV schema.
std::string experiment_csv_header();
std::string experiment_csv_row(const ExperimentRecord& rec, std::string_view integrand,
                               double c, std::string_view weight_mode);

/// Least-squares slope of log2(y) against x; used for convergence-rate fits.
double fitted_log2_slope(std::span<const double> x, std::span<const double> y);

}  // namespace hankelnet
