#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hankelnet/estimators.hpp"
#include "hankelnet/wce.hpp"

// The test integrands with exact integrals, weight schedules, the inverse
// normal CDF, and the convergence-sweep driver.

namespace hankelnet {

enum class IntegrandKind { product_power, lognormal, t_exp };

IntegrandKind parse_integrand_kind(std::string_view name);
std::string_view integrand_kind_name(IntegrandKind kind);

/// prod_j [1 + gamma_j (t_j^c - 1/(1+c))]; exact integral 1. The raw-span
/// overload admits zero weights (each factor then degenerates to 1).
double product_power(std::span<const double> t, double c, std::span<const double> gamma);
double product_power(std::span<const double> t, double c, const ProductWeights& gamma);

/// exp(sum_j Phi^{-1}(t_j)); exact integral e^(s/2). Coordinates equal to 0
/// are nudged to `zero_nudge` before Phi^{-1} (unshifted nets contain the
/// origin, where the integrand is singular).
double lognormal(std::span<const double> t, double zero_nudge);

/// prod_j t_j exp(t_j); exact integral 1, variance ((e^2-1)/4)^s - 1.
double t_exp(std::span<const double> t);

/// Exponential decay weights gamma_j = exp(-ceil(c) j).
ProductWeights exp_weights(int s, double c);
ProductWeights equal_weights(int s);

/// Phi^{-1}, accurate to <= 1e-9 absolute on [1e-15, 1-1e-15]; rational
/// approximation refined by one Halley step of Phi.
double inverse_normal_cdf(double u);

// Bundles an integrand with its exact moments and evaluation closure.
struct IntegrandSpec {
    IntegrandKind kind;
    int s = 1;
    double c = 1.5;                      // product_power only
    ProductWeights gamma{{}};            // product_power only
    double exact_integral = 0.0;
    std::optional<double> exact_variance;
    Integrand eval;
};

/// weight_mode is "exp" or "equal" (product_power only). The base and
/// precision fix the lognormal zero nudge b^-(E+1).
IntegrandSpec make_integrand(IntegrandKind kind, int s, double c, std::string_view weight_mode,
                             PrimeBase b, int precision);

struct SweepConfig {
    std::vector<DesignKind> designs;
    std::vector<int> bases;
    int m_min = 0;
    int m_max = 0;
    int s = 1;
    IntegrandKind integrand = IntegrandKind::product_power;
    double c = 1.5;
    std::string weight_mode = "exp";
    RMode r_mode = RMode::fixed;
    int r_fixed = 15;
    int batches = 64;
    std::uint64_t seed = 0;
    std::string out;
};

/// Parses the flat key = value config format ('#' starts a comment line).
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

struct SweepCellSummary {
    DesignKind design;
    int base = 2;
    int m = 0;
    double median_sq_error = 0.0;
};

struct SweepSummary {
    std::vector<SweepCellSummary> cells;
    // One fitted log2 slope of the per-m median squared error per (design, base).
    struct Slope {
        DesignKind design;
        int base;
        double slope;
    };
    std::vector<Slope> slopes;
};

/// Runs mse_experiment for every (design, base, m) cell, writes the CSV rows
/// to the configured output path, and returns the summary.
SweepSummary run_sweep(const SweepConfig& config);

}  // namespace hankelnet
