#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hankelnet/netgen.hpp"
#include "hankelnet/pointgen.hpp"

// Computable worst-case-error bound over the weighted Sobolev-variation
// space with product weights, the omega_2 / omega_3 closed forms, and greedy
// best-of-batch design selection.

namespace hankelnet {

struct ProductWeights {
    std::vector<double> gamma;

    explicit ProductWeights(std::vector<double> g);
    int dimension() const { return static_cast<int>(gamma.size()); }
};

struct SmoothnessParams {
    int alpha = 1;
    double p = 1.0;

    SmoothnessParams(int alpha_, double p_);
};

/// C_{alpha,p} = (b-1)^((2p-1)_+ / 2) * ((1+pi)/2) * b^alpha.
double c_alpha_p(PrimeBase b, int alpha, double p);

/// ((1+pi)/2) * b^(n_alpha(k) - mu_alpha(k)) with n_alpha(k) = min(alpha, |kappa(k)|).
double w_linf_bound(std::uint64_t k, int alpha, PrimeBase b);

/// Closed forms of omega_2 and omega_3 in base 2. The dyadic scale
/// a_1 = -floor(log2 x) is taken from the float exponent, never from a log.
double omega2(double x);
double omega3(double x);

struct SeriesValue {
    double value = 0.0;       // real part of the truncated Walsh series
    double tail_bound = 0.0;  // sum_{k > k_max} b^(-mu_{alpha+1}(k)), analytic
};

/// Truncated series omega_{alpha+1}(x) = sum_{k=1}^{k_max} b^(-mu_{alpha+1}(k)) wal_k(x).
SeriesValue omega_series(double x, int alpha, PrimeBase b, std::uint64_t k_max);

/// Batched variant sharing the per-k weight computation across points.
std::vector<SeriesValue> omega_series_batch(std::span<const double> xs, int alpha, PrimeBase b,
                                            std::uint64_t k_max);

/// Full sum sum_{k >= 1} b^(-mu_{alpha+1}(k)) in closed form.
double omega_weight_total(int alpha, PrimeBase b);

/// -1 + (1/N) sum_i prod_j [1 + gamma_j C_{alpha,1} omega_{alpha+1}(x_ij)]
/// for base-2 points without a digital shift; alpha in {1, 2}.
double wce_bound(const PointSet& points, const ProductWeights& gamma, int alpha);

/// Same bound evaluated while streaming the design's points.
double wce_bound(const NetDesign& design, const ProductWeights& gamma, int alpha);

/// Series-backed bound for bases other than 2, with a user-set truncation.
double wce_bound_series(const PointSet& points, const ProductWeights& gamma, int alpha,
                        PrimeBase b, std::uint64_t k_max);

struct GreedyResult {
    NetDesign best;
    double best_wce = 0.0;
    int best_index = -1;
    std::vector<double> wce_values;
};

/// Draws r independent designs (no shift), scores each by the computable
/// worst-case-error bound and returns the minimizer; ties break toward the
/// lowest batch index. Bases other than 2 require series_k_max > 0.
GreedyResult greedy_select(RngSeed seed, int r, PrimeBase b, int m, int s,
                           const ProductWeights& gamma, int alpha, DesignKind kind,
                           std::uint64_t series_k_max = 0);

}  // namespace hankelnet
