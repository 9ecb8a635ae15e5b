#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "hankelnet/netgen.hpp"

// Digit-expansion utilities, NRT/Dick weights, Walsh functions, dual-net
// membership, the t-parameter, and exact / Monte Carlo probes of dual-net
// inclusion probabilities.

namespace hankelnet {

/// 1-based positions of the nonzero base-b digits of k, ascending.
/// k = sum_i k_[i] b^(i-1); kappa(0) is empty.
std::vector<int> kappa(std::uint64_t k, PrimeBase b);

/// NRT/Dick weight: sum of the alpha largest elements of kappa(k), padding
/// with zeros. mu_alpha(0) = 0.
int mu_alpha(std::uint64_t k, int alpha, PrimeBase b);

/// Vector weight: sum of mu_alpha over the components.
long mu_alpha(std::span<const std::uint64_t> k, int alpha, PrimeBase b);

/// k-th Walsh function at x, with the expansion of x truncated at
/// `precision` base-b digits (nearest grid point).
std::complex<double> walsh(std::uint64_t k, double x, PrimeBase b, int precision);
std::complex<double> walsh(std::uint64_t k, double x, PrimeBase b);

/// Multidimensional Walsh function: product over coordinates.
std::complex<double> walsh(std::span<const std::uint64_t> k, std::span<const double> x,
                           PrimeBase b, int precision);

/// True iff sum_j C_j^T k_j = 0 over F_b (shift-independent). Throws
/// "precision exceeded" when a component has digits beyond E positions.
bool dual_contains(const NetDesign& design, std::span<const std::uint64_t> k);

/// Smallest t >= 0 such that every stacked row-prefix matrix C_q with
/// |q|_1 = m - t has full row rank. Guarded by a composition-count limit.
int t_parameter(const NetDesign& design);

/// t-parameter restricted to the coordinates in u (0-based indices).
int t_u_parameter(const NetDesign& design, std::span<const int> u);

/// Rank of the linear map from the design's random digit variables to the
/// stacked outputs sum_j C_j^T [k_1j ... k_nj]; the probability that all k
/// vectors lie in the dual net is b^(-rank). kind must be hrd or urd.
int dual_map_rank(std::span<const std::vector<std::uint64_t>> ks, PrimeBase b, int m,
                  DesignKind kind);

double joint_dual_prob_exact(std::span<const std::uint64_t> k1,
                             std::span<const std::uint64_t> k2, PrimeBase b, int m,
                             DesignKind kind);

double marginal_dual_prob_exact(std::span<const std::uint64_t> k, PrimeBase b, int m,
                                DesignKind kind);

/// Chung-Erdos lower bound (sum p_i)^2 / (sum p_i + sum_{i != j} p_ij) for
/// Pr(union); 0 when the denominator vanishes.
double chung_erdos_lower(std::span<const double> singles,
                         const std::vector<std::vector<double>>& pairs);

/// Hunter upper bound: sum p_i minus the weight of a maximum spanning tree
/// of the complete graph with edge weights p_ij.
double hunter_upper(std::span<const double> singles,
                    const std::vector<std::vector<double>>& pairs);

struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::uint64_t trials = 0;
};

/// Fraction of freshly drawn designs whose dual net contains k, with the
/// binomial standard error.
McEstimate mc_dual_prob(RngSeed seed, std::span<const std::uint64_t> k, PrimeBase b, int m,
                        int s, DesignKind kind, std::uint64_t trials);

/// Monte Carlo estimate of Pr(any of the given k vectors is in the dual).
McEstimate mc_dual_union_prob(RngSeed seed, std::span<const std::vector<std::uint64_t>> ks,
                              PrimeBase b, int m, int s, DesignKind kind, std::uint64_t trials);

/// Piecewise probability bound for Pr(k in dual) under linear matrix
/// scrambling, given the per-coordinate mu_1 values of the (nonzero)
/// components of k and the t_u parameter of the unscrambled matrices.
double lms_dual_prob_bound(std::span<const int> mu1_values, int m, PrimeBase b, int t_u,
                           int u_size);

}  // namespace hankelnet
