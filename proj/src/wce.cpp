#include "hankelnet/wce.hpp"

#include "hankelnet/walshlab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hankelnet {

ProductWeights::ProductWeights(std::vector<double> g) : gamma(std::move(g)) {
    for (double w : gamma)
        if (!(w > 0.0)) throw std::invalid_argument("product weights must be positive");
}

SmoothnessParams::SmoothnessParams(int alpha_, double p_) : alpha(alpha_), p(p_) {
    if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("p must lie in (0, 1]");
}

double c_alpha_p(PrimeBase b, int alpha, double p) {
    SmoothnessParams check(alpha, p);
    const double plus = std::max(0.0, 2.0 * p - 1.0);
    return std::pow(b.value() - 1.0, plus / 2.0) * (0.5 * (1.0 + std::numbers::pi)) *
           std::pow(static_cast<double>(b.value()), alpha);
}

double w_linf_bound(std::uint64_t k, int alpha, PrimeBase b) {
    if (k == 0) throw std::invalid_argument("w_linf_bound: k must be positive");
    if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");
    const auto positions = kappa(k, b);
    const int n_alpha = std::min<int>(alpha, static_cast<int>(positions.size()));
    const int mu = mu_alpha(k, alpha, b);
    return (0.5 * (1.0 + std::numbers::pi)) *
           std::pow(static_cast<double>(b.value()), n_alpha - mu);
}

namespace {

struct DyadicScale {
    int a1 = 0;
    double t1 = 0.0;
};

DyadicScale dyadic_scale(double x) {
    if (x < 0.0 || x >= 1.0) throw std::invalid_argument("x must lie in [0, 1)");
    if (x == 0.0) return {0, 0.0};
    const int a1 = -std::ilogb(x);  // exact floor(log2 x) from the exponent field
    return {a1, std::ldexp(1.0, -a1)};
}

}  // namespace

double omega2(double x) {
    const auto [a1, t1] = dyadic_scale(x);
    const double s1 = 1.0 - 2.0 * x;
    const double s2t = 0.5 * (1.0 - 5.0 * t1) - (a1 - 2.0) * x;
    return s1 + s2t;
}

double omega3(double x) {
    const auto [a1, t1] = dyadic_scale(x);
    const double s1 = 1.0 - 2.0 * x;
    const double s2 = 1.0 / 3.0 - 2.0 * (1.0 - x) * x;
    const double s3t = (1.0 - 43.0 * t1 * t1) / 18.0 + (5.0 * t1 - 1.0) * x + (a1 - 2.0) * x * x;
    return s1 + s2 + s3t;
}

double omega_weight_total(int alpha, PrimeBase b) {
    if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");
    const double bd = static_cast<double>(b.value());
    double total = 0.0;
    double prod = 1.0;
    for (int nu = 1; nu <= alpha; ++nu) {
        prod *= (bd - 1.0) / (std::pow(bd, nu) - 1.0);
        total += prod;
    }
    prod *= (bd - 1.0) / (std::pow(bd, alpha + 1) - 1.0);
    const double top = std::pow(bd, alpha + 1);
    total += (top - 1.0) / (top - bd) * prod;
    return total;
}

namespace {

// Sum of the 1-based positions of the top `count` set bits of k.
int top_bit_positions_sum(std::uint64_t k, int count) {
    int sum = 0;
    for (int i = 0; i < count && k != 0; ++i) {
        const int p = 63 - std::countl_zero(k);
        sum += p + 1;
        k &= ~(std::uint64_t{1} << p);
    }
    return sum;
}

std::vector<SeriesValue> omega_series_batch_b2(std::span<const double> xs, int alpha,
                                               std::uint64_t k_max) {
    const PrimeBase b2(2);
    const int E = default_precision(b2);  // 53
    // Pack the digits of each x little-endian by position: bit (i-1) = x_[i],
    // so the Walsh sign is the parity of popcount(k & packed).
    std::vector<std::uint64_t> packed(xs.size());
    const double denom = std::ldexp(1.0, E);
    for (std::size_t p = 0; p < xs.size(); ++p) {
        if (xs[p] < 0.0 || xs[p] >= 1.0) throw std::invalid_argument("x must lie in [0, 1)");
        std::uint64_t v = static_cast<std::uint64_t>(llroundl(static_cast<long double>(xs[p]) * denom));
        if (v >= (std::uint64_t{1} << E)) v = (std::uint64_t{1} << E) - 1;
        std::uint64_t w = 0;
        for (int i = 0; i < E; ++i)
            w |= ((v >> (E - 1 - i)) & 1U) << i;
        packed[p] = w;
    }

    std::vector<long double> acc(xs.size(), 0.0L);
    long double weight_sum = 0.0L;
    double pow2[130];
    pow2[0] = 1.0;
    for (int i = 1; i < 130; ++i) pow2[i] = pow2[i - 1] * 0.5;
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        const int mu = top_bit_positions_sum(k, alpha + 1);
        const double w = pow2[mu];
        weight_sum += w;
        for (std::size_t p = 0; p < xs.size(); ++p) {
            const bool neg = std::popcount(k & packed[p]) & 1U;
            acc[p] += neg ? -w : w;
        }
    }
    const double tail = std::max(0.0, omega_weight_total(alpha, b2) - static_cast<double>(weight_sum));
    std::vector<SeriesValue> out(xs.size());
    for (std::size_t p = 0; p < xs.size(); ++p) out[p] = {static_cast<double>(acc[p]), tail};
    return out;
}

std::vector<SeriesValue> omega_series_batch_generic(std::span<const double> xs, int alpha,
                                                    PrimeBase b, std::uint64_t k_max) {
    const int E = default_precision(b);
    const int bv = b.value();
    // Per-point digit tables, position 1 first.
    std::vector<std::vector<digit_t>> xdigits(xs.size());
    for (std::size_t p = 0; p < xs.size(); ++p) {
        if (xs[p] < 0.0 || xs[p] >= 1.0) throw std::invalid_argument("x must lie in [0, 1)");
        long double scaled = static_cast<long double>(xs[p]);
        for (int i = 0; i < E; ++i) scaled *= bv;
        std::uint64_t v = static_cast<std::uint64_t>(llroundl(scaled));
        std::uint64_t limit = 1;
        for (int i = 0; i < E; ++i) limit *= static_cast<std::uint64_t>(bv);
        if (v >= limit) v = limit - 1;
        auto& d = xdigits[p];
        d.resize(static_cast<std::size_t>(E));
        for (int i = E; i >= 1; --i) {
            d[static_cast<std::size_t>(i - 1)] = static_cast<digit_t>(v % static_cast<std::uint64_t>(bv));
            v /= static_cast<std::uint64_t>(bv);
        }
    }

    std::vector<std::complex<long double>> acc(xs.size(), 0.0L);
    long double weight_sum = 0.0L;
    std::vector<std::complex<long double>> roots(static_cast<std::size_t>(bv));
    for (int j = 0; j < bv; ++j) {
        const long double ang = 2.0L * std::numbers::pi_v<long double> * j / bv;
        roots[static_cast<std::size_t>(j)] = {std::cos(ang), std::sin(ang)};
    }
    std::vector<int> kdigits;
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        kdigits.clear();
        std::uint64_t t = k;
        while (t != 0) {
            kdigits.push_back(static_cast<int>(t % static_cast<std::uint64_t>(bv)));
            t /= static_cast<std::uint64_t>(bv);
        }
        int mu = 0;
        int counted = 0;
        for (int i = static_cast<int>(kdigits.size()); i >= 1 && counted <= alpha; --i) {
            if (kdigits[static_cast<std::size_t>(i - 1)] != 0) {
                mu += i;
                ++counted;
            }
        }
        const long double w = std::pow(static_cast<long double>(bv), -mu);
        weight_sum += w;
        for (std::size_t p = 0; p < xs.size(); ++p) {
            int e = 0;
            for (std::size_t i = 0; i < kdigits.size(); ++i)
                e = (e + kdigits[i] * xdigits[p][i]) % bv;
            acc[p] += w * roots[static_cast<std::size_t>(e)];
        }
    }
    const double tail = std::max(0.0, omega_weight_total(alpha, b) - static_cast<double>(weight_sum));
    std::vector<SeriesValue> out(xs.size());
    for (std::size_t p = 0; p < xs.size(); ++p)
        out[p] = {static_cast<double>(acc[p].real()), tail};
    return out;
}

}  // namespace

std::vector<SeriesValue> omega_series_batch(std::span<const double> xs, int alpha, PrimeBase b,
                                            std::uint64_t k_max) {
    if (k_max < 1) throw std::invalid_argument("omega_series: k_max must be >= 1");
    if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");
    if (b.value() == 2) return omega_series_batch_b2(xs, alpha, k_max);
    return omega_series_batch_generic(xs, alpha, b, k_max);
}

SeriesValue omega_series(double x, int alpha, PrimeBase b, std::uint64_t k_max) {
    const double xs[1] = {x};
    return omega_series_batch(xs, alpha, b, k_max)[0];
}

namespace {

double omega_closed(double x, int alpha) {
    return alpha == 1 ? omega2(x) : omega3(x);
}

void check_alpha_closed_form(int alpha) {
    if (alpha != 1 && alpha != 2)
        throw std::invalid_argument("closed form unavailable: alpha must be 1 or 2");
}

}  // namespace

double wce_bound(const PointSet& points, const ProductWeights& gamma, int alpha) {
    check_alpha_closed_form(alpha);
    if (gamma.dimension() != points.s)
        throw std::invalid_argument("wce_bound: weight count must match dimension");
    const double c = c_alpha_p(PrimeBase(2), alpha, 1.0);
    long double sum = 0.0L;
    for (std::uint64_t n = 0; n < points.n_points; ++n) {
        double prod = 1.0;
        for (int j = 0; j < points.s; ++j)
            prod *= 1.0 + gamma.gamma[static_cast<std::size_t>(j)] * c *
                              omega_closed(points.at(n, j), alpha);
        sum += prod;
    }
    return static_cast<double>(sum / static_cast<long double>(points.n_points)) - 1.0;
}

double wce_bound(const NetDesign& design, const ProductWeights& gamma, int alpha) {
    check_alpha_closed_form(alpha);
    if (design.base.value() != 2)
        throw std::invalid_argument("wce_bound: closed forms require base 2");
    if (design.has_shift())
        throw std::invalid_argument("wce_bound: worst-case error is defined without a shift");
    if (gamma.dimension() != design.s)
        throw std::invalid_argument("wce_bound: weight count must match dimension");
    const double c = c_alpha_p(design.base, alpha, 1.0);
    long double sum = 0.0L;
    scan_points_gray(design, [&](std::uint64_t, std::span<const double> x) {
        double prod = 1.0;
        for (int j = 0; j < design.s; ++j)
            prod *= 1.0 + gamma.gamma[static_cast<std::size_t>(j)] * c * omega_closed(x[j], alpha);
        sum += prod;
    });
    return static_cast<double>(sum / static_cast<long double>(design.n_points())) - 1.0;
}

double wce_bound_series(const PointSet& points, const ProductWeights& gamma, int alpha,
                        PrimeBase b, std::uint64_t k_max) {
    if (gamma.dimension() != points.s)
        throw std::invalid_argument("wce_bound: weight count must match dimension");
    const double c = c_alpha_p(b, alpha, 1.0);
    const auto omegas = omega_series_batch(points.coords, alpha, b, k_max);
    long double sum = 0.0L;
    for (std::uint64_t n = 0; n < points.n_points; ++n) {
        double prod = 1.0;
        for (int j = 0; j < points.s; ++j)
            prod *= 1.0 + gamma.gamma[static_cast<std::size_t>(j)] * c *
                              omegas[n * static_cast<std::uint64_t>(points.s) +
                                     static_cast<std::uint64_t>(j)]
                                  .value;
        sum += prod;
    }
    return static_cast<double>(sum / static_cast<long double>(points.n_points)) - 1.0;
}

GreedyResult greedy_select(RngSeed seed, int r, PrimeBase b, int m, int s,
                           const ProductWeights& gamma, int alpha, DesignKind kind,
                           std::uint64_t series_k_max) {
    if (r < 1) throw std::invalid_argument("greedy_select: batch size must be >= 1");
    if (b.value() != 2 && series_k_max == 0)
        throw std::invalid_argument("greedy_select: bases other than 2 need series_k_max > 0");
    const int E = default_precision(b);
    GreedyResult result;
    result.wce_values.reserve(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        NetDesign d = draw_design(kind, seed.child("greedy", static_cast<std::uint64_t>(i)), b, E,
                                  m, s, false);
        const double w = series_k_max == 0
                             ? wce_bound(d, gamma, alpha)
                             : wce_bound_series(gen_points_gray(d), gamma, alpha, b, series_k_max);
        result.wce_values.push_back(w);
        if (result.best_index < 0 || w < result.best_wce) {
            result.best_wce = w;
            result.best_index = i;
            result.best = std::move(d);
        }
    }
    return result;
}

}  // namespace hankelnet
