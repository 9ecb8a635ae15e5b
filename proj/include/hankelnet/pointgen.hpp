#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hankelnet/netgen.hpp"

// Point generation for a NetDesign: a fast Gray-code streaming generator and
// a per-point oracle. Both map digit states to [0,1) through the exact
// integer value V = sum_i y_i b^(E-i) followed by a single division by b^E,
// so the two routes produce bit-identical doubles.

namespace hankelnet {

struct PointSet {
    std::uint64_t n_points = 0;
    int s = 0;
    std::vector<double> coords;  // row-major, n_points x s

    double at(std::uint64_t n, int j) const { return coords[n * static_cast<std::uint64_t>(s) + j]; }
};

struct GrayStep {
    int digit;  // 0-based digit position t
    int inc;    // +1 or -1
};

/// Steps of the reflected base-b Gray code over m digits: b^m - 1 steps that
/// visit every word of {0,...,b-1}^m, changing one digit by +-1 each.
std::vector<GrayStep> gray_steps(PrimeBase b, int m);

// On-the-fly form of gray_steps.
class GrayStepper {
public:
    GrayStepper(PrimeBase b, int m);

    bool done() const { return remaining_ == 0; }
    GrayStep next();

    std::span<const digit_t> word() const { return word_; }

private:
    int b_;
    std::vector<digit_t> word_;
    std::vector<int> dir_;
    std::uint64_t remaining_;
};

/// All b^m points in Gray order, starting from the digital shift (or the
/// origin when the design carries none).
PointSet gen_points_gray(const NetDesign& design);

/// Oracle: point n computed from scratch as C_j n_m (+ shift) for each n in
/// natural order.
PointSet gen_points_naive(const NetDesign& design);

/// Streaming variant of gen_points_gray; f receives (index, coordinates)
/// without materializing the point set.
void scan_points_gray(const NetDesign& design,
                      const std::function<void(std::uint64_t, std::span<const double>)>& f);

}  // namespace hankelnet
