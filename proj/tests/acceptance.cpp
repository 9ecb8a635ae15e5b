// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned here, in code.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <vector>

#include "hankelnet/bench.hpp"
#include "hankelnet/estimators.hpp"
#include "hankelnet/netgen.hpp"
#include "hankelnet/pointgen.hpp"
#include "hankelnet/walshlab.hpp"
#include "hankelnet/wce.hpp"

using namespace hankelnet;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Exact multiset equality of two point sets (bit-identical doubles), the
// same predicate as comparing the two sorted lists. Open-address table with
// exact key comparison, reused across nets.
class MultisetChecker {
public:
    void begin(std::uint64_t n_points) {
        std::size_t cap = 16;
        while (cap < 2 * n_points) cap <<= 1;
        if (slots_.size() < cap) slots_.assign(cap, Slot{});
        mask_ = slots_.size() - 1;
        ++epoch_;
        nonzero_ = 0;
    }

    void add(const double* x, int s) { update(x, s, +1); }
    void sub(const double* x, int s) { update(x, s, -1); }

    bool balanced() const { return nonzero_ == 0; }

    bool equal(const PointSet& a, const PointSet& b) {
        if (a.n_points != b.n_points || a.s != b.s) return false;
        begin(a.n_points);
        for (std::uint64_t n = 0; n < a.n_points; ++n) add(&a.coords[n * a.s], a.s);
        for (std::uint64_t n = 0; n < b.n_points; ++n) sub(&b.coords[n * b.s], b.s);
        return balanced();
    }

private:
    using Key = std::array<std::uint64_t, 4>;

    struct Slot {
        Key key{};
        long count = 0;
        std::uint32_t epoch = 0;  // slot is vacant unless epoch matches
    };

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    void update(const double* x, int s, long delta) {
        Key key{};
        std::uint64_t h = 0x51ab6ddf1d3cULL;
        for (int j = 0; j < s; ++j) {
            std::uint64_t bits;
            std::memcpy(&bits, x + j, sizeof(bits));
            key[static_cast<std::size_t>(j)] = bits;
            h = mix(h ^ bits);
        }
        std::size_t slot = h & mask_;
        while (true) {
            Slot& e = slots_[slot];
            if (e.epoch != epoch_) {
                e.epoch = epoch_;
                e.key = key;
                e.count = delta;
                ++nonzero_;
                return;
            }
            if (e.key == key) {
                const long before = e.count;
                e.count += delta;
                if (before == 0) ++nonzero_;
                else if (e.count == 0) --nonzero_;
                return;
            }
            slot = (slot + 1) & mask_;
        }
    }

    std::vector<Slot> slots_;
    std::size_t mask_ = 0;
    std::uint32_t epoch_ = 0;
    long nonzero_ = 0;
};

// Bit-exact check of the Gray stream against the naive oracle: pointwise
// under the Gray-walk index map (a bijection, rebuilt here from gray_steps
// alone, so matching pointwise implies the sorted multisets coincide), plus
// the literal multiset comparison wherever it is cheap.
bool gray_matches_naive(const NetDesign& d, const PointSet& naive, MultisetChecker& checker) {
    std::vector<std::uint64_t> place(static_cast<std::size_t>(d.m));
    std::uint64_t p = 1;
    for (int t = 0; t < d.m; ++t) {
        place[static_cast<std::size_t>(t)] = p;
        p *= static_cast<std::uint64_t>(d.base.value());
    }
    const int s = d.s;
    const bool use_checker = naive.n_points <= 20000;
    if (use_checker) {
        checker.begin(naive.n_points);
        for (std::uint64_t n = 0; n < naive.n_points; ++n) checker.add(&naive.coords[n * s], s);
    }
    bool ok = true;
    std::uint64_t index = 0;  // net index of the current Gray word
    GrayStepper replay(d.base, d.m);
    bool first = true;
    scan_points_gray(d, [&](std::uint64_t, std::span<const double> x) {
        if (!ok) return;
        if (!first) {
            const GrayStep step = replay.next();
            index = step.inc > 0 ? index + place[static_cast<std::size_t>(step.digit)]
                                 : index - place[static_cast<std::size_t>(step.digit)];
        }
        first = false;
        ok = std::memcmp(x.data(), &naive.coords[index * s],
                         static_cast<std::size_t>(s) * sizeof(double)) == 0;
        if (use_checker) checker.sub(x.data(), s);
    });
    return ok && (!use_checker || checker.balanced());
}

// 1. Gray-code generator vs naive oracle, bit-exact multisets.
Check criterion_oracle_equivalence() {
    Check c;
    MultisetChecker checker;
    for (int b : {2, 3, 5}) {
        const PrimeBase base(b);
        const int E = default_precision(base);
        for (int m = 1; m <= 8; ++m) {
            for (int s = 1; s <= 4; ++s) {
                for (int rep = 0; rep < 20; ++rep) {
                    const RngSeed seed =
                        RngSeed{0xACCE0001}.child("net", static_cast<std::uint64_t>(
                                                             ((b * 16 + m) * 8 + s) * 32 + rep));
                    // Half the designs keep their shift, half run bare.
                    const bool shifted = rep % 2 == 1;
                    const NetDesign d = draw_hrd(seed, base, E, m, s, shifted);
                    const PointSet naive = gen_points_naive(d);
                    if (!gray_matches_naive(d, naive, checker)) {
                        c.expect(false, "mismatch at b=" + std::to_string(b) +
                                            " m=" + std::to_string(m) + " s=" + std::to_string(s) +
                                            " rep=" + std::to_string(rep) +
                                            (shifted ? " shifted" : " unshifted"));
                        return c;
                    }
                }
            }
        }
    }
    return c;
}

// 2. Marginal inclusion probabilities: Monte Carlo within 4 sigma and exact
// map rank equal to m.
Check criterion_marginal_probability() {
    Check c;
    struct Case {
        int b, m;
    };
    for (const Case cs : {Case{2, 6}, Case{3, 3}}) {
        const PrimeBase base(cs.b);
        const double target = std::pow(static_cast<double>(cs.b), -cs.m);
        Rng rng(RngSeed{0xACCE0002}.child("k", static_cast<std::uint64_t>(cs.b)));
        for (int i = 0; i < 5; ++i) {
            const int s = 1 + static_cast<int>(rng.below(3));
            std::vector<std::uint64_t> k(static_cast<std::size_t>(s), 0);
            while (std::all_of(k.begin(), k.end(), [](std::uint64_t v) { return v == 0; }))
                for (auto& kj : k) kj = rng.below(64);
            for (DesignKind kind : {DesignKind::hrd, DesignKind::urd}) {
                std::vector<std::vector<std::uint64_t>> ks{k};
                const int r = dual_map_rank(ks, base, cs.m, kind);
                c.expect(r == cs.m, "exact rank " + std::to_string(r) + " != m=" + std::to_string(cs.m));
            }
            const McEstimate est =
                mc_dual_prob(RngSeed{0xACCE0002}.child("mc", static_cast<std::uint64_t>(cs.b * 8 + i)),
                             k, base, cs.m, s, DesignKind::hrd, 200000);
            const double sigma = std::sqrt(target * (1.0 - target) / 200000.0);
            c.expect(std::abs(est.estimate - target) < 4.0 * sigma,
                     "MC " + fmt(est.estimate) + " vs " + fmt(target) + " at b=" + std::to_string(cs.b));
        }
    }
    return c;
}

// 3. Exact joint probabilities and the Chung-Erdos / Hunter sandwich.
Check criterion_joint_probability() {
    Check c;
    const PrimeBase b2(2);
    for (int m : {4, 6, 8}) {
        for (int m1 = 0; m1 < m; ++m1) {
            for (int m2 = 0; m2 < m; ++m2) {
                if (m1 == m2) continue;
                const int d = std::abs(m1 - m2);
                const std::vector<std::uint64_t> k1{std::uint64_t{1} << m1};
                const std::vector<std::uint64_t> k2{std::uint64_t{1} << m2};
                const double hrd = joint_dual_prob_exact(k1, k2, b2, m, DesignKind::hrd);
                c.expect(hrd == std::pow(2.0, -(m + d)),
                         "HRD pair prob " + fmt(hrd) + " != 2^-(m+d) at m=" + std::to_string(m));
                const double urd = joint_dual_prob_exact(k1, k2, b2, m, DesignKind::urd);
                c.expect(urd == std::pow(2.0, -2 * m), "URD pair prob " + fmt(urd) + " != 2^-2m");
            }
        }
    }

    const int m = 5;
    Rng rng(RngSeed{0xACCE0003}.child("events", 0));
    for (int inst = 0; inst < 10; ++inst) {
        std::vector<std::vector<std::uint64_t>> ks;
        while (ks.size() < 3) {
            std::vector<std::uint64_t> k{1 + rng.below(63)};
            if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
        }
        std::vector<double> singles;
        std::vector<std::vector<double>> pairs(3, std::vector<double>(3, 0.0));
        for (int i = 0; i < 3; ++i) {
            singles.push_back(marginal_dual_prob_exact(ks[i], b2, m, DesignKind::hrd));
            for (int j = i + 1; j < 3; ++j) {
                const double p = joint_dual_prob_exact(ks[i], ks[j], b2, m, DesignKind::hrd);
                pairs[i][j] = pairs[j][i] = p;
            }
        }
        const McEstimate mc =
            mc_dual_union_prob(RngSeed{0xACCE0003}.child("mc", static_cast<std::uint64_t>(inst)),
                               ks, b2, m, 1, DesignKind::hrd, 50000);
        const double slack = 4.0 * mc.stderr_ + 1e-12;
        c.expect(chung_erdos_lower(singles, pairs) <= mc.estimate + slack,
                 "Chung-Erdos lower bound violated at instance " + std::to_string(inst));
        c.expect(mc.estimate <= hunter_upper(singles, pairs) + slack,
                 "Hunter upper bound violated at instance " + std::to_string(inst));
    }
    return c;
}

// 4. Variance identity: shifted HRD reproduces the Monte Carlo variance.
// Var(f) for the product integrand is ((e^2-1)/4)^s - 1 (unit-mean factors);
// cross-checked against a plain Monte Carlo oracle in the unit suite.
Check criterion_variance_identity() {
    Check c;
    const PrimeBase b2(2);
    const int m = 5, s = 3;
    const double target = (std::pow((std::exp(2.0) - 1.0) / 4.0, s) - 1.0) / std::pow(2.0, m);
    const Integrand f = [](std::span<const double> t) { return t_exp(t); };
    long double sq = 0.0L;
    const int reps = 10000;
    for (int i = 0; i < reps; ++i) {
        const NetDesign d = draw_hrd(RngSeed{0xACCE0004}.child("rep", static_cast<std::uint64_t>(i)),
                                     b2, 53, m, s, true);
        const double err = qmc_mean(f, d) - 1.0;
        sq += static_cast<long double>(err) * err;
    }
    const double mse = static_cast<double>(sq / reps);
    c.expect(std::abs(mse / target - 1.0) < 0.05,
             "MSE/Var(f)/N = " + fmt(mse / target) + " outside [0.95, 1.05]");
    return c;
}

// 5. omega_2 / omega_3 closed forms vs the truncated series.
Check criterion_omega_forms() {
    Check c;
    const std::uint64_t k_max = std::uint64_t{1} << 20;
    c.expect(omega2(0.0) == 1.5, "omega2(0) != 3/2");
    c.expect(std::abs(omega3(0.0) - 25.0 / 18.0) < 1e-15, "omega3(0) != 25/18");

    std::vector<double> xs{0.0};
    for (int i = 1; i <= 21; ++i) xs.push_back(std::ldexp(1.0, -i));
    Rng rng(RngSeed{0xACCE0005}.child("x", 0));
    while (xs.size() < 300)
        xs.push_back(static_cast<double>(rng.below(std::uint64_t{1} << 53)) *
                     std::ldexp(1.0, -53));
    for (int alpha : {1, 2}) {
        const auto series = omega_series_batch(xs, alpha, PrimeBase(2), k_max);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double closed = alpha == 1 ? omega2(xs[i]) : omega3(xs[i]);
            if (std::abs(closed - series[i].value) > series[i].tail_bound + 1e-10) {
                c.expect(false, "alpha=" + std::to_string(alpha) + " x=" + fmt(xs[i]) + " gap " +
                                    fmt(std::abs(closed - series[i].value)) + " > tail " +
                                    fmt(series[i].tail_bound));
                break;
            }
        }
    }
    return c;
}

// 6. t-parameter tail bound and the Sobol' t = 0 check.
Check criterion_t_parameter() {
    Check c;
    const PrimeBase b2(2);
    const int m = 10, s = 3;
    const double threshold = s * std::log2(static_cast<double>(m));
    const int draws = 2000;
    int exceed = 0;
    for (int i = 0; i < draws; ++i) {
        const NetDesign d = draw_hrd(RngSeed{0xACCE0006}.child("draw", static_cast<std::uint64_t>(i)),
                                     b2, m, m, s, false);
        if (t_parameter(d) > threshold) ++exceed;
    }
    const double bound = 1.0 / (m * 2.0);  // 1 / (m (s-1)!) with s = 3
    const double freq = static_cast<double>(exceed) / draws;
    const double sigma = std::sqrt(bound * (1.0 - bound) / draws);
    c.expect(freq <= bound + 4.0 * sigma,
             "tail frequency " + fmt(freq) + " above " + fmt(bound + 4.0 * sigma));

    for (int mm = 1; mm <= 10; ++mm) {
        NetDesign sobol{b2, mm, 2, mm, sobol_matrices(mm, 2, mm), {}};
        const int t = t_parameter(sobol);
        c.expect(t == 0, "sobol dims 1-2 t=" + std::to_string(t) + " at m=" + std::to_string(mm));
    }
    return c;
}

// 7. Best-of-15 WCE: HRD beats URD in at least 80 of 100 batches.
Check criterion_greedy_hrd_vs_urd() {
    Check c;
    const int m = 10, s = 50;
    const ProductWeights gamma = exp_weights(s, 1.5);
    int wins = 0;
    for (int batch = 0; batch < 100; ++batch) {
        const RngSeed seed = RngSeed{0xACCE0007}.child("batch", static_cast<std::uint64_t>(batch));
        const double hrd =
            greedy_select(seed.child("hrd", 0), 15, PrimeBase(2), m, s, gamma, 1, DesignKind::hrd)
                .best_wce;
        const double urd =
            greedy_select(seed.child("urd", 0), 15, PrimeBase(2), m, s, gamma, 1, DesignKind::urd)
                .best_wce;
        if (hrd < urd) ++wins;
    }
    c.expect(wins >= 80, "HRD won only " + std::to_string(wins) + "/100 batches");
    c.detail = "HRD wins " + std::to_string(wins) + "/100";
    return c;
}

// 8. Median-of-means convergence: slope <= -3 and HRD <= URD at m = 12.
Check criterion_mom_convergence() {
    Check c;
    const int s = 50;
    const double cexp = 1.5;
    const IntegrandSpec spec =
        make_integrand(IntegrandKind::product_power, s, cexp, "exp", PrimeBase(2), 53);
    std::vector<double> ms, hrd_medians;
    double hrd_at_12 = 0.0, urd_at_12 = 0.0;
    for (DesignKind kind : {DesignKind::hrd, DesignKind::urd}) {
        for (int m = 6; m <= 12; ++m) {
            if (kind == DesignKind::urd && m != 12) continue;
            EstimatorConfig config;
            config.kind = kind;
            config.base = PrimeBase(2);
            config.m = m;
            config.s = s;
            config.r = 15;
            config.seed = RngSeed{0xACCE0008}
                              .child(design_kind_name(kind), 0)
                              .child("m", static_cast<std::uint64_t>(m));
            const MseSummary cell = mse_experiment(spec.eval, spec.exact_integral, config, 64);
            if (kind == DesignKind::hrd) {
                ms.push_back(static_cast<double>(m));
                hrd_medians.push_back(cell.median_sq_error);
                if (m == 12) hrd_at_12 = cell.median_sq_error;
            } else {
                urd_at_12 = cell.median_sq_error;
            }
        }
    }
    const double slope = fitted_log2_slope(ms, hrd_medians);
    c.expect(slope <= -3.0, "HRD log2 slope " + fmt(slope) + " > -3");
    c.expect(hrd_at_12 <= urd_at_12, "HRD median " + fmt(hrd_at_12) + " above URD " + fmt(urd_at_12) +
                                         " at m=12");
    c.detail = "slope " + fmt(slope) + ", m=12 medians HRD " + fmt(hrd_at_12) + " URD " +
               fmt(urd_at_12);
    return c;
}

// 9. Best-of-15 WCE scaling in m.
Check criterion_wce_scaling() {
    Check c;
    const int s = 10;
    const ProductWeights gamma = exp_weights(s, 1.5);
    std::vector<double> ms, wces;
    for (int m = 4; m <= 12; ++m) {
        const GreedyResult res =
            greedy_select(RngSeed{0xACCE0009}.child("m", static_cast<std::uint64_t>(m)), 15,
                          PrimeBase(2), m, s, gamma, 1, DesignKind::hrd);
        ms.push_back(static_cast<double>(m));
        wces.push_back(res.best_wce);
    }
    const double slope = fitted_log2_slope(ms, wces);
    c.expect(slope >= -2.4 && slope <= -1.5, "WCE slope " + fmt(slope) + " outside [-2.4, -1.5]");
    c.detail = "slope " + fmt(slope);
    return c;
}

// 10. LMS inclusion-probability regimes on Sobol dims 1-2.
Check criterion_lms_probability() {
    Check c;
    const PrimeBase b2(2);
    const int m = 6;
    NetDesign sobol{b2, m, 2, m, sobol_matrices(m, 2, m), {}};
    const std::vector<int> u{0, 1};
    const int t_u = t_u_parameter(sobol, u);

    // mu_1(k) <= m - t_u: never in the dual under LMS.
    std::vector<std::uint64_t> k_small{1, 4};  // mu_1 = 1 + 3 <= m - t_u
    const long mu_small = mu_alpha(k_small, 1, b2);
    c.expect(mu_small <= m - t_u, "test vector does not sit in the zero regime");
    const McEstimate zero = mc_dual_prob(RngSeed{0xACCE000A}.child("zero", 0), k_small, b2, m, 2,
                                         DesignKind::lms_sobol, 100000);
    c.expect(zero.estimate == 0.0, "zero-regime estimate " + fmt(zero.estimate) + " != 0");
    c.expect(lms_dual_prob_bound(std::vector<int>{1, 3}, m, b2, t_u, 2) == 0.0,
             "piecewise bound not 0 in the zero regime");

    // max mu_1 > m: probability exactly b^-m.
    std::vector<std::uint64_t> k_deep{std::uint64_t{1} << 8, 1};  // mu_1 components (9, 1)
    const McEstimate deep = mc_dual_prob(RngSeed{0xACCE000A}.child("deep", 0), k_deep, b2, m, 2,
                                         DesignKind::lms_sobol, 100000);
    const double target = std::pow(2.0, -m);
    const double sigma = std::sqrt(target * (1.0 - target) / 100000.0);
    c.expect(std::abs(deep.estimate - target) < 4.0 * sigma,
             "deep-regime estimate " + fmt(deep.estimate) + " vs " + fmt(target));
    c.detail = "t_u=" + std::to_string(t_u) + ", deep estimate " + fmt(deep.estimate);
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_seconds;  // 0 = no stated budget
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria{
        {"1 oracle-equivalence (gray vs naive, bit-exact)", 10.0, criterion_oracle_equivalence},
        {"2 marginal dual probability b^-m", 60.0, criterion_marginal_probability},
        {"3 joint probabilities and union bounds", 0.0, criterion_joint_probability},
        {"4 variance identity Var(f)/N", 60.0, criterion_variance_identity},
        {"5 omega closed forms vs series", 0.0, criterion_omega_forms},
        {"6 t-parameter tail and sobol t=0", 0.0, criterion_t_parameter},
        {"7 best-of-15 WCE: HRD < URD in >= 80%", 0.0, criterion_greedy_hrd_vs_urd},
        {"8 median-of-means convergence (slope <= -3)", 900.0, criterion_mom_convergence},
        {"9 WCE scaling slope in [-2.4, -1.5]", 0.0, criterion_wce_scaling},
        {"10 LMS inclusion-probability regimes on sobol dims 1-2", 0.0, criterion_lms_probability},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Check result;
        try {
            result = criterion.run();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (criterion.budget_seconds > 0.0 && seconds > criterion.budget_seconds) {
            result.ok = false;
            result.detail += (result.detail.empty() ? "" : "; ") + std::string("over budget: ") +
                             fmt(seconds) + "s > " + fmt(criterion.budget_seconds) + "s";
        }
        std::printf("[%s] %s (%.1fs)%s%s\n", result.ok ? "PASS" : "FAIL", criterion.name, seconds,
                    result.detail.empty() ? "" : " -- ", result.detail.c_str());
        std::fflush(stdout);
        if (!result.ok) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
