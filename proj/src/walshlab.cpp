#include "hankelnet/walshlab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace hankelnet {

namespace {

constexpr int kMaxExactDigits = 32;  // digit support cap for the exact probability maps

int digit_length(std::uint64_t k, int b) {
    int n = 0;
    while (k != 0) {
        k /= static_cast<std::uint64_t>(b);
        ++n;
    }
    return n;
}

std::uint64_t pow_u64(std::uint64_t base, int e) {
    std::uint64_t p = 1;
    for (int i = 0; i < e; ++i) p *= base;
    return p;
}

std::complex<double> unit_root(int numerator, int b) {
    numerator %= b;
    if (numerator == 0) return {1.0, 0.0};
    if (b % 2 == 0 && numerator == b / 2) return {-1.0, 0.0};
    const double angle = 2.0 * std::numbers::pi * numerator / b;
    return {std::cos(angle), std::sin(angle)};
}

// Digits of x on the nearest b^-E grid point, most significant first.
std::vector<digit_t> coordinate_digits(double x, int b, int precision) {
    if (x < 0.0 || x >= 1.0) throw std::invalid_argument("coordinate must lie in [0, 1)");
    long double scaled = static_cast<long double>(x);
    for (int i = 0; i < precision; ++i) scaled *= b;
    std::uint64_t v = static_cast<std::uint64_t>(llroundl(scaled));
    const std::uint64_t limit = pow_u64(static_cast<std::uint64_t>(b), precision);
    if (v >= limit) v = limit - 1;
    std::vector<digit_t> digits(static_cast<std::size_t>(precision));
    for (int i = precision - 1; i >= 0; --i) {
        digits[static_cast<std::size_t>(i)] = static_cast<digit_t>(v % static_cast<std::uint64_t>(b));
        v /= static_cast<std::uint64_t>(b);
    }
    return digits;
}

int walsh_exponent(std::uint64_t k, std::span<const digit_t> xdigits, int b) {
    int e = 0;
    int pos = 1;
    while (k != 0) {
        const int kd = static_cast<int>(k % static_cast<std::uint64_t>(b));
        if (kd != 0 && pos <= static_cast<int>(xdigits.size()))
            e = (e + kd * xdigits[static_cast<std::size_t>(pos - 1)]) % b;
        k /= static_cast<std::uint64_t>(b);
        ++pos;
    }
    return e;
}

}  // namespace

std::vector<int> kappa(std::uint64_t k, PrimeBase b) {
    std::vector<int> positions;
    int pos = 1;
    while (k != 0) {
        if (k % static_cast<std::uint64_t>(b.value()) != 0) positions.push_back(pos);
        k /= static_cast<std::uint64_t>(b.value());
        ++pos;
    }
    return positions;
}

int mu_alpha(std::uint64_t k, int alpha, PrimeBase b) {
    if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");
    const auto positions = kappa(k, b);
    int sum = 0;
    const int n = static_cast<int>(positions.size());
    for (int i = 0; i < alpha && i < n; ++i) sum += positions[static_cast<std::size_t>(n - 1 - i)];
    return sum;
}

long mu_alpha(std::span<const std::uint64_t> k, int alpha, PrimeBase b) {
    long sum = 0;
    for (std::uint64_t kj : k) sum += mu_alpha(kj, alpha, b);
    return sum;
}

std::complex<double> walsh(std::uint64_t k, double x, PrimeBase b, int precision) {
    const auto xd = coordinate_digits(x, b.value(), precision);
    return unit_root(walsh_exponent(k, xd, b.value()), b.value());
}

std::complex<double> walsh(std::uint64_t k, double x, PrimeBase b) {
    return walsh(k, x, b, default_precision(b));
}

std::complex<double> walsh(std::span<const std::uint64_t> k, std::span<const double> x,
                           PrimeBase b, int precision) {
    if (k.size() != x.size()) throw std::invalid_argument("walsh: dimension mismatch");
    int e = 0;
    for (std::size_t j = 0; j < k.size(); ++j) {
        const auto xd = coordinate_digits(x[j], b.value(), precision);
        e = (e + walsh_exponent(k[j], xd, b.value())) % b.value();
    }
    return unit_root(e, b.value());
}

bool dual_contains(const NetDesign& design, std::span<const std::uint64_t> k) {
    if (static_cast<int>(k.size()) != design.s)
        throw std::invalid_argument("dual_contains: k must have one component per dimension");
    bool any_nonzero = false;
    for (std::uint64_t kj : k) any_nonzero |= (kj != 0);
    if (!any_nonzero) throw std::invalid_argument("dual_contains: k must be nonzero");

    const int b = design.base.value();
    std::vector<int> acc(static_cast<std::size_t>(design.m), 0);
    for (int j = 0; j < design.s; ++j) {
        std::uint64_t kj = k[static_cast<std::size_t>(j)];
        if (digit_length(kj, b) > design.precision)
            throw std::invalid_argument("precision exceeded: k digits extend beyond E positions");
        const auto& C = design.matrices[static_cast<std::size_t>(j)];
        int pos = 1;
        while (kj != 0) {
            const int kd = static_cast<int>(kj % static_cast<std::uint64_t>(b));
            if (kd != 0) {
                const auto row = C.row(pos - 1);
                for (int r = 0; r < design.m; ++r)
                    acc[static_cast<std::size_t>(r)] =
                        (acc[static_cast<std::size_t>(r)] + kd * row[static_cast<std::size_t>(r)]) % b;
            }
            kj /= static_cast<std::uint64_t>(b);
            ++pos;
        }
    }
    return std::all_of(acc.begin(), acc.end(), [](int v) { return v == 0; });
}

namespace {

// Number of compositions of w into parts parts, capped to avoid overflow.
double composition_count(int w, int parts) {
    double c = 1.0;
    for (int i = 1; i < parts; ++i) c = c * (w + i) / i;
    return c;
}

// True iff every stacked prefix C_q with |q|_1 = w over the given matrices
// has full row rank. Shared prefixes of the composition scan reuse the
// incremental echelon state.
bool all_prefix_stacks_full_rank(const std::vector<const GfMatrix*>& mats, int w, PrimeBase base,
                                 int m) {
    if (w == 0) return true;
    EchelonStack stack(base, m);
    bool ok = true;
    const int dims = static_cast<int>(mats.size());
    std::function<void(int, int)> recurse = [&](int dim, int remaining) {
        if (!ok) return;
        if (dim == dims - 1) {
            int pushed = 0;
            for (int i = 0; i < remaining; ++i) {
                if (!stack.push(mats[static_cast<std::size_t>(dim)]->row(i))) {
                    ok = false;
                    break;
                }
                ++pushed;
            }
            while (pushed-- > 0) stack.pop();
            return;
        }
        recurse(dim + 1, remaining);
        int pushed = 0;
        for (int q = 1; q <= remaining && ok; ++q) {
            if (!stack.push(mats[static_cast<std::size_t>(dim)]->row(q - 1))) {
                ok = false;
                break;
            }
            ++pushed;
            recurse(dim + 1, remaining - q);
        }
        while (pushed-- > 0) stack.pop();
    };
    recurse(0, w);
    return ok;
}

int t_parameter_impl(const NetDesign& design, const std::vector<const GfMatrix*>& mats) {
    const int m = design.m;
    const int parts = static_cast<int>(mats.size());
    if (composition_count(m, parts) > 1e6)
        throw std::invalid_argument("t_parameter: composition enumeration guard exceeded");
    for (int t = 0; t <= m; ++t) {
        if (all_prefix_stacks_full_rank(mats, m - t, design.base, m)) return t;
    }
    throw std::logic_error("t_parameter: unreachable");
}

}  // namespace

int t_parameter(const NetDesign& design) {
    design.validate();
    std::vector<const GfMatrix*> mats;
    for (const auto& C : design.matrices) mats.push_back(&C);
    return t_parameter_impl(design, mats);
}

int t_u_parameter(const NetDesign& design, std::span<const int> u) {
    design.validate();
    if (u.empty()) throw std::invalid_argument("t_u_parameter: u must be non-empty");
    std::vector<const GfMatrix*> mats;
    for (int j : u) {
        if (j < 0 || j >= design.s) throw std::invalid_argument("t_u_parameter: index out of range");
        mats.push_back(&design.matrices[static_cast<std::size_t>(j)]);
    }
    return t_parameter_impl(design, mats);
}

int dual_map_rank(std::span<const std::vector<std::uint64_t>> ks, PrimeBase b, int m,
                  DesignKind kind) {
    if (kind == DesignKind::lms_sobol)
        throw std::invalid_argument("dual_map_rank: exact maps cover hrd and urd only");
    if (ks.empty()) throw std::invalid_argument("dual_map_rank: need at least one k vector");
    const std::size_t s = ks.front().size();
    for (const auto& k : ks) {
        if (k.size() != s) throw std::invalid_argument("dual_map_rank: inconsistent dimensions");
        if (std::all_of(k.begin(), k.end(), [](std::uint64_t v) { return v == 0; }))
            throw std::invalid_argument("dual_map_rank: k vectors must be nonzero");
    }
    const int p = b.value();
    const int n_out = m * static_cast<int>(ks.size());

    // Digit tables: digits[t][j][i-1] = i-th base-b digit of ks[t][j].
    std::vector<std::vector<std::vector<digit_t>>> digits(ks.size());
    std::vector<int> nj(s, 0);
    for (std::size_t t = 0; t < ks.size(); ++t) {
        digits[t].resize(s);
        for (std::size_t j = 0; j < s; ++j) {
            std::uint64_t kj = ks[t][j];
            const int len = digit_length(kj, p);
            if (len > kMaxExactDigits)
                throw std::invalid_argument("dual_map_rank: digit support exceeds the configured cap");
            nj[j] = std::max(nj[j], len);
            auto& d = digits[t][j];
            d.resize(static_cast<std::size_t>(len));
            for (int i = 0; i < len; ++i) {
                d[static_cast<std::size_t>(i)] = static_cast<digit_t>(kj % static_cast<std::uint64_t>(p));
                kj /= static_cast<std::uint64_t>(p);
            }
        }
    }

    // Columns of the map, one per random digit variable.
    std::vector<std::vector<digit_t>> cols;
    auto digit_at = [&](std::size_t t, std::size_t j, int i) -> int {
        const auto& d = digits[t][j];
        return (i >= 1 && i <= static_cast<int>(d.size())) ? d[static_cast<std::size_t>(i - 1)] : 0;
    };
    for (std::size_t j = 0; j < s; ++j) {
        if (nj[j] == 0) continue;
        if (kind == DesignKind::hrd) {
            // Hankel seed variables u_1 .. u_{m + n - 1}; variable u_c feeds
            // output (t, r) with coefficient k_t[c - r + 1].
            for (int c = 1; c <= m + nj[j] - 1; ++c) {
                std::vector<digit_t> col(static_cast<std::size_t>(n_out), 0);
                for (std::size_t t = 0; t < ks.size(); ++t)
                    for (int r = 1; r <= m; ++r)
                        col[t * static_cast<std::size_t>(m) + static_cast<std::size_t>(r - 1)] =
                            static_cast<digit_t>(digit_at(t, j, c - r + 1));
                cols.push_back(std::move(col));
            }
        } else {
            // URD variables are the matrix entries C[i][r] themselves.
            for (int i = 1; i <= nj[j]; ++i)
                for (int r = 1; r <= m; ++r) {
                    std::vector<digit_t> col(static_cast<std::size_t>(n_out), 0);
                    for (std::size_t t = 0; t < ks.size(); ++t)
                        col[t * static_cast<std::size_t>(m) + static_cast<std::size_t>(r - 1)] =
                            static_cast<digit_t>(digit_at(t, j, i));
                    cols.push_back(std::move(col));
                }
        }
    }

    GfMatrix A(b, n_out, static_cast<int>(cols.size()));
    for (int c = 0; c < static_cast<int>(cols.size()); ++c)
        for (int r = 0; r < n_out; ++r) A.at(r, c) = cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    return rank(A);
}

double joint_dual_prob_exact(std::span<const std::uint64_t> k1,
                             std::span<const std::uint64_t> k2, PrimeBase b, int m,
                             DesignKind kind) {
    std::vector<std::vector<std::uint64_t>> ks = {
        std::vector<std::uint64_t>(k1.begin(), k1.end()),
        std::vector<std::uint64_t>(k2.begin(), k2.end())};
    if (ks[0] == ks[1]) throw std::invalid_argument("joint_dual_prob_exact: k1 and k2 must differ");
    const int r = dual_map_rank(ks, b, m, kind);
    return std::pow(static_cast<double>(b.value()), -r);
}

double marginal_dual_prob_exact(std::span<const std::uint64_t> k, PrimeBase b, int m,
                                DesignKind kind) {
    std::vector<std::vector<std::uint64_t>> ks = {std::vector<std::uint64_t>(k.begin(), k.end())};
    const int r = dual_map_rank(ks, b, m, kind);
    return std::pow(static_cast<double>(b.value()), -r);
}

double chung_erdos_lower(std::span<const double> singles,
                         const std::vector<std::vector<double>>& pairs) {
    const std::size_t n = singles.size();
    if (pairs.size() != n) throw std::invalid_argument("chung_erdos_lower: shape mismatch");
    double sum_singles = 0.0;
    for (double p : singles) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability out of [0, 1]");
        sum_singles += p;
    }
    double sum_pairs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (pairs[i].size() != n) throw std::invalid_argument("chung_erdos_lower: shape mismatch");
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) sum_pairs += pairs[i][j];
    }
    const double denom = sum_singles + sum_pairs;
    if (denom == 0.0) return 0.0;
    return sum_singles * sum_singles / denom;
}

double hunter_upper(std::span<const double> singles,
                    const std::vector<std::vector<double>>& pairs) {
    const std::size_t n = singles.size();
    if (n == 0) throw std::invalid_argument("hunter_upper: need at least one event");
    if (pairs.size() != n) throw std::invalid_argument("hunter_upper: shape mismatch");
    double sum_singles = std::accumulate(singles.begin(), singles.end(), 0.0);
    if (n == 1) return sum_singles;

    // Maximum spanning tree by Kruskal on edges sorted descending.
    struct Edge {
        double w;
        int i, j;
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            edges.push_back({pairs[i][j], static_cast<int>(i), static_cast<int>(j)});
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.w > b.w; });
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); };
    double tree = 0.0;
    int used = 0;
    for (const auto& e : edges) {
        const int a = find(e.i), c = find(e.j);
        if (a == c) continue;
        parent[static_cast<std::size_t>(a)] = c;
        tree += e.w;
        if (++used == static_cast<int>(n) - 1) break;
    }
    return sum_singles - tree;
}

namespace {

int probe_precision(std::span<const std::vector<std::uint64_t>> ks, PrimeBase b, int m) {
    // Dual membership only reads matrix rows inside the digit support of k,
    // so the probe can draw designs with just enough rows.
    int max_pos = 0;
    for (const auto& k : ks)
        for (std::uint64_t kj : k) max_pos = std::max(max_pos, digit_length(kj, b.value()));
    return std::max({m, max_pos, 1});
}

McEstimate mc_union_impl(RngSeed seed, std::span<const std::vector<std::uint64_t>> ks,
                         PrimeBase b, int m, int s, DesignKind kind, std::uint64_t trials) {
    if (trials < 1) throw std::invalid_argument("mc_dual_prob: trials must be >= 1");
    const int precision = probe_precision(ks, b, m);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const NetDesign d = draw_design(kind, seed.child("trial", t), b, precision, m, s, false);
        for (const auto& k : ks) {
            if (dual_contains(d, k)) {
                ++hits;
                break;
            }
        }
    }
    McEstimate est;
    est.trials = trials;
    est.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    est.stderr_ = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(trials));
    return est;
}

}  // namespace

McEstimate mc_dual_prob(RngSeed seed, std::span<const std::uint64_t> k, PrimeBase b, int m,
                        int s, DesignKind kind, std::uint64_t trials) {
    std::vector<std::vector<std::uint64_t>> ks = {std::vector<std::uint64_t>(k.begin(), k.end())};
    return mc_union_impl(seed, ks, b, m, s, kind, trials);
}

McEstimate mc_dual_union_prob(RngSeed seed, std::span<const std::vector<std::uint64_t>> ks,
                              PrimeBase b, int m, int s, DesignKind kind, std::uint64_t trials) {
    return mc_union_impl(seed, ks, b, m, s, kind, trials);
}

double lms_dual_prob_bound(std::span<const int> mu1_values, int m, PrimeBase b, int t_u,
                           int u_size) {
    if (t_u < 0) throw std::invalid_argument("lms_dual_prob_bound: t_u must be >= 0");
    if (u_size < 1 || static_cast<int>(mu1_values.size()) != u_size)
        throw std::invalid_argument("lms_dual_prob_bound: need one mu_1 value per coordinate of u");
    long sum = 0;
    int mx = 0;
    for (int v : mu1_values) {
        sum += v;
        mx = std::max(mx, v);
    }
    const double base = static_cast<double>(b.value());
    if (sum <= m - t_u) return 0.0;
    if (mx > m) return std::pow(base, -m);
    if (sum <= m - t_u + u_size) {
        const double v = std::pow(base, -m + t_u + u_size - 1) / std::pow(base - 1.0, u_size - 1);
        return std::min(v, 1.0);
    }
    return std::pow(base, -m + t_u);
}

}  // namespace hankelnet
