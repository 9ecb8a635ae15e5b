#include "hankelnet/pointgen.hpp"

#include <stdexcept>

namespace hankelnet {

GrayStepper::GrayStepper(PrimeBase b, int m)
    : b_(b.value()), word_(static_cast<std::size_t>(m), 0), dir_(static_cast<std::size_t>(m), 1) {
    if (m < 0) throw std::invalid_argument("gray_steps: m must be >= 0");
    remaining_ = 1;
    for (int i = 0; i < m; ++i) remaining_ *= static_cast<std::uint64_t>(b_);
    remaining_ -= 1;
}

GrayStep GrayStepper::next() {
    for (std::size_t t = 0; t < word_.size(); ++t) {
        const int moved = word_[t] + dir_[t];
        if (moved >= 0 && moved < b_) {
            const int inc = dir_[t];
            word_[t] = static_cast<digit_t>(moved);
            for (std::size_t j = 0; j < t; ++j) dir_[j] = -dir_[j];
            --remaining_;
            return {static_cast<int>(t), inc};
        }
    }
    throw std::logic_error("gray stepper exhausted");
}

std::vector<GrayStep> gray_steps(PrimeBase b, int m) {
    GrayStepper stepper(b, m);
    std::vector<GrayStep> steps;
    while (!stepper.done()) steps.push_back(stepper.next());
    return steps;
}

namespace {

// Per-dimension state of the Gray generator for odd bases: the exact digit
// vector plus its integer value V = sum_i d_i b^(E-1-i), so the float
// coordinate V / b^E never drifts. A +-column step is carried as one
// addition vector a with entries in [0, b] (b - c for the minus direction;
// a zero column entry maps to b, which wraps back to the same digit), so
// V' = V + <a, w> - b * (sum of weights at wrapped digits).
struct DimState {
    std::vector<digit_t> digits;          // length E
    std::uint64_t value = 0;
    std::vector<digit_t> add;             // [2t + dir] * E: c_i forward, b - c_i backward
    std::vector<std::uint64_t> weighted;  // [2t + dir]: <add, w>
    const std::uint64_t* weights = nullptr;

    void apply_column(int t, int inc, unsigned b) {
        const std::size_t slot = 2 * static_cast<std::size_t>(t) + (inc > 0 ? 0 : 1);
        const std::size_t E = digits.size();
        const digit_t* a = add.data() + slot * E;
        std::uint64_t wrapped = 0;
        for (std::size_t i = 0; i < E; ++i) {
            unsigned nd = static_cast<unsigned>(digits[i]) + a[i];
            const std::uint64_t wrap = nd >= b ? ~std::uint64_t{0} : 0;
            nd -= b & static_cast<unsigned>(wrap);
            wrapped += weights[i] & wrap;
            digits[i] = static_cast<digit_t>(nd);
        }
        value = value + weighted[slot] - static_cast<std::uint64_t>(b) * wrapped;
    }
};

// Packed state for base 2: digit vectors live in one word per dimension and
// a +-column update is a single XOR.
struct PackedState {
    std::uint64_t value = 0;
    std::vector<std::uint64_t> col_mask;  // per column, bit E-1-i holds row i
};

std::uint64_t pack_digits(std::span<const digit_t> digits) {
    std::uint64_t v = 0;
    for (digit_t d : digits) v = (v << 1) | d;
    return v;
}

template <class F>
void scan_gray_impl(const NetDesign& design, F&& emit) {
    design.validate();
    const unsigned b = static_cast<unsigned>(design.base.value());
    const int E = design.precision;
    const int s = design.s;
    const double denom = [&] {
        double d = 1.0;
        for (int i = 0; i < E; ++i) d *= b;
        return d;
    }();
    std::vector<double> x(static_cast<std::size_t>(s));

    if (b == 2) {
        std::vector<PackedState> dims(static_cast<std::size_t>(s));
        for (int j = 0; j < s; ++j) {
            auto& st = dims[static_cast<std::size_t>(j)];
            if (design.has_shift()) st.value = pack_digits(design.shifts[static_cast<std::size_t>(j)]);
            st.col_mask.resize(static_cast<std::size_t>(design.m));
            const auto& C = design.matrices[static_cast<std::size_t>(j)];
            for (int t = 0; t < design.m; ++t) {
                std::uint64_t mask = 0;
                for (int i = 0; i < E; ++i) mask = (mask << 1) | C.at(i, t);
                st.col_mask[static_cast<std::size_t>(t)] = mask;
            }
        }
        std::uint64_t n = 0;
        for (int j = 0; j < s; ++j) x[j] = static_cast<double>(dims[j].value) / denom;
        emit(n++, std::span<const double>(x));
        GrayStepper stepper(design.base, design.m);
        while (!stepper.done()) {
            const GrayStep step = stepper.next();
            for (int j = 0; j < s; ++j) {
                dims[j].value ^= dims[j].col_mask[static_cast<std::size_t>(step.digit)];
                x[j] = static_cast<double>(dims[j].value) / denom;
            }
            emit(n++, std::span<const double>(x));
        }
        return;
    }

    std::vector<std::uint64_t> weights(static_cast<std::size_t>(E));
    std::uint64_t w = 1;
    for (int i = E - 1; i >= 0; --i) {
        weights[static_cast<std::size_t>(i)] = w;
        w *= b;
    }
    std::vector<DimState> dims(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) {
        auto& st = dims[static_cast<std::size_t>(j)];
        st.weights = weights.data();
        st.digits.assign(static_cast<std::size_t>(E), 0);
        if (design.has_shift()) {
            st.digits = design.shifts[static_cast<std::size_t>(j)];
            for (int i = 0; i < E; ++i) st.value += st.digits[i] * weights[i];
        }
        const auto& C = design.matrices[static_cast<std::size_t>(j)];
        st.add.resize(2 * static_cast<std::size_t>(design.m) * static_cast<std::size_t>(E));
        st.weighted.resize(2 * static_cast<std::size_t>(design.m));
        for (int t = 0; t < design.m; ++t) {
            digit_t* fwd = st.add.data() + (2 * static_cast<std::size_t>(t)) * E;
            digit_t* bwd = fwd + E;
            std::uint64_t wf = 0, wb = 0;
            for (int i = 0; i < E; ++i) {
                const unsigned c = C.at(i, t);
                fwd[i] = static_cast<digit_t>(c);
                bwd[i] = static_cast<digit_t>(b - c);
                wf += c * weights[static_cast<std::size_t>(i)];
                wb += (b - c) * weights[static_cast<std::size_t>(i)];
            }
            st.weighted[2 * static_cast<std::size_t>(t)] = wf;
            st.weighted[2 * static_cast<std::size_t>(t) + 1] = wb;
        }
    }
    std::uint64_t n = 0;
    for (int j = 0; j < s; ++j) x[j] = static_cast<double>(dims[j].value) / denom;
    emit(n++, std::span<const double>(x));
    GrayStepper stepper(design.base, design.m);
    while (!stepper.done()) {
        const GrayStep step = stepper.next();
        for (int j = 0; j < s; ++j) {
            dims[j].apply_column(step.digit, step.inc, b);
            x[j] = static_cast<double>(dims[j].value) / denom;
        }
        emit(n++, std::span<const double>(x));
    }
}

}  // namespace

PointSet gen_points_gray(const NetDesign& design) {
    PointSet ps;
    ps.n_points = design.n_points();
    ps.s = design.s;
    ps.coords.resize(ps.n_points * static_cast<std::uint64_t>(design.s));
    scan_gray_impl(design, [&](std::uint64_t n, std::span<const double> x) {
        std::copy(x.begin(), x.end(), ps.coords.begin() + static_cast<std::ptrdiff_t>(n * x.size()));
    });
    return ps;
}

void scan_points_gray(const NetDesign& design,
                      const std::function<void(std::uint64_t, std::span<const double>)>& f) {
    scan_gray_impl(design, f);
}

namespace {

// Shared by both accumulator widths of the oracle below. Columns are stored
// pre-widened to the accumulator type so the multiply-add loop stays a plain
// same-width vectorizable scan, and the digital shift folds into the mod
// table lookup (y_i = (acc_i + shift_i) mod b).
template <class Acc>
void naive_points(const NetDesign& design, PointSet& ps) {
    const unsigned b = static_cast<unsigned>(design.base.value());
    const int E = design.precision;
    const int m = design.m;
    const std::uint64_t N = design.n_points();
    double denom = 1.0;
    for (int i = 0; i < E; ++i) denom *= b;

    const unsigned acc_max = static_cast<unsigned>(m) * (b - 1) * (b - 1);
    std::vector<digit_t> mod_table(acc_max + b + 1);
    for (unsigned v = 0; v < mod_table.size(); ++v) mod_table[v] = static_cast<digit_t>(v % b);

    std::vector<std::vector<Acc>> columns(static_cast<std::size_t>(design.s));
    for (int j = 0; j < design.s; ++j) {
        auto& cols = columns[static_cast<std::size_t>(j)];
        cols.resize(static_cast<std::size_t>(E) * static_cast<std::size_t>(m));
        const auto& C = design.matrices[static_cast<std::size_t>(j)];
        for (int r = 0; r < m; ++r)
            for (int i = 0; i < E; ++i)
                cols[static_cast<std::size_t>(r) * E + i] = C.at(i, r);
    }
    std::vector<std::uint64_t> weights(static_cast<std::size_t>(E));
    std::uint64_t w = 1;
    for (int i = E - 1; i >= 0; --i) {
        weights[static_cast<std::size_t>(i)] = w;
        w *= b;
    }
    const std::vector<digit_t> zero_shift(static_cast<std::size_t>(E), 0);

    std::vector<digit_t> ndigits(static_cast<std::size_t>(m), 0);  // base-b counter, n_0 first
    std::vector<Acc> acc(static_cast<std::size_t>(E));
    Acc* const accp = acc.data();
    for (std::uint64_t n = 0; n < N; ++n) {
        for (int j = 0; j < design.s; ++j) {
            const auto& cols = columns[static_cast<std::size_t>(j)];
            std::fill(acc.begin(), acc.end(), Acc{0});
            for (int r = 0; r < m; ++r) {
                const Acc nr = ndigits[static_cast<std::size_t>(r)];
                const Acc* col = cols.data() + static_cast<std::size_t>(r) * E;
                for (int i = 0; i < E; ++i) accp[i] = static_cast<Acc>(accp[i] + nr * col[i]);
            }
            const digit_t* shift = design.has_shift()
                                       ? design.shifts[static_cast<std::size_t>(j)].data()
                                       : zero_shift.data();
            std::uint64_t value = 0;
            for (int i = 0; i < E; ++i)
                value += mod_table[accp[i] + shift[i]] * weights[static_cast<std::size_t>(i)];
            ps.coords[n * static_cast<std::uint64_t>(design.s) + static_cast<std::uint64_t>(j)] =
                static_cast<double>(value) / denom;
        }
        for (int r = 0; r < m; ++r) {  // increment the base-b counter
            if (static_cast<unsigned>(++ndigits[static_cast<std::size_t>(r)]) < b) break;
            ndigits[static_cast<std::size_t>(r)] = 0;
        }
    }
}

}  // namespace

PointSet gen_points_naive(const NetDesign& design) {
    design.validate();
    PointSet ps;
    ps.n_points = design.n_points();
    ps.s = design.s;
    ps.coords.resize(ps.n_points * static_cast<std::uint64_t>(design.s));
    const unsigned b = static_cast<unsigned>(design.base.value());
    const unsigned acc_max = static_cast<unsigned>(design.m) * (b - 1) * (b - 1);
    if (acc_max + b <= 65535) naive_points<std::uint16_t>(design, ps);
    else naive_points<std::uint32_t>(design, ps);
    return ps;
}

}  // namespace hankelnet
