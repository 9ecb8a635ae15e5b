#include "hankelnet/gf.hpp"

#include <stdexcept>
#include <string>

namespace hankelnet {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

PrimeBase::PrimeBase(int b) : b_(b) {
    if (b < 2 || b > 31 || !is_prime(b))
        throw std::invalid_argument("base must be a prime in [2, 31], got " + std::to_string(b));
}

digit_t gf_inv(PrimeBase b, digit_t a) {
    if (a == 0) throw std::invalid_argument("no inverse of zero");
    const int p = b.value();
    // a^(p-2) mod p
    int result = 1;
    int x = a % p;
    int e = p - 2;
    while (e > 0) {
        if (e & 1) result = result * x % p;
        x = x * x % p;
        e >>= 1;
    }
    return static_cast<digit_t>(result);
}

digit_t gf_add(PrimeBase b, digit_t x, digit_t y) {
    int s = x + y;
    if (s >= b.value()) s -= b.value();
    return static_cast<digit_t>(s);
}

digit_t gf_sub(PrimeBase b, digit_t x, digit_t y) {
    int s = x - y;
    if (s < 0) s += b.value();
    return static_cast<digit_t>(s);
}

digit_t gf_mul(PrimeBase b, digit_t x, digit_t y) {
    return static_cast<digit_t>(x * y % b.value());
}

GfMatrix::GfMatrix(PrimeBase base, int rows, int cols)
    : base_(base), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

GfMatrix::GfMatrix(PrimeBase base, int rows, int cols, std::vector<digit_t> entries)
    : base_(base), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    if (a_.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("entry count does not match matrix shape");
    for (digit_t e : a_)
        if (e >= base.value()) throw std::invalid_argument("matrix entry out of field range");
}

GfMatrix GfMatrix::identity(PrimeBase base, int n) {
    GfMatrix I(base, n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

std::vector<digit_t> mat_vec(const GfMatrix& C, std::span<const digit_t> v) {
    if (static_cast<int>(v.size()) != C.cols())
        throw std::invalid_argument("mat_vec: vector length does not match column count");
    const int p = C.base().value();
    for (digit_t d : v)
        if (d >= p) throw std::invalid_argument("mat_vec: vector entry out of field range");
    std::vector<digit_t> w(static_cast<std::size_t>(C.rows()));
    for (int i = 0; i < C.rows(); ++i) {
        unsigned acc = 0;
        const auto row = C.row(i);
        for (int r = 0; r < C.cols(); ++r) acc += static_cast<unsigned>(row[r]) * v[r];
        w[i] = static_cast<digit_t>(acc % p);
    }
    return w;
}

GfMatrix mat_mul(const GfMatrix& A, const GfMatrix& B) {
    if (A.base() != B.base()) throw std::invalid_argument("mat_mul: base mismatch");
    if (A.cols() != B.rows()) throw std::invalid_argument("mat_mul: inner dimension mismatch");
    const int p = A.base().value();
    GfMatrix R(A.base(), A.rows(), B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int k = 0; k < A.cols(); ++k) {
            const unsigned aik = A.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < B.cols(); ++j)
                R.at(i, j) = static_cast<digit_t>((R.at(i, j) + aik * B.at(k, j)) % p);
        }
    return R;
}

int rank(const GfMatrix& M) {
    const int p = M.base().value();
    std::vector<std::vector<digit_t>> rows;
    rows.reserve(static_cast<std::size_t>(M.rows()));
    for (int i = 0; i < M.rows(); ++i)
        rows.emplace_back(M.row(i).begin(), M.row(i).end());

    int r = 0;
    for (int c = 0; c < M.cols() && r < M.rows(); ++c) {
        int pivot = -1;
        for (int i = r; i < M.rows(); ++i)
            if (rows[i][c] != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(rows[r], rows[pivot]);
        const digit_t inv = gf_inv(M.base(), rows[r][c]);
        for (int j = c; j < M.cols(); ++j)
            rows[r][j] = static_cast<digit_t>(rows[r][j] * inv % p);
        for (int i = r + 1; i < M.rows(); ++i) {
            const int f = rows[i][c];
            if (f == 0) continue;
            for (int j = c; j < M.cols(); ++j)
                rows[i][j] = static_cast<digit_t>((rows[i][j] + (p - f) * rows[r][j]) % p);
        }
        ++r;
    }
    return r;
}

EchelonStack::EchelonStack(PrimeBase base, int width) : base_(base), width_(width) {}

bool EchelonStack::push(std::span<const digit_t> row) {
    if (static_cast<int>(row.size()) != width_)
        throw std::invalid_argument("echelon push: row width mismatch");
    const int p = base_.value();
    std::vector<digit_t> v(row.begin(), row.end());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const int c = pivot_cols_[i];
        const int f = v[c];
        if (f == 0) continue;
        const auto& bi = basis_[i];
        for (int j = c; j < width_; ++j)
            v[j] = static_cast<digit_t>((v[j] + (p - f) * bi[j]) % p);
    }
    int lead = -1;
    for (int j = 0; j < width_; ++j)
        if (v[j] != 0) { lead = j; break; }
    if (lead < 0) return false;
    const digit_t inv = gf_inv(base_, v[lead]);
    for (int j = lead; j < width_; ++j)
        v[j] = static_cast<digit_t>(v[j] * inv % p);
    basis_.push_back(std::move(v));
    pivot_cols_.push_back(lead);
    return true;
}

void EchelonStack::pop() {
    basis_.pop_back();
    pivot_cols_.pop_back();
}

}  // namespace hankelnet
