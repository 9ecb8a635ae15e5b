#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Arithmetic and small dense linear algebra over the prime field F_b.
// Digits are stored as 8-bit values; with b <= 31 every product fits in 16 bits.

namespace hankelnet {

using digit_t = std::uint8_t;

class PrimeBase {
public:
    explicit PrimeBase(int b);

    int value() const { return b_; }

    friend bool operator==(PrimeBase a, PrimeBase b) { return a.b_ == b.b_; }
    friend bool operator!=(PrimeBase a, PrimeBase b) { return a.b_ != b.b_; }

private:
    int b_;
};

/// Multiplicative inverse of a in F_b, computed by Fermat exponentiation.
/// Throws for a == 0.
digit_t gf_inv(PrimeBase b, digit_t a);

digit_t gf_add(PrimeBase b, digit_t x, digit_t y);
digit_t gf_sub(PrimeBase b, digit_t x, digit_t y);
digit_t gf_mul(PrimeBase b, digit_t x, digit_t y);

// Dense row-major matrix over F_b.
class GfMatrix {
public:
    GfMatrix(PrimeBase base, int rows, int cols);
    GfMatrix(PrimeBase base, int rows, int cols, std::vector<digit_t> entries);

    static GfMatrix identity(PrimeBase base, int n);

    PrimeBase base() const { return base_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    digit_t at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    digit_t& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    std::span<const digit_t> row(int r) const {
        return {a_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
    }

    std::span<const digit_t> entries() const { return a_; }

    friend bool operator==(const GfMatrix& x, const GfMatrix& y) {
        return x.base_ == y.base_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

private:
    PrimeBase base_;
    int rows_;
    int cols_;
    std::vector<digit_t> a_;
};

/// w = C v over F_b. Throws on dimension mismatch.
std::vector<digit_t> mat_vec(const GfMatrix& C, std::span<const digit_t> v);

/// A B over F_b. Throws on dimension mismatch.
GfMatrix mat_mul(const GfMatrix& A, const GfMatrix& B);

/// Rank over F_b by fraction-free Gauss elimination with first-nonzero pivots.
int rank(const GfMatrix& M);

// Incremental row-echelon basis over F_b; rows can be pushed and popped in
// stack order. Used for the composition scans in the t-parameter search.
class EchelonStack {
public:
    EchelonStack(PrimeBase base, int width);

    /// Tries to add a row to the basis. Returns false (and leaves the basis
    /// unchanged) when the row is linearly dependent on the current basis.
    bool push(std::span<const digit_t> row);
    void pop();

    int size() const { return static_cast<int>(pivot_cols_.size()); }

private:
    PrimeBase base_;
    int width_;
    std::vector<std::vector<digit_t>> basis_;
    std::vector<int> pivot_cols_;
};

}  // namespace hankelnet
