#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hankelnet/gf.hpp"
#include "hankelnet/rng.hpp"

// Randomized generating-matrix designs: Hankel random designs (HRD), uniform
// random designs (URD), and linear matrix scrambling of Sobol' matrices.

namespace hankelnet {

enum class DesignKind { hrd, urd, lms_sobol };

std::string_view design_kind_name(DesignKind kind);
DesignKind parse_design_kind(std::string_view name);

/// Largest E with b^E <= 2^53, so coordinates stay exactly representable
/// as 64-bit floats (E = 53 for b = 2).
int default_precision(PrimeBase b);

struct NetDesign {
    PrimeBase base{2};
    int m = 0;          // N = b^m points
    int s = 0;          // dimension
    int precision = 0;  // E, matrix row count
    std::vector<GfMatrix> matrices;                // s matrices, E x m
    std::vector<std::vector<digit_t>> shifts;      // empty, or s digit vectors of length E

    bool has_shift() const { return !shifts.empty(); }

    /// Checks all structural invariants; throws std::invalid_argument.
    void validate() const;

    std::uint64_t n_points() const;
};

/// Hankel matrix with entry (j, r) = u[j + r] (0-based): constant anti-diagonals.
/// The seed must have length rows + cols - 1.
GfMatrix hankel_matrix(PrimeBase b, std::span<const digit_t> u, int rows, int cols);

NetDesign draw_hrd(RngSeed seed, PrimeBase b, int precision, int m, int s, bool with_shift);
NetDesign draw_urd(RngSeed seed, PrimeBase b, int precision, int m, int s, bool with_shift);

/// Lower-triangular E x E scrambling matrix: diagonal uniform on F_b^x,
/// strictly-lower entries uniform on F_b.
GfMatrix lms_matrix(Rng& rng, PrimeBase b, int precision);

/// (M C) mod b for an E x E scrambler and an E x m generating matrix.
GfMatrix apply_lms(const GfMatrix& M, const GfMatrix& C);

// Sobol' direction numbers, one row per dimension >= 2 (dimension 1 is the
// identity / van der Corput matrix and carries no parameters).
struct SobolTable {
    struct Row {
        int dimension;
        std::uint32_t poly_coeffs;       // inner coefficients of the primitive polynomial
        std::vector<std::uint64_t> m;    // initial direction integers, m_k odd, m_k < 2^k
    };
    std::vector<Row> rows;

    int max_dimension() const { return static_cast<int>(rows.size()) + 1; }
};

/// Parses the plain-text asset format: one line per dimension,
/// `d a m_1 m_2 ... m_k`. Lines starting with '#' are skipped.
SobolTable parse_sobol_table(std::string_view text);

/// Table embedded in the library (first 50 dimensions of the Joe-Kuo set).
const SobolTable& default_sobol_table();

/// FNV-1a 64 checksum of the embedded table text.
std::uint64_t sobol_table_checksum();

/// Base-2 generating matrices of the Sobol' sequence, precision x m each.
/// Dimension 1 is the identity-top matrix. Throws "extend direction-number
/// table" when s exceeds the table.
std::vector<GfMatrix> sobol_matrices(int m, int s, int precision,
                                     const SobolTable& table = default_sobol_table());

/// LMS-scrambled Sobol' design in base 2 with per-dimension scramblers and
/// optional digital shift.
NetDesign draw_lms_sobol(RngSeed seed, int precision, int m, int s, bool with_shift);

/// Dispatcher over the three design kinds. lms_sobol requires b = 2.
NetDesign draw_design(DesignKind kind, RngSeed seed, PrimeBase b, int precision, int m, int s,
                      bool with_shift);

}  // namespace hankelnet
