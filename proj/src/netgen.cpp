#include "hankelnet/netgen.hpp"

#include <sstream>
#include <stdexcept>

namespace hankelnet {

namespace detail {
extern const char kSobolTableText[];
}

std::string_view design_kind_name(DesignKind kind) {
    switch (kind) {
        case DesignKind::hrd: return "hrd";
        case DesignKind::urd: return "urd";
        case DesignKind::lms_sobol: return "lms-sobol";
    }
    return "?";
}

DesignKind parse_design_kind(std::string_view name) {
    if (name == "hrd") return DesignKind::hrd;
    if (name == "urd") return DesignKind::urd;
    if (name == "lms-sobol" || name == "lms_sobol") return DesignKind::lms_sobol;
    throw std::invalid_argument("unknown design kind: " + std::string(name));
}

int default_precision(PrimeBase b) {
    int e = 0;
    std::uint64_t p = 1;
    const auto limit = std::uint64_t{1} << 53;
    while (p <= limit / b.value()) {
        p *= b.value();
        ++e;
    }
    return e;
}

void NetDesign::validate() const {
    if (s < 1) throw std::invalid_argument("dimension must be >= 1");
    if (m < 1 || m > precision) throw std::invalid_argument("m must satisfy 1 <= m <= precision");
    if (static_cast<int>(matrices.size()) != s)
        throw std::invalid_argument("design must carry one matrix per dimension");
    for (const auto& C : matrices) {
        if (C.base() != base) throw std::invalid_argument("matrix base mismatch");
        if (C.rows() != precision || C.cols() != m)
            throw std::invalid_argument("generating matrix must be precision x m");
    }
    if (!shifts.empty()) {
        if (static_cast<int>(shifts.size()) != s)
            throw std::invalid_argument("shift count must equal dimension");
        for (const auto& d : shifts) {
            if (static_cast<int>(d.size()) != precision)
                throw std::invalid_argument("shift length must equal precision");
            for (digit_t v : d)
                if (v >= base.value()) throw std::invalid_argument("shift digit out of range");
        }
    }
}

std::uint64_t NetDesign::n_points() const {
    std::uint64_t n = 1;
    for (int i = 0; i < m; ++i) n *= static_cast<std::uint64_t>(base.value());
    return n;
}

GfMatrix hankel_matrix(PrimeBase b, std::span<const digit_t> u, int rows, int cols) {
    if (static_cast<int>(u.size()) != rows + cols - 1)
        throw std::invalid_argument("hankel seed must have length rows + cols - 1");
    GfMatrix C(b, rows, cols);
    for (int j = 0; j < rows; ++j)
        for (int r = 0; r < cols; ++r) C.at(j, r) = u[j + r];
    return C;
}

namespace {

std::vector<digit_t> draw_digits(Rng& rng, PrimeBase b, int n) {
    std::vector<digit_t> v(static_cast<std::size_t>(n));
    for (auto& d : v) d = rng.digit(b);
    return v;
}

std::vector<std::vector<digit_t>> draw_shifts(RngSeed seed, PrimeBase b, int precision, int s) {
    std::vector<std::vector<digit_t>> shifts;
    shifts.reserve(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) {
        Rng rng(seed.child("shift", static_cast<std::uint64_t>(j)));
        shifts.push_back(draw_digits(rng, b, precision));
    }
    return shifts;
}

}  // namespace

NetDesign draw_hrd(RngSeed seed, PrimeBase b, int precision, int m, int s, bool with_shift) {
    NetDesign d{b, m, s, precision, {}, {}};
    d.matrices.reserve(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) {
        Rng rng(seed.child("hankel", static_cast<std::uint64_t>(j)));
        const auto u = draw_digits(rng, b, precision + m - 1);
        d.matrices.push_back(hankel_matrix(b, u, precision, m));
    }
    if (with_shift) d.shifts = draw_shifts(seed, b, precision, s);
    d.validate();
    return d;
}

NetDesign draw_urd(RngSeed seed, PrimeBase b, int precision, int m, int s, bool with_shift) {
    NetDesign d{b, m, s, precision, {}, {}};
    d.matrices.reserve(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) {
        Rng rng(seed.child("urd", static_cast<std::uint64_t>(j)));
        d.matrices.emplace_back(b, precision, m, draw_digits(rng, b, precision * m));
    }
    if (with_shift) d.shifts = draw_shifts(seed, b, precision, s);
    d.validate();
    return d;
}

GfMatrix lms_matrix(Rng& rng, PrimeBase b, int precision) {
    if (precision < 1) throw std::invalid_argument("lms_matrix: precision must be >= 1");
    GfMatrix M(b, precision, precision);
    for (int i = 0; i < precision; ++i) {
        for (int j = 0; j < i; ++j) M.at(i, j) = rng.digit(b);
        M.at(i, i) = static_cast<digit_t>(1 + rng.below(static_cast<std::uint64_t>(b.value() - 1)));
    }
    return M;
}

GfMatrix apply_lms(const GfMatrix& M, const GfMatrix& C) {
    if (M.rows() != M.cols() || M.cols() != C.rows())
        throw std::invalid_argument("apply_lms: scrambler must be E x E with E = rows(C)");
    return mat_mul(M, C);
}

SobolTable parse_sobol_table(std::string_view text) {
    SobolTable table;
    std::istringstream in{std::string(text)};
    std::string line;
    int expected_dim = 2;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        SobolTable::Row row;
        std::uint32_t a = 0;
        if (!(ls >> row.dimension >> a))
            throw std::invalid_argument("sobol table: malformed line: " + line);
        row.poly_coeffs = a;
        std::uint64_t mi;
        while (ls >> mi) row.m.push_back(mi);
        if (row.dimension != expected_dim)
            throw std::invalid_argument("sobol table: dimensions must be consecutive from 2");
        if (row.m.empty()) throw std::invalid_argument("sobol table: missing direction integers");
        for (std::size_t k = 0; k < row.m.size(); ++k) {
            if (row.m[k] % 2 == 0 || row.m[k] >= (std::uint64_t{1} << (k + 1)))
                throw std::invalid_argument("sobol table: direction integer out of range");
        }
        table.rows.push_back(std::move(row));
        ++expected_dim;
    }
    return table;
}

const SobolTable& default_sobol_table() {
    static const SobolTable table = parse_sobol_table(detail::kSobolTableText);
    return table;
}

std::uint64_t sobol_table_checksum() {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char* p = detail::kSobolTableText; *p; ++p) {
        h ^= static_cast<unsigned char>(*p);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<GfMatrix> sobol_matrices(int m, int s, int precision, const SobolTable& table) {
    if (s < 1) throw std::invalid_argument("sobol_matrices: dimension must be >= 1");
    if (s > table.max_dimension())
        throw std::invalid_argument("extend direction-number table: only " +
                                    std::to_string(table.max_dimension()) +
                                    " dimensions available");
    if (m < 1 || m > precision || m > 63)
        throw std::invalid_argument("sobol_matrices: need 1 <= m <= precision");
    const PrimeBase b2(2);
    std::vector<GfMatrix> out;
    out.reserve(static_cast<std::size_t>(s));

    // Dimension 1: van der Corput, identity in the top m x m block.
    {
        GfMatrix C(b2, precision, m);
        for (int r = 0; r < m; ++r) C.at(r, r) = 1;
        out.push_back(std::move(C));
    }

    for (int dim = 2; dim <= s; ++dim) {
        const auto& row = table.rows[static_cast<std::size_t>(dim - 2)];
        const int deg = static_cast<int>(row.m.size());
        std::vector<std::uint64_t> mdir(row.m);
        for (int k = deg; k < m; ++k) {
            // m_k = 2 a_1 m_{k-1} ^ ... ^ 2^{deg-1} a_{deg-1} m_{k-deg+1}
            //       ^ 2^deg m_{k-deg} ^ m_{k-deg}
            std::uint64_t v = mdir[static_cast<std::size_t>(k - deg)] ^
                              (mdir[static_cast<std::size_t>(k - deg)] << deg);
            for (int i = 1; i < deg; ++i)
                if ((row.poly_coeffs >> (deg - 1 - i)) & 1U)
                    v ^= mdir[static_cast<std::size_t>(k - i)] << i;
            mdir.push_back(v);
        }
        // Column r holds the binary digits of v_r = m_r / 2^r; rows below r are zero.
        GfMatrix C(b2, precision, m);
        for (int r = 1; r <= m; ++r)
            for (int i = 1; i <= r && i <= precision; ++i)
                C.at(i - 1, r - 1) =
                    static_cast<digit_t>((mdir[static_cast<std::size_t>(r - 1)] >> (r - i)) & 1U);
        out.push_back(std::move(C));
    }
    return out;
}

NetDesign draw_lms_sobol(RngSeed seed, int precision, int m, int s, bool with_shift) {
    const PrimeBase b2(2);
    NetDesign d{b2, m, s, precision, {}, {}};
    auto sobol = sobol_matrices(m, s, precision);
    d.matrices.reserve(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) {
        Rng rng(seed.child("lms", static_cast<std::uint64_t>(j)));
        d.matrices.push_back(apply_lms(lms_matrix(rng, b2, precision), sobol[static_cast<std::size_t>(j)]));
    }
    if (with_shift) d.shifts = draw_shifts(seed, b2, precision, s);
    d.validate();
    return d;
}

NetDesign draw_design(DesignKind kind, RngSeed seed, PrimeBase b, int precision, int m, int s,
                      bool with_shift) {
    switch (kind) {
        case DesignKind::hrd: return draw_hrd(seed, b, precision, m, s, with_shift);
        case DesignKind::urd: return draw_urd(seed, b, precision, m, s, with_shift);
        case DesignKind::lms_sobol:
            if (b.value() != 2)
                throw std::invalid_argument("lms-sobol designs require base 2");
            return draw_lms_sobol(seed, precision, m, s, with_shift);
    }
    throw std::logic_error("unreachable design kind");
}

}  // namespace hankelnet
