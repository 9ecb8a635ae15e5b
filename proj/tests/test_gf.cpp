#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hankelnet/gf.hpp"
#include "hankelnet/rng.hpp"

using namespace hankelnet;

namespace {

// Oracle: multiplicative inverse by exhaustive search.
int inv_by_search(int b, int a) {
    for (int c = 1; c < b; ++c)
        if (a * c % b == 1) return c;
    return -1;
}

// Oracle: rank from the size of the row span, |span| = b^rank.
int rank_by_span(const GfMatrix& M) {
    const int p = M.base().value();
    std::set<std::vector<int>> span;
    std::vector<int> coeff(static_cast<std::size_t>(M.rows()), 0);
    while (true) {
        std::vector<int> v(static_cast<std::size_t>(M.cols()), 0);
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < M.cols(); ++j)
                v[static_cast<std::size_t>(j)] =
                    (v[static_cast<std::size_t>(j)] + coeff[static_cast<std::size_t>(i)] * M.at(i, j)) % p;
        span.insert(v);
        int i = 0;
        while (i < M.rows() && ++coeff[static_cast<std::size_t>(i)] == p)
            coeff[static_cast<std::size_t>(i++)] = 0;
        if (i == M.rows()) break;
    }
    int r = 0;
    std::size_t power = 1;
    while (power < span.size()) {
        power *= static_cast<std::size_t>(p);
        ++r;
    }
    return r;
}

GfMatrix random_matrix(Rng& rng, PrimeBase b, int rows, int cols) {
    GfMatrix M(b, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) M.at(i, j) = rng.digit(b);
    return M;
}

}  // namespace

TEST_CASE("prime base validation") {
    CHECK_NOTHROW(PrimeBase(2));
    CHECK_NOTHROW(PrimeBase(31));
    CHECK_THROWS(PrimeBase(1));
    CHECK_THROWS(PrimeBase(4));
    CHECK_THROWS(PrimeBase(33));
    CHECK_THROWS(PrimeBase(9));
}

TEST_CASE("gf_inv matches the exhaustive-search oracle") {
    CHECK(gf_inv(PrimeBase(5), 2) == inv_by_search(5, 2));
    CHECK(gf_inv(PrimeBase(5), 2) == 3);
    CHECK(gf_inv(PrimeBase(2), 1) == 1);
    CHECK(gf_inv(PrimeBase(7), 3) == inv_by_search(7, 3));
    CHECK(gf_inv(PrimeBase(7), 3) == 5);
    CHECK_THROWS(gf_inv(PrimeBase(5), 0));

    for (int b : {2, 3, 5, 7, 11, 31}) {
        const PrimeBase base(b);
        for (int a = 1; a < b; ++a) {
            CHECK(gf_inv(base, static_cast<digit_t>(a)) == inv_by_search(b, a));
            CHECK(a * gf_inv(base, static_cast<digit_t>(a)) % b == 1);
        }
    }
}

TEST_CASE("mat_vec examples and errors") {
    const PrimeBase b2(2);
    const GfMatrix I = GfMatrix::identity(b2, 2);
    const std::vector<digit_t> v{1, 1};
    CHECK(mat_vec(I, v) == std::vector<digit_t>{1, 1});

    const GfMatrix U(b2, 2, 2, {1, 1, 0, 1});
    CHECK(mat_vec(U, v) == std::vector<digit_t>{0, 1});

    const GfMatrix S(PrimeBase(3), 1, 1, {2});
    CHECK(mat_vec(S, std::vector<digit_t>{2}) == std::vector<digit_t>{1});

    CHECK_THROWS(mat_vec(I, std::vector<digit_t>{1}));
}

TEST_CASE("mat_vec is linear over F_b") {
    Rng rng(RngSeed{12}.child("linear", 0));
    for (int b : {2, 3, 5}) {
        const PrimeBase base(b);
        for (int trial = 0; trial < 20; ++trial) {
            const GfMatrix C = random_matrix(rng, base, 5, 4);
            std::vector<digit_t> u(4), v(4), uv(4);
            for (int i = 0; i < 4; ++i) {
                u[i] = rng.digit(base);
                v[i] = rng.digit(base);
                uv[i] = gf_add(base, u[i], v[i]);
            }
            const auto lhs = mat_vec(C, uv);
            const auto cu = mat_vec(C, u);
            const auto cv = mat_vec(C, v);
            for (int i = 0; i < 5; ++i) CHECK(lhs[i] == gf_add(base, cu[i], cv[i]));
        }
    }
}

TEST_CASE("rank examples against the span oracle") {
    const PrimeBase b2(2);
    CHECK(rank(GfMatrix::identity(b2, 2)) == 2);
    CHECK(rank(GfMatrix(b2, 2, 2, {1, 1, 1, 1})) == 1);

    // Over F_3 the second row is twice the first, so the echelon oracle gives 1.
    const GfMatrix D(PrimeBase(3), 2, 2, {1, 2, 2, 1});
    CHECK(rank_by_span(D) == 1);
    CHECK(rank(D) == rank_by_span(D));

    CHECK(rank(GfMatrix(b2, 2, 2)) == 0);
    CHECK(rank(GfMatrix(b2, 0, 0)) == 0);
}

TEST_CASE("rank bounds, permutation invariance, and oracle agreement") {
    Rng rng(RngSeed{99}.child("rank", 0));
    std::mt19937_64 perm_rng(7);
    for (int b : {2, 3, 5}) {
        const PrimeBase base(b);
        for (int trial = 0; trial < 25; ++trial) {
            const int rows = 1 + static_cast<int>(rng.below(5));
            const int cols = 1 + static_cast<int>(rng.below(5));
            const GfMatrix M = random_matrix(rng, base, rows, cols);
            const int r = rank(M);
            CHECK(r <= std::min(rows, cols));
            CHECK(r == rank_by_span(M));

            std::vector<int> order(static_cast<std::size_t>(rows));
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), perm_rng);
            GfMatrix P(base, rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j)
                    P.at(i, j) = M.at(order[static_cast<std::size_t>(i)], j);
            CHECK(rank(P) == r);
        }
    }
}

TEST_CASE("echelon stack push/pop tracks rank") {
    const PrimeBase b3(3);
    EchelonStack stack(b3, 3);
    const std::vector<digit_t> r1{1, 2, 0};
    const std::vector<digit_t> r2{2, 1, 0};
    const std::vector<digit_t> r3{0, 0, 1};
    CHECK(stack.push(r1));
    CHECK_FALSE(stack.push(r2));  // r2 = 2 r1 over F_3
    CHECK(stack.push(r3));
    CHECK(stack.size() == 2);
    stack.pop();
    CHECK(stack.push(r3));
}

TEST_CASE("matrix constructor validates entries") {
    CHECK_THROWS(GfMatrix(PrimeBase(3), 1, 2, {1, 3}));
    CHECK_THROWS(GfMatrix(PrimeBase(3), 1, 2, {1}));
}
