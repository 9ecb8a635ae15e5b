#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hankelnet/pointgen.hpp"

using namespace hankelnet;

namespace {

NetDesign column_design(PrimeBase b, int precision, std::vector<digit_t> column,
                        std::vector<digit_t> shift = {}) {
    GfMatrix C(b, precision, 1);
    for (int i = 0; i < precision; ++i) C.at(i, 0) = column[static_cast<std::size_t>(i)];
    NetDesign d{b, 1, 1, precision, {C}, {}};
    if (!shift.empty()) d.shifts = {shift};
    d.validate();
    return d;
}

std::vector<double> sorted_flat(const PointSet& ps) {
    std::vector<double> v(ps.coords);
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("gray_steps examples") {
    const auto s22 = gray_steps(PrimeBase(2), 2);
    REQUIRE(s22.size() == 3);
    CHECK(s22[0].digit == 0);
    CHECK(s22[0].inc == 1);
    CHECK(s22[1].digit == 1);
    CHECK(s22[1].inc == 1);
    CHECK(s22[2].digit == 0);
    CHECK(s22[2].inc == -1);

    const auto s31 = gray_steps(PrimeBase(3), 1);
    REQUIRE(s31.size() == 2);
    CHECK(s31[0].digit == 0);
    CHECK(s31[0].inc == 1);
    CHECK(s31[1].digit == 0);
    CHECK(s31[1].inc == 1);

    CHECK(gray_steps(PrimeBase(2), 0).empty());
}

TEST_CASE("gray walk visits every digit word exactly once") {
    for (int b : {2, 3, 5}) {
        const PrimeBase base(b);
        const int m = b == 5 ? 3 : 4;
        std::vector<int> word(static_cast<std::size_t>(m), 0);
        std::set<std::vector<int>> seen{word};
        for (const GrayStep& st : gray_steps(base, m)) {
            word[static_cast<std::size_t>(st.digit)] += st.inc;
            CHECK(word[static_cast<std::size_t>(st.digit)] >= 0);
            CHECK(word[static_cast<std::size_t>(st.digit)] < b);
            CHECK(seen.insert(word).second);
        }
        CHECK(seen.size() == static_cast<std::size_t>(std::pow(b, m)));
    }
}

TEST_CASE("single-column nets follow the shift") {
    std::vector<digit_t> e1(8, 0);
    e1[0] = 1;
    const NetDesign plain = column_design(PrimeBase(2), 8, e1);
    const PointSet ps = gen_points_gray(plain);
    REQUIRE(ps.n_points == 2);
    CHECK(ps.at(0, 0) == 0.0);
    CHECK(ps.at(1, 0) == 0.5);

    const NetDesign shifted = column_design(PrimeBase(2), 8, e1, e1);
    const PointSet qs = gen_points_gray(shifted);
    CHECK(qs.at(0, 0) == 0.5);
    CHECK(qs.at(1, 0) == 0.0);
}

TEST_CASE("naive oracle examples") {
    const PrimeBase b2(2);
    GfMatrix C(b2, 4, 2);
    C.at(0, 0) = 1;
    C.at(1, 1) = 1;
    NetDesign d{b2, 2, 1, 4, {C}, {}};
    const PointSet ps = gen_points_naive(d);
    REQUIRE(ps.n_points == 4);
    CHECK(ps.at(0, 0) == 0.0);
    CHECK(ps.at(1, 0) == 0.5);
    CHECK(ps.at(2, 0) == 0.25);
    CHECK(ps.at(3, 0) == 0.75);

    NetDesign zero{b2, 2, 1, 4, {GfMatrix(b2, 4, 2)}, {}};
    for (double x : gen_points_naive(zero).coords) CHECK(x == 0.0);

    NetDesign shifted{b2, 1, 1, 2, {GfMatrix(b2, 2, 1)}, {{1, 1}}};
    for (double x : gen_points_naive(shifted).coords) CHECK(x == 0.75);
}

TEST_CASE("gray and naive agree as multisets, bit-exactly") {
    for (int b : {2, 3, 5}) {
        const PrimeBase base(b);
        const int E = default_precision(base);
        for (int m : {1, 3, 5}) {
            for (int s : {1, 3}) {
                for (bool shift : {false, true}) {
                    const NetDesign d = draw_hrd(
                        RngSeed{static_cast<std::uint64_t>(b * 1000 + m * 10 + s)}, base, E, m, s,
                        shift);
                    const auto gray = sorted_flat(gen_points_gray(d));
                    const auto naive = sorted_flat(gen_points_naive(d));
                    REQUIRE(gray.size() == naive.size());
                    for (std::size_t i = 0; i < gray.size(); ++i) CHECK(gray[i] == naive[i]);
                }
            }
        }
    }
}

TEST_CASE("full-rank top blocks give b^m distinct values per projection") {
    for (int b : {2, 3}) {
        const PrimeBase base(b);
        const int E = default_precision(base);
        const int m = 4;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const NetDesign d = draw_hrd(RngSeed{seed}, base, E, m, 2, false);
            bool full_rank = true;
            for (const auto& C : d.matrices) {
                GfMatrix top(base, m, m);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) top.at(i, j) = C.at(i, j);
                full_rank = full_rank && rank(top) == m;
            }
            if (!full_rank) continue;
            const PointSet ps = gen_points_gray(d);
            for (int j = 0; j < d.s; ++j) {
                std::set<double> values;
                for (std::uint64_t n = 0; n < ps.n_points; ++n) values.insert(ps.at(n, j));
                CHECK(values.size() == ps.n_points);
            }
        }
    }
}

TEST_CASE("coordinates sit on the b^-E grid") {
    for (int b : {2, 3, 5}) {
        const PrimeBase base(b);
        const int E = default_precision(base);
        long double denom = 1.0L;
        for (int i = 0; i < E; ++i) denom *= b;
        const NetDesign d = draw_hrd(RngSeed{5}, base, E, 4, 2, true);
        const PointSet ps = gen_points_gray(d);
        for (double x : ps.coords) {
            CHECK(x >= 0.0);
            CHECK(x < 1.0);
            const long double scaled = static_cast<long double>(x) * denom;
            const long double nearest = llroundl(scaled);
            CHECK(std::abs(static_cast<double>(scaled - nearest)) < 0.5);
            // Re-dividing the recovered integer reproduces the double exactly.
            CHECK(static_cast<double>(nearest / denom) == x);
        }
    }
}

TEST_CASE("first point with a uniform shift is uniform (chi-square)") {
    const PrimeBase b3(3);
    const int E = default_precision(b3);
    const int cells = 9;  // first two digits
    std::vector<std::size_t> counts(cells, 0);
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        const NetDesign d =
            draw_hrd(RngSeed{static_cast<std::uint64_t>(i)}, b3, E, 2, 1, true);
        const PointSet ps = gen_points_gray(d);
        const int cell = static_cast<int>(ps.at(0, 0) * cells);
        ++counts[static_cast<std::size_t>(cell)];
    }
    const double expected = static_cast<double>(draws) / cells;
    double chi2 = 0.0;
    for (std::size_t c : counts) {
        const double diff = static_cast<double>(c) - expected;
        chi2 += diff * diff / expected;
    }
    const double df = cells - 1;
    CHECK(chi2 < df + 6.0 * std::sqrt(2.0 * df));
}

TEST_CASE("streaming scan matches the materialized set") {
    const NetDesign d = draw_hrd(RngSeed{77}, PrimeBase(3), 10, 3, 2, true);
    const PointSet ps = gen_points_gray(d);
    std::uint64_t count = 0;
    scan_points_gray(d, [&](std::uint64_t n, std::span<const double> x) {
        for (int j = 0; j < d.s; ++j) CHECK(x[static_cast<std::size_t>(j)] == ps.at(n, j));
        ++count;
    });
    CHECK(count == ps.n_points);
}
