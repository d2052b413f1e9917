#include <cmath>

#include "doctest.h"
#include "lso/euclid.hpp"
#include "oracles.hpp"

using namespace lso;

TEST_CASE("scheme parameters") {
    CHECK(triangle_xi(4, 2, 4) == doctest::Approx(12.0));  // 12 sqrt(d) / (t/2)
    CHECK(triangle_gamma(4, 2, 4) == 1);
    CHECK(triangle_shift_count(4, 2, 4, 0.5) >= 1);
    CHECK_THROWS_AS(BallCarvingScheme(2, 3, 2, 0.5, 0, 1), Error);  // p outside [1,2]
    CHECK_THROWS_AS(BallCarvingScheme(2, 2, 2, 0.5, 99, 1), Error);  // shift out of range
}

TEST_CASE("center streams depend only on the seed") {
    BallCarvingScheme a(3, 2, 2, 0.5, 1, 42), b(3, 2, 2, 0.5, 1, 42), c(3, 2, 2, 0.5, 1, 43);
    a.extend(0, 10);
    b.extend(0, 4);
    b.extend(0, 6);
    c.extend(0, 10);
    CHECK(a.base_centers(0) == b.base_centers(0));
    CHECK(a.base_centers(0) != c.base_centers(0));
}

TEST_CASE("carving assigns each point to the first covering center") {
    auto ps = oracle::uniform_points(80, 2, 5, 10.0);
    BallCarvingScheme s(2, 2, 2 * std::sqrt(2.0), 0.5, 0, 9);
    auto range = ordering_scale_range(ps, s);
    for (int i = range.i_min + 1; i < range.i_max; ++i) {
        auto sc = carve_scale(ps, s, i);
        int j = s.base_scale(i);
        double f = std::pow(s.xi(), static_cast<double>(i - j));
        for (int x = 0; x < ps.size(); ++x) {
            // Brute force: smallest center index whose 4w-lattice translate holds x.
            int first = -1;
            const auto& list = s.base_centers(j);
            for (int c = 0; c < static_cast<int>(list.size()) && first < 0; ++c) {
                double best = kInf;
                // Nearest lattice translate per coordinate.
                double acc = 0;
                for (int k = 0; k < 2; ++k) {
                    double diff = ps[x][k] - f * list[c][k];
                    double r = diff - 4 * sc.w * std::round(diff / (4 * sc.w));
                    acc += r * r;
                }
                best = std::sqrt(acc);
                if (best <= sc.w) first = c;
            }
            CHECK(sc.key[x].center == first);
        }
    }
}

TEST_CASE("scale range brackets the distances") {
    BallCarvingScheme s(2, 2, 2, 0.5, 2, 1);
    auto r = scale_range_from(0.01, 50, s);
    CHECK(2 * s.width(r.i_min) < 0.01);
    CHECK(2 * s.width(r.i_min + 1) >= 0.01);
    CHECK(s.width(r.i_max) >= 50);
    CHECK(s.width(r.i_max - 1) < 50);
}

TEST_CASE("triangle family on a small planar set") {
    auto ps = oracle::uniform_points(60, 2, 11);
    TriangleParams prm{2, 2 * std::sqrt(2.0), 0.5};
    auto res = build_verified_triangle_lso(ps, prm, 3);
    CHECK(res.report.pass());
    CHECK(res.family.rho == doctest::Approx(1.5 * prm.t));
    LpMetric m(ps, 2);
    for (int x = 0; x < 60; ++x)
        for (int y = x + 1; y < 60; ++y) REQUIRE(oracle::triangle_ok(res.family, m, x, y));
}

TEST_CASE("l1 triangle family") {
    auto ps = oracle::uniform_points(40, 2, 12);
    TriangleParams prm{1, 2, 0.5};
    auto res = build_verified_triangle_lso(ps, prm, 5);
    CHECK(res.report.pass());
}

TEST_CASE("t above 2 sqrt(d) is rejected for p = 2") {
    auto ps = oracle::uniform_points(5, 2, 1);
    CHECK_THROWS_AS(build_triangle_lso(ps, {2, 3.0, 0.5}, 1, 1), Error);
}

TEST_CASE("lens ratio closed form against grid counting") {
    // Count grid cells of [-1,2]x[-1,1] inside either unit disk at (0,0), (1,0).
    const int N = 1500;
    long long in_union = 0, in_both = 0;
    for (int a = 0; a < 3 * N; ++a)
        for (int b = 0; b < 2 * N; ++b) {
            double x = -1 + (a + 0.5) / N, y = -1 + (b + 0.5) / N;
            bool p = x * x + y * y <= 1, q = (x - 1) * (x - 1) + y * y <= 1;
            in_union += p || q;
            in_both += p && q;
        }
    double grid = static_cast<double>(in_both) / in_union;
    CHECK(lens_ratio_2d(1, 1) == doctest::Approx(grid).epsilon(2e-3));
    CHECK(lens_ratio_2d(1, 1) == doctest::Approx(0.2430).epsilon(1e-3));
}

TEST_CASE("monte carlo volume ratio matches the lens") {
    auto e = estimate_volume_ratio(2, 1, 1, 2, 200000, 1);
    CHECK(std::abs(e.estimate - lens_ratio_2d(1, 1)) <= 4 * e.stderr_);
    auto same = estimate_volume_ratio(3, 1, 0, 2, 10000, 1);
    CHECK(same.estimate == 1);
    auto apart = estimate_volume_ratio(3, 1, 2.5, 2, 10000, 1);
    CHECK(apart.estimate == 0);
}

TEST_CASE("grid classic family") {
    auto ps = oracle::uniform_points(40, 2, 21);
    auto res = build_verified_grid_lso(ps, 0.25, 4);
    REQUIRE(res.lso);
    CHECK(res.report.pass());
    const auto& fam = res.lso->family();
    CHECK(fam.kind == LsoKind::Classic);
    LpMetric m(ps, 2);
    // The hinted ordering alone must satisfy the definition.
    for (int x = 0; x < 40; ++x)
        for (int y = x + 1; y < 40; ++y) {
            int s = res.lso->satisfying_ordering(x, y);
            REQUIRE(s >= 0);
            OrderingFamily one;
            one.kind = LsoKind::Classic;
            one.n = 40;
            one.rho = fam.rho;
            one.orderings.push_back(fam.orderings[s]);
            CHECK(oracle::classic_ok(one, m, x, y));
        }
}

TEST_CASE("grid family rejects eps outside (0, 1/2)") {
    auto ps = oracle::uniform_points(5, 2, 1);
    CHECK_THROWS_AS(GridLso(ps, 0.5, 1), Error);
    CHECK_THROWS_AS(GridLso(ps, 0, 1), Error);
}
