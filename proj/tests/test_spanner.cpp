#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "lso/doubling.hpp"
#include "lso/euclid.hpp"
#include "lso/spanner.hpp"
#include "oracles.hpp"

using namespace lso;

namespace {

OrderingFamily identity_family(LsoKind kind, int n, double rho) {
    OrderingFamily fam;
    fam.kind = kind;
    fam.n = n;
    fam.rho = rho;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    fam.orderings.emplace_back(p, n);
    return fam;
}

OrderingFamily star_family(int n) {
    // Hub 0 with leaves at distance 1; one ordering rooted at the hub.
    OrderingFamily fam = identity_family(LsoKind::Rooted, n, 1);
    fam.orderings[0].root = 0;
    return fam;
}

WeightedGraph star(int n) {
    WeightedGraph g;
    g.n = n;
    for (int v = 1; v < n; ++v) g.edges.push_back({0, v, 1});
    return g;
}

WeightedGraph path_graph(int n) {
    WeightedGraph g;
    g.n = n;
    for (int v = 0; v + 1 < n; ++v) g.edges.push_back({v, v + 1, 1.0 + v % 3});
    return g;
}

}  // namespace

TEST_CASE("classic spanner on two points is one exact edge") {
    auto ps = PointSet::from_rows({{0.0}, {2.0}});
    LpMetric m(ps, 2);
    OrderingSpanner s(identity_family(LsoKind::Classic, 2, 0.5), m);
    CHECK(s.edge_set().size() == 1);
    auto p = s.query(0, 1);
    CHECK(p.vertices == std::vector<int>{0, 1});
    CHECK(p.weight == 2);
}

TEST_CASE("classic spanner on the sorted line") {
    auto ps = oracle::uniform_points(70, 1, 3);
    std::vector<int> order(70);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return ps[a][0] < ps[b][0]; });
    OrderingFamily fam;
    fam.kind = LsoKind::Classic;
    fam.n = 70;
    fam.rho = 0.5;
    fam.orderings.emplace_back(order, 70);
    LpMetric m(ps, 2);
    OrderingSpanner s(fam, m);
    auto chk = check_spanner(s, m);
    CHECK(chk.pass());
    CHECK(chk.max_stretch <= 1 + 2 * 0.5 + 1e-9);
    // On the line, monotone 2-hop paths are exact.
    CHECK(chk.max_stretch == doctest::Approx(1.0));
    CHECK(edge_weights_match(s.edge_set(), m));
}

TEST_CASE("classic spanner from the grid family") {
    auto ps = oracle::uniform_points(60, 2, 6);
    auto g = build_verified_grid_lso(ps, 0.2, 2);
    REQUIRE(g.report.pass());
    LpMetric m(ps, 2);
    OrderingSpanner s(g.lso->family(), m);
    auto chk = check_spanner(s, m);
    CHECK(chk.pass());
    for (int u = 0; u < 60; ++u)
        for (int v = u + 1; v < 60; ++v) {
            auto p = s.query_hinted(u, v);
            CHECK(p.inspected == 1);
            CHECK(p.weight <= (1 + 2 * 0.2) * m(u, v) * (1 + 1e-9));
        }
}

TEST_CASE("triangle spanner from the doubling pipeline") {
    LpMetric m(oracle::uniform_points(80, 2, 7), 2);
    auto cover = build_ultrametric_cover(m, 4, 0.1, 3);
    auto fam = cover_preorder_to_triangle_lso(cover);
    OrderingSpanner s(fam, m);
    CHECK(s.stretch() == 8);
    CHECK(check_spanner(s, m).pass());
}

TEST_CASE("rooted spanners") {
    auto g = star(9);
    auto m = graph_metric(g);
    auto fam = star_family(9);
    RootedSpanner s(fam, m);
    auto p = s.query(3, 5);
    CHECK(p.vertices == std::vector<int>{3, 0, 5});
    CHECK(p.weight == 2);

    auto t = oracle::random_tree(150, 4);
    auto tm = graph_metric(t);
    auto tfam = build_rooted_lso_tree(t);
    RootedSpanner ts(tfam, tm);
    auto chk = check_spanner(ts, tm);
    CHECK(chk.pass());
    CHECK(chk.max_stretch == doctest::Approx(1.0));
    CHECK(ts.edge_set().size() <= 150u * 9);

    auto grid = oracle::grid_graph(5, 5);
    auto gm = graph_metric(grid);
    auto tw = build_rooted_lso_treewidth(grid, grid_tree_decomposition(5, 5));
    RootedSpanner gs(tw.family, gm);
    CHECK(check_spanner(gs, gm).max_stretch == doctest::Approx(1.0));
}

TEST_CASE("tz bunches follow the definition") {
    auto m = oracle::random_metric(100, 5);
    for (int k : {1, 2, 3}) {
        TzSpanner s(m, k, 11);
        int n = 100;
        // Level sets recomputed from levels, then bunches from scratch.
        for (int v = 0; v < n; ++v) {
            std::vector<double> dA(k + 1, kInf);
            for (int i = 0; i < k; ++i)
                for (int w = 0; w < n; ++w)
                    if (s.level(w) >= i) dA[i] = std::min(dA[i], m(v, w));
            for (int i = 0; i < k; ++i) CHECK(s.level_distance(i, v) == dA[i]);
            for (int w = 0; w < n; ++w) {
                bool in = false;
                for (int i = 0; i < k; ++i) in |= s.level(w) >= i && m(v, w) < dA[i + 1];
                CHECK(static_cast<bool>(s.bunch(v).count(w)) == in);
            }
        }
        CHECK(s.total_bunch_size() <= 4.0 * k * std::pow(n, 1 + 1.0 / k));
        auto chk = check_spanner(s, m);
        CHECK(chk.pass());
        CHECK(chk.max_inspected <= k);
    }
}

TEST_CASE("tz with k = 1 is the complete graph") {
    auto m = oracle::random_metric(12, 2);
    TzSpanner s(m, 1, 1);
    CHECK(s.edge_set().size() == 66u);
    CHECK(check_spanner(s, m).max_stretch == doctest::Approx(1.0));
}

TEST_CASE("tz on a uniform metric") {
    std::vector<double> d(900, 1.0);
    for (int i = 0; i < 30; ++i) d[i * 31] = 0;
    MatrixMetric u(30, d, false);
    TzSpanner s(u, 3, 4);
    auto chk = check_spanner(s, u);
    CHECK(chk.pass());
    // Ties under the strict bunch inequality can push the pivot walk up to level k-1.
    CHECK(chk.max_inspected <= 3);
    CHECK(chk.max_stretch <= 2);
}

TEST_CASE("sparse cover spanner") {
    auto m = oracle::random_metric(80, 8);
    TzSpanner tz(m, 2, 3);
    SparseCoverSpanner s(m, 2, 0.25, [&](int a, int b) { return tz.estimate(a, b); });
    for (auto& sc : s.scales()) {
        for (auto& c : sc.clusters)
            for (int x : c.members) CHECK(m(c.center, x) <= (2.0 * c.rounds - 1) * sc.delta * (1 + 1e-9));
        // Padding: the ball around x lies in x's home cluster.
        for (int x = 0; x < 80; ++x) {
            const auto& home = sc.clusters[sc.home[x]].members;
            for (int y = 0; y < 80; ++y)
                if (m(x, y) <= sc.delta) REQUIRE(std::binary_search(home.begin(), home.end(), y));
        }
    }
    auto chk = check_spanner(s, m);
    CHECK(chk.pass());
    CHECK(chk.max_inspected <= static_cast<long long>(std::ceil(std::log(4.0) / std::log(1.25))) + 3);
}

TEST_CASE("sparse cover reports a lying estimator") {
    auto m = oracle::random_metric(20, 8);
    SparseCoverSpanner s(m, 2, 0.25, [&](int a, int b) { return m(a, b) * 1000; });
    CHECK_THROWS_AS(s.query(0, 1), EstimatorFault);
}

TEST_CASE("spd file round trip and validation") {
    auto t = oracle::random_tree(40, 3);
    auto spd = heavy_path_spd(t);
    std::stringstream ss;
    write_spd(ss, spd);
    auto back = read_spd(ss);
    REQUIRE(back.entries.size() == spd.entries.size());
    CHECK_NOTHROW(validate_spd(t, back));
    CHECK(spd.depth() <= 7);

    Spd bad = spd;
    bad.entries.back().path.push_back(bad.entries.back().path.front());
    CHECK_THROWS_WITH_AS(validate_spd(t, bad), doctest::Contains("level"), Error);

    Spd missing = spd;
    missing.entries.pop_back();
    CHECK_THROWS_AS(validate_spd(t, missing), Error);

    std::stringstream junk("level x: path 1 2 @ component 0\n");
    CHECK_THROWS_AS(read_spd(junk), Error);
}

TEST_CASE("spd spanner on a path is exact") {
    auto g = path_graph(30);
    Spd spd;
    spd.entries.push_back({0, 0, {}});
    for (int v = 0; v < 30; ++v) spd.entries[0].path.push_back(v);
    SpdSpanner s(g, spd, 0.1);
    auto m = graph_metric(g);
    auto chk = check_spanner(s, m);
    CHECK(chk.pass());
    CHECK(chk.max_stretch == doctest::Approx(1.0));
}

TEST_CASE("spd spanner on a star") {
    auto g = star(12);
    Spd spd;
    spd.entries.push_back({0, 0, {0, 1}});
    for (int v = 2; v < 12; ++v) spd.entries.push_back({1, v, {v}});
    SpdSpanner s(g, spd, 0.25);
    CHECK(check_spanner(s, graph_metric(g)).pass());
}

TEST_CASE("spd spanner on trees and grids") {
    for (double eps : {0.1, 0.5}) {
        auto t = oracle::random_tree(120, 5);
        SpdSpanner s(t, heavy_path_spd(t), eps);
        auto chk = check_spanner(s, graph_metric(t));
        CHECK(chk.pass());
        CHECK(chk.max_inspected <= 2LL * s.depth() * s.max_landmarks());

        auto grid = oracle::grid_graph(6, 6);
        auto spd = treewidth_spd(grid, grid_tree_decomposition(6, 6));
        CHECK_NOTHROW(validate_spd(grid, spd));
        SpdSpanner gs(grid, spd, eps);
        CHECK(check_spanner(gs, graph_metric(grid)).pass());
    }
}

TEST_CASE("fault tolerant spanners") {
    auto ps = oracle::uniform_points(60, 2, 31);
    LpMetric m(ps, 2);
    auto cover = build_ultrametric_cover(m, 4, 0.1, 5);
    auto fam = cover_preorder_to_triangle_lso(cover);
    std::mt19937_64 rng(2);
    for (int f : {0, 1, 2}) {
        auto s = ft_spanner_from_family(fam, m, f);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<int> F;
            while (static_cast<int>(F.size()) < f) {
                int x = static_cast<int>(rng() % 60);
                if (std::find(F.begin(), F.end(), x) == F.end()) F.push_back(x);
            }
            CHECK(check_ft_spanner(*s, m, F).pass());
        }
    }
    auto s1 = ft_spanner_from_family(fam, m, 1);
    CHECK_THROWS_AS(s1->query(0, 1, {2, 3}), Error);
}

TEST_CASE("fault tolerant rooted star uses the second point") {
    auto g = star(8);
    auto m = graph_metric(g);
    auto fam = star_family(8);
    auto s = ft_spanner_from_family(fam, m, 1);
    auto p = s->query(3, 5, {0});
    CHECK(p.vertices == std::vector<int>{3, 1, 5});
    CHECK(p.weight <= 2 * fam.rho * m(3, 5));
}

TEST_CASE("classic oracle on a line") {
    int n = 50;
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < n; ++i) rows.push_back({static_cast<double>(i)});
    LpMetric m(PointSet::from_rows(rows), 2);
    auto fam = identity_family(LsoKind::Classic, n, 0.2);
    ClassicSpannerOracle o(fam, m);
    CHECK(o({7}, 1.0).empty());
    CHECK(o({}, 1.0).empty());
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> T;
        for (int x = 0; x < n; ++x)
            if (rng() % 3 == 0) T.push_back(x);
        double L = 1 + rng() % 10;
        auto edges = o(T, L);
        double w = 0;
        for (auto& e : edges) w += e.w;
        CHECK(w <= (static_cast<double>(T.size()) - 1) * 2 * L + 1e-9);
    }
    CHECK(o.max_weak_sparsity() <= 2);
}

TEST_CASE("triangle oracle edges respect the weight cap") {
    auto ps = oracle::uniform_points(60, 2, 1);
    LpMetric m(ps, 2);
    auto cover = build_ultrametric_cover(m, 4, 0.1, 5);
    auto fam = cover_preorder_to_triangle_lso(cover);
    for (int hops : {2, 3, 4}) {
        TriangleSpannerOracle o(fam, m, hops);
        std::vector<int> T;
        for (int x = 0; x < 60; x += 2) T.push_back(x);
        double L = 0.2;
        auto edges = o(T, L);
        for (auto& e : edges) CHECK(e.w <= 2 * fam.rho * L * (1 + 1e-9));
        auto dist = edge_set_distances(60, edges, T);
        for (size_t a = 0; a < T.size(); ++a)
            for (int y : T) {
                double d = m(T[a], y);
                if (d >= L && d < 2 * L) CHECK(dist[a][y] <= hops * fam.rho * d * (1 + 1e-9));
            }
    }
}
