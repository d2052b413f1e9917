#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "lso/doubling.hpp"
#include "lso/euclid.hpp"
#include "lso/nns.hpp"
#include "lso/ordering.hpp"

static void BM_RootedNnsQuery(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto g = bench::random_tree(n, 6);
    auto m = bench::tree_metric(g);
    auto fam = lso::build_rooted_lso_tree(g);
    lso::RootedNns nns(fam, m);
    for (int x = 0; x < n; x += 4) nns.insert(x);
    int q = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(nns.query(q));
        q = (q + 7) % n;
    }
    state.counters["label_entries"] = static_cast<double>(nns.max_label_entries());
}
BENCHMARK(BM_RootedNnsQuery)->Arg(256)->Arg(1024)->Arg(2048);

static void BM_TriangleNnsQuery(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto ps = bench::uniform_points(n, 2, 7);
    lso::LpMetric m(ps, 2);
    lso::TriangleParams prm;
    prm.t = 2.8;
    auto fam = lso::build_triangle_lso(ps, prm, lso::triangle_initial_m(2, prm.t, n), 8);
    lso::TriangleNns nns(fam, m);
    for (int x = 0; x < n; x += 4) nns.insert(x);
    int q = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(nns.query(q));
        q = (q + 7) % n;
    }
    state.counters["orderings"] = static_cast<double>(fam.tau());
    state.counters["label_entries"] = static_cast<double>(nns.max_label_entries());
}
BENCHMARK(BM_TriangleNnsQuery)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

static void BM_UltrametricNnsQuery(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto h = lso::random_hst(n, 9);
    lso::UltrametricNns nns(h);
    for (int x = 0; x < n; x += 4) nns.insert(x);
    int q = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(nns.query(q));
        q = (q + 7) % n;
    }
}
BENCHMARK(BM_UltrametricNnsQuery)->Arg(1024)->Arg(1 << 14);

static void BM_UltrametricCoverBuild(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto ps = bench::uniform_points(n, 2, 10);
    lso::LpMetric m(ps, 2);
    for (auto _ : state) benchmark::DoNotOptimize(lso::build_ultrametric_cover(m, 8, 0.25, 11));
}
BENCHMARK(BM_UltrametricCoverBuild)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
