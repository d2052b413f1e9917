#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "lso/doubling.hpp"
#include "lso/spanner.hpp"

namespace {

struct PointFixture {
    lso::PointSet ps;
    lso::LpMetric m;
    lso::OrderingFamily fam;
    explicit PointFixture(int n)
        : ps(bench::uniform_points(n, 2, 12)), m(ps, 2),
          fam(lso::cover_preorder_to_triangle_lso(lso::build_ultrametric_cover(m, 8, 0.25, 13))) {}
};

template <class Query>
void run_queries(benchmark::State& state, int n, Query&& query) {
    auto qs = bench::query_pairs(n, 1 << 12, 14);
    size_t i = 0;
    for (auto _ : state) {
        auto [a, b] = qs[i++ & (qs.size() - 1)];
        benchmark::DoNotOptimize(query(a, b));
    }
}

}  // namespace

static void BM_OrderingSpannerQuery(benchmark::State& state) {
    PointFixture fx(static_cast<int>(state.range(0)));
    lso::OrderingSpanner s(fx.fam, fx.m);
    run_queries(state, fx.ps.size(), [&](int a, int b) { return s.query(a, b); });
    state.counters["edges"] = static_cast<double>(s.edge_set().size());
}
BENCHMARK(BM_OrderingSpannerQuery)->Arg(256)->Arg(512)->Unit(benchmark::kMicrosecond);

static void BM_TzSpannerQuery(benchmark::State& state) {
    PointFixture fx(static_cast<int>(state.range(0)));
    lso::TzSpanner s(fx.m, 3, 15);
    run_queries(state, fx.ps.size(), [&](int a, int b) { return s.query(a, b); });
    state.counters["edges"] = static_cast<double>(s.edge_set().size());
}
BENCHMARK(BM_TzSpannerQuery)->Arg(256)->Arg(512);

static void BM_SparseCoverSpannerQuery(benchmark::State& state) {
    PointFixture fx(static_cast<int>(state.range(0)));
    lso::TzSpanner tz(fx.m, 2, 16);
    lso::SparseCoverSpanner s(fx.m, 2, 0.25, [&](int a, int b) { return tz.estimate(a, b); });
    run_queries(state, fx.ps.size(), [&](int a, int b) { return s.query(a, b); });
    state.counters["edges"] = static_cast<double>(s.edge_set().size());
}
BENCHMARK(BM_SparseCoverSpannerQuery)->Arg(256);

static void BM_FtSpannerQuery(benchmark::State& state) {
    PointFixture fx(256);
    int f = static_cast<int>(state.range(0));
    auto s = lso::ft_spanner_from_family(fx.fam, fx.m, f);
    std::vector<int> faults;
    for (int k = 0; k < f; ++k) faults.push_back(200 + k);
    run_queries(state, 200, [&](int a, int b) { return s->query(a, b, faults); });
    state.counters["edges"] = static_cast<double>(s->edge_set().size());
}
BENCHMARK(BM_FtSpannerQuery)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);
