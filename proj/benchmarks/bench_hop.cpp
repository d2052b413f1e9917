#include <benchmark/benchmark.h>

#include <algorithm>

#include "fixtures.hpp"
#include "lso/hop.hpp"
#include "lso/nns.hpp"

static void BM_TwoHopBuild(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lso::TwoHopPathSpanner(n));
    state.SetComplexityN(n);
}
BENCHMARK(BM_TwoHopBuild)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_TwoHopQuery(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    lso::TwoHopPathSpanner s(n);
    auto qs = bench::query_pairs(n, 1 << 16, 1, 1);
    for (auto& [a, b] : qs)
        if (a > b) std::swap(a, b);
    size_t i = 0;
    for (auto _ : state) {
        auto [a, b] = qs[i++ & (qs.size() - 1)];
        benchmark::DoNotOptimize(s.query(a, b));
    }
}
BENCHMARK(BM_TwoHopQuery)->RangeMultiplier(16)->Range(1 << 8, 1 << 20);

static void BM_FtTwoHopQuery(benchmark::State& state) {
    int n = 1 << 16, f = static_cast<int>(state.range(0));
    lso::FtTwoHopPathSpanner s(n, f);
    auto qs = bench::query_pairs(n, 1 << 16, 2, 1);
    for (auto& [a, b] : qs)
        if (a > b) std::swap(a, b);
    std::vector<char> faulty(n + 1, 0);
    std::mt19937_64 rng(3);
    for (int k = 0; k < n / 64; ++k) faulty[std::uniform_int_distribution<int>(1, n)(rng)] = 1;
    auto is_faulty = [&](int x) { return faulty[x] != 0; };
    size_t i = 0;
    for (auto _ : state) {
        auto [a, b] = qs[i++ & (qs.size() - 1)];
        try {
            benchmark::DoNotOptimize(s.query(a, b, is_faulty));
        } catch (const lso::Error&) {
        }
    }
}
BENCHMARK(BM_FtTwoHopQuery)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

static void BM_PredecessorInsertErase(benchmark::State& state) {
    uint32_t u = static_cast<uint32_t>(state.range(0));
    lso::PredecessorSet s(u);
    std::mt19937_64 rng(4);
    std::vector<uint32_t> keys(1 << 16);
    for (auto& k : keys) k = static_cast<uint32_t>(rng() % u);
    size_t i = 0;
    for (auto _ : state) {
        uint32_t k = keys[i++ & (keys.size() - 1)];
        if (!s.insert(k)) s.erase(k);
    }
}
BENCHMARK(BM_PredecessorInsertErase)->Arg(1 << 10)->Arg(1 << 17)->Arg(1 << 24);

static void BM_PredecessorQuery(benchmark::State& state) {
    uint32_t u = static_cast<uint32_t>(state.range(0));
    lso::PredecessorSet s(u);
    std::mt19937_64 rng(5);
    for (uint32_t k = 0; k < u / 16; ++k) s.insert(static_cast<uint32_t>(rng() % u));
    std::vector<uint32_t> qs(1 << 16);
    for (auto& q : qs) q = static_cast<uint32_t>(rng() % u);
    size_t i = 0;
    for (auto _ : state) {
        uint32_t q = qs[i++ & (qs.size() - 1)];
        benchmark::DoNotOptimize(s.predecessor(q));
        benchmark::DoNotOptimize(s.successor(q));
    }
}
BENCHMARK(BM_PredecessorQuery)->Arg(1 << 10)->Arg(1 << 17)->Arg(1 << 24);
