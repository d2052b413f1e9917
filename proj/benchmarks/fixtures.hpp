#pragma once

#include <random>
#include <vector>

#include "lso/metric.hpp"

namespace bench {

inline lso::PointSet uniform_points(int n, int d, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0, 1);
    std::vector<double> c(static_cast<size_t>(n) * d);
    for (auto& x : c) x = U(rng);
    return lso::PointSet(d, std::move(c));
}

inline lso::WeightedGraph random_tree(int n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    lso::WeightedGraph g;
    g.n = n;
    for (int v = 1; v < n; ++v)
        g.edges.push_back({std::uniform_int_distribution<int>(0, v - 1)(rng), v,
                           static_cast<double>(std::uniform_int_distribution<int>(1, 10)(rng))});
    return g;
}

inline lso::MatrixMetric tree_metric(const lso::WeightedGraph& g) {
    std::vector<int> all(g.n);
    for (int i = 0; i < g.n; ++i) all[i] = i;
    auto rows = lso::graph_distances(g, all);
    std::vector<double> flat;
    flat.reserve(static_cast<size_t>(g.n) * g.n);
    for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return lso::MatrixMetric(g.n, std::move(flat), true);
}

// Fixed query pairs so every iteration does the same work.
inline std::vector<std::pair<int, int>> query_pairs(int n, int count, uint64_t seed, int base = 0) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> U(base, base + n - 1);
    std::vector<std::pair<int, int>> q(count);
    for (auto& [a, b] : q) a = U(rng), b = U(rng);
    return q;
}

}  // namespace bench
