#pragma once

#include <vector>

#include "lso/metric.hpp"
#include "lso/ordering.hpp"

namespace lso {

struct Partition {
    std::vector<int> cluster;  // per point
    int num_clusters = 0;
    double delta = 0;
};

struct PaddedPartitionCover {
    std::vector<Partition> partitions;
    double rho = 0;
    double delta = 0;
};

// x padded in p at radius r: every point within r of x shares x's cluster.
bool is_padded(const Metric& m, const Partition& p, int x, double r);
double partition_max_diameter(const Metric& m, const Partition& p);

// Ball carving until every point's (delta/t)-ball is inside one cluster of
// some partition; throws after 64 partitions.
PaddedPartitionCover build_padded_partition_cover(const Metric& m, double delta, double t, uint64_t seed);

// levels[i] = cluster ids at level i (level 0 = first real scale).
struct LaminarChain {
    std::vector<std::vector<int>> levels;
    std::vector<double> delta;  // Delta_i
};

// Nests per-scale partitions bottom-up; asserts diam <= (1+eps) Delta_i.
LaminarChain laminarize(const Metric& m, const std::vector<Partition>& per_scale, const std::vector<double>& deltas,
                        double eps);

struct Hst {
    std::vector<double> gamma;
    std::vector<std::vector<int>> children;
    std::vector<int> parent;
    std::vector<int> leaf_of;    // node -> point, -1 for internal
    std::vector<int> leaf_node;  // point -> node
    int root = -1;

    int num_points() const { return static_cast<int>(leaf_node.size()); }
    int lca_naive(int a, int b) const;  // on nodes
    double dist(int x, int y) const;    // on points
    std::vector<int> preorder_points() const;
    std::vector<int> depth() const;
    void validate() const;
};

class HstMetric final : public Metric {
public:
    explicit HstMetric(const Hst& h) : h_(h) {}
    int size() const override { return h_.num_points(); }
    double operator()(int a, int b) const override { return h_.dist(a, b); }
    bool exact() const override { return true; }

private:
    const Hst& h_;
};

// Level-i clusters become nodes labelled (1+eps) Delta_i; the chain must end
// in a single root cluster.
Hst hierarchy_to_hst(const LaminarChain& chain, double eps);

struct UltrametricCover {
    std::vector<Hst> trees;
    double rho = 0;
    double scale = 1;  // input distances were multiplied by this
    int partitions_per_scale = 0;
};

UltrametricCover build_ultrametric_cover(const Metric& m, double t, double eps, uint64_t seed);

// One ordering per HST: leaf preorder, children by ascending min point id.
OrderingFamily cover_preorder_to_triangle_lso(const UltrametricCover& cover);

// Random HST over n leaves for tests and benchmarks.
Hst random_hst(int n, uint64_t seed, int max_children = 4);

}  // namespace lso
