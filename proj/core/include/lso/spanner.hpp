#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <unordered_map>
#include <vector>

#include "lso/hop.hpp"
#include "lso/metric.hpp"
#include "lso/ordering.hpp"

namespace lso {

// Deduplicated undirected weighted edges.
class EdgeSet {
public:
    bool add(int u, int v, double w);  // false for loops and repeats
    bool contains(int u, int v) const { return w_.count(key(u, v)) > 0; }
    double weight(int u, int v) const;  // kInf when absent
    const std::vector<Edge>& edges() const { return edges_; }
    size_t size() const { return edges_.size(); }
    double total_weight() const;

private:
    static uint64_t key(int u, int v) {
        if (u > v) std::swap(u, v);
        return (static_cast<uint64_t>(u) << 32) | static_cast<uint32_t>(v);
    }
    std::unordered_map<uint64_t, double> w_;
    std::vector<Edge> edges_;
};

struct SpannerPath {
    std::vector<int> vertices;  // empty when no path was found
    double weight = kInf;
    long long inspected = 0;  // candidates examined by the query
    bool found() const { return !vertices.empty(); }
};

class PathReportingSpanner {
public:
    virtual ~PathReportingSpanner() = default;
    int n() const { return n_; }
    double stretch() const { return stretch_; }
    int hops() const { return hops_; }
    const EdgeSet& edge_set() const { return es_; }
    virtual SpannerPath query(int u, int v) const = 0;

protected:
    PathReportingSpanner(int n, double stretch, int hops) : n_(n), stretch_(stretch), hops_(hops) {}
    // Weight of u-m-v through existing edges (m may equal u or v).
    double two_hop_weight(int u, int m, int v) const;
    static SpannerPath two_hop_path(int u, int m, int v, double w);

    int n_;
    double stretch_;
    int hops_;
    EdgeSet es_;
};

// Union of per-ordering 2-hop path spanners (classic: 1+2 rho, triangle: 2 rho).
class OrderingSpanner final : public PathReportingSpanner {
public:
    OrderingSpanner(const OrderingFamily& fam, const Metric& m);
    SpannerPath query(int u, int v) const override;  // lightest over all orderings
    // Uses only the ordering named by the family hint; falls back to query().
    SpannerPath query_hinted(int u, int v) const;

private:
    SpannerPath through(int s, int u, int v) const;
    OrderingFamily fam_;  // copied, so temporaries are safe
    std::unordered_map<int, std::shared_ptr<TwoHopPathSpanner>> two_;  // by ordering size
};

// Every point linked to the root of each ordering containing it; stretch rho.
class RootedSpanner final : public PathReportingSpanner {
public:
    RootedSpanner(const OrderingFamily& fam, const Metric& m);
    SpannerPath query(int u, int v) const override;

private:
    OrderingFamily fam_;  // copied, so temporaries are safe
};

// Thorup-Zwick bunches and pivots; 2-hop (2k-1)-spanner.
class TzSpanner final : public PathReportingSpanner {
public:
    TzSpanner(const Metric& m, int k, uint64_t seed);
    int k() const { return k_; }
    // Largest i with v in A_i.
    int level(int v) const { return level_[v]; }
    int pivot(int i, int v) const { return pivot_[i][v]; }
    double level_distance(int i, int v) const { return dist_[i][v]; }  // d(v, A_i)
    const std::unordered_map<int, double>& bunch(int v) const { return bunch_[v]; }
    long long total_bunch_size() const;
    int attempts() const { return attempts_; }
    // inspected = pivot-walk iterations.
    SpannerPath query(int u, int v) const override;
    double estimate(int u, int v) const { return query(u, v).weight; }

private:
    int k_;
    int attempts_ = 0;
    std::vector<int> level_;
    std::vector<std::vector<int>> pivot_;
    std::vector<std::vector<double>> dist_;
    std::vector<std::unordered_map<int, double>> bunch_;
};

struct EstimatorFault : Error {
    using Error::Error;
};

// Per-scale region-growing sparse covers, edges point -> cluster center.
class SparseCoverSpanner final : public PathReportingSpanner {
public:
    using Estimator = std::function<double(int, int)>;
    struct Cluster {
        int center;
        int rounds;                // growth rounds j; radius <= (2j-1) delta
        std::vector<int> kernel;   // sorted
        std::vector<int> members;  // sorted
    };
    struct Scale {
        int index;
        double delta;
        std::vector<Cluster> clusters;
        std::vector<int> home;  // cluster whose kernel holds the point
    };

    SparseCoverSpanner(const Metric& m, int k, double eps, Estimator est);
    const std::vector<Scale>& scales() const { return scales_; }
    int max_membership() const;
    // inspected = scanned scales. Throws EstimatorFault when no scanned
    // scale puts the pair in a common home cluster.
    SpannerPath query(int u, int v) const override;

private:
    int k_;
    double eps_;
    Estimator est_;
    int lo_ = 0;
    std::vector<Scale> scales_;
};

// Shortest path decomposition: per level, one shortest path per component.
struct SpdEntry {
    int level;
    int component;
    std::vector<int> path;
};

struct Spd {
    std::vector<SpdEntry> entries;
    int depth() const;
};

Spd read_spd(std::istream& in);
void write_spd(std::ostream& out, const Spd& spd);
Spd heavy_path_spd(const WeightedGraph& tree);
// Removes separator bag vertices one at a time as single-vertex paths.
Spd treewidth_spd(const WeightedGraph& g, const TreeDecomposition& td);

// Landmark spanner over an SPD; stretch 1+eps.
class SpdSpanner final : public PathReportingSpanner {
public:
    SpdSpanner(const WeightedGraph& g, const Spd& spd, double eps);
    int depth() const { return depth_; }
    int max_landmarks() const { return max_landmarks_; }
    SpannerPath query(int u, int v) const override;

private:
    struct Landmark {
        int pos;      // 0-indexed on the entry's path
        double dist;  // distance inside the component
    };
    struct Level {
        int entry;
        std::vector<Landmark> marks;  // sorted by pos
    };
    int depth_ = 0;
    int max_landmarks_ = 0;
    std::vector<std::vector<int>> paths_;
    std::vector<std::shared_ptr<TwoHopPathSpanner>> two_;
    std::vector<std::vector<Level>> chain_;  // per vertex, root component first
};

// Validates and throws an Error naming the offending level.
void validate_spd(const WeightedGraph& g, const Spd& spd);

// Fault-tolerant spanners: the query avoids the given faulty points.
class FaultTolerantSpanner {
public:
    virtual ~FaultTolerantSpanner() = default;
    int n() const { return n_; }
    int f() const { return f_; }
    double stretch() const { return stretch_; }
    const EdgeSet& edge_set() const { return es_; }
    // Throws when |faults| > f. u and v must not be faulty.
    virtual SpannerPath query(int u, int v, const std::vector<int>& faults) const = 0;

protected:
    FaultTolerantSpanner(int n, int f, double stretch) : n_(n), f_(f), stretch_(stretch) {}
    std::vector<char> fault_mask(int u, int v, const std::vector<int>& faults) const;

    int n_, f_;
    double stretch_;
    EdgeSet es_;
};

std::unique_ptr<FaultTolerantSpanner> ft_spanner_from_family(const OrderingFamily& fam, const Metric& m, int f);

// Spanner oracles: (terminals, L) -> edges, tracking weak sparsity.
class SpannerOracle {
public:
    virtual ~SpannerOracle() = default;
    std::vector<Edge> operator()(const std::vector<int>& terminals, double L);
    double max_weak_sparsity() const { return max_ws_; }
    long long invocations() const { return calls_; }
    double stretch() const { return stretch_; }

protected:
    explicit SpannerOracle(double stretch) : stretch_(stretch) {}
    virtual void emit(const std::vector<int>& terminals, double L, EdgeSet& out) const = 0;

private:
    double stretch_;
    double max_ws_ = 0;
    long long calls_ = 0;
};

// Joins terminals adjacent in some ordering when within 2L. The 1+8 rho
// stretch bound needs rho < 1/4; weak sparsity <= 2 tau holds for any rho.
class ClassicSpannerOracle final : public SpannerOracle {
public:
    ClassicSpannerOracle(const OrderingFamily& fam, const Metric& m);

private:
    void emit(const std::vector<int>& terminals, double L, EdgeSet& out) const override;
    OrderingFamily fam_;  // copied, so temporaries are safe
    const Metric* m_;
};

// Per-ordering h-hop path spanners over the terminals, edges capped at 2 rho L.
class TriangleSpannerOracle final : public SpannerOracle {
public:
    TriangleSpannerOracle(const OrderingFamily& fam, const Metric& m, int hops = 2);

private:
    void emit(const std::vector<int>& terminals, double L, EdgeSet& out) const override;
    OrderingFamily fam_;  // copied, so temporaries are safe
    const Metric* m_;
    int hops_;
};

struct SpannerCheck {
    long long pairs = 0;
    long long failures = 0;  // missing path, bad edge, too many hops, stretch over bound
    double max_stretch = 0;
    int max_hops = 0;
    long long max_inspected = 0;
    std::vector<std::pair<int, int>> failed;  // first few
    bool pass() const { return failures == 0; }
};

// All-pairs check of reported paths against the metric.
SpannerCheck check_spanner(const PathReportingSpanner& s, const Metric& m);
SpannerCheck check_ft_spanner(const FaultTolerantSpanner& s, const Metric& m, const std::vector<int>& faults);
// Does every edge weight equal the metric distance?
bool edge_weights_match(const EdgeSet& es, const Metric& m);
// Distances in the graph formed by the edges (n vertices).
std::vector<std::vector<double>> edge_set_distances(int n, const std::vector<Edge>& edges, const std::vector<int>& sources);

}  // namespace lso
