#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "lso/common.hpp"

namespace lso {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Row-major point storage, ids are 0..size()-1.
class PointSet {
public:
    PointSet() = default;
    PointSet(int dim, std::vector<double> coords);
    static PointSet from_rows(const std::vector<std::vector<double>>& rows);

    int dim() const { return dim_; }
    int size() const { return dim_ == 0 ? 0 : static_cast<int>(coords_.size() / dim_); }
    std::span<const double> operator[](int i) const { return {coords_.data() + static_cast<size_t>(i) * dim_, static_cast<size_t>(dim_)}; }
    const std::vector<double>& coords() const { return coords_; }
    PointSet subset(const std::vector<int>& ids) const;
    PointSet scaled(double s) const;

private:
    int dim_ = 0;
    std::vector<double> coords_;
};

double lp_distance(std::span<const double> x, std::span<const double> y, double p);

class Metric {
public:
    virtual ~Metric() = default;
    virtual int size() const = 0;
    virtual double operator()(int a, int b) const = 0;
    // Graph and ultrametric distances are compared without tolerance.
    virtual bool exact() const { return false; }
};

class LpMetric final : public Metric {
public:
    LpMetric(PointSet ps, double p);
    int size() const override { return ps_.size(); }
    double operator()(int a, int b) const override { return lp_distance(ps_[a], ps_[b], p_); }
    double p() const { return p_; }
    const PointSet& points() const { return ps_; }

private:
    PointSet ps_;
    double p_;
};

class MatrixMetric final : public Metric {
public:
    MatrixMetric() = default;
    MatrixMetric(int n, std::vector<double> d, bool exact);
    static MatrixMetric from(const Metric& m);
    int size() const override { return n_; }
    double operator()(int a, int b) const override { return d_[static_cast<size_t>(a) * n_ + b]; }
    bool exact() const override { return exact_; }
    const std::vector<double>& data() const { return d_; }

private:
    int n_ = 0;
    std::vector<double> d_;
    bool exact_ = false;
};

// Metric restricted to a subset of ids of a base metric.
class SubMetric final : public Metric {
public:
    SubMetric(const Metric& base, std::vector<int> ids) : base_(base), ids_(std::move(ids)) {}
    int size() const override { return static_cast<int>(ids_.size()); }
    double operator()(int a, int b) const override { return base_(ids_[a], ids_[b]); }
    bool exact() const override { return base_.exact(); }

private:
    const Metric& base_;
    std::vector<int> ids_;
};

struct Edge {
    int u, v;
    double w;
};

struct WeightedGraph {
    int n = 0;
    std::vector<Edge> edges;

    void validate() const;
    std::vector<std::vector<std::pair<int, double>>> adjacency() const;
    bool is_tree() const;
    bool connected() const;
};

// dist[s][v] for each s in sources; throws on disconnected input.
std::vector<std::vector<double>> graph_distances(const WeightedGraph& g, const std::vector<int>& sources);
std::vector<double> dijkstra(const std::vector<std::vector<std::pair<int, double>>>& adj, int src);
MatrixMetric graph_metric(const WeightedGraph& g);

// Greedy net in ascending id order.
std::vector<int> build_epsilon_net(const Metric& m, double r);
std::vector<int> build_epsilon_net(const Metric& m, const std::vector<int>& subset, double r);

double min_distance(const Metric& m);
double diameter(const Metric& m);
double aspect_ratio(const Metric& m);

PointSet read_points(std::istream& in);
WeightedGraph read_graph(std::istream& in);
// "matrix n" header followed by n rows.
MatrixMetric read_matrix(std::istream& in);
void write_points(std::ostream& out, const PointSet& ps);
void write_graph(std::ostream& out, const WeightedGraph& g);
void write_matrix(std::ostream& out, const MatrixMetric& m);

}  // namespace lso
