#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lso/metric.hpp"

namespace lso {

enum class LsoKind { Classic, Triangle, Rooted };

std::string to_string(LsoKind k);
LsoKind kind_from_string(const std::string& s);

struct Ordering {
    std::vector<int> perm;
    std::vector<int> pos;  // size n, -1 when absent
    int root = -1;

    Ordering() = default;
    Ordering(std::vector<int> perm, int n, int root = -1);
    int size() const { return static_cast<int>(perm.size()); }
    bool contains(int x) const { return pos[x] >= 0; }
};

struct OrderingFamily {
    LsoKind kind = LsoKind::Triangle;
    int n = 0;
    double rho = 1;
    std::vector<Ordering> orderings;
    // Optional: index of an ordering expected to serve (x,y), or -1.
    std::function<int(int, int)> hint;

    int tau() const;  // max per-point membership
    std::vector<std::vector<int>> memberships() const;
    void check_structure() const;
};

struct Violation {
    int x, y;
    double best;  // best observed ratio, inf when nothing serves the pair
};

struct VerificationReport {
    long long pairs_checked = 0;
    std::vector<Violation> violations;
    double max_observed_stretch = 0;
    int max_membership = 0;
    bool pass() const { return violations.empty(); }
};

VerificationReport verify_classic(const OrderingFamily& fam, const Metric& m);
VerificationReport verify_triangle(const OrderingFamily& fam, const Metric& m);
VerificationReport verify_rooted(const OrderingFamily& fam, const Metric& m);

// Does ordering o split the window of (x,y) into a prefix near x and a
// suffix near y with radius r?
bool classic_window_ok(const Ordering& o, const Metric& m, int x, int y, double r);
// Window diameters D(i,j) of one ordering, row-major size*size.
std::vector<double> window_diameters(const Ordering& o, const Metric& m);
double window_diameter_naive(const Ordering& o, const Metric& m, int i, int j);

// Rooted LSO for a tree metric via vertex-centroid decomposition.
OrderingFamily build_rooted_lso_tree(const WeightedGraph& tree);

struct TreeDecomposition {
    int n = 0;
    std::vector<std::vector<int>> bags;
    std::vector<std::pair<int, int>> edges;

    // Throws naming the violated axiom.
    void validate(const WeightedGraph& g) const;
    int width() const;
};

TreeDecomposition read_tree_decomposition(std::istream& in);
void write_tree_decomposition(std::ostream& out, const TreeDecomposition& td);
// Path-style decomposition of an r x c grid, bags of width min(r,c)+1.
TreeDecomposition grid_tree_decomposition(int rows, int cols);
// Natural width-1 decomposition of a tree: one bag per edge.
TreeDecomposition tree_tree_decomposition(const WeightedGraph& tree);

struct TreewidthLso {
    OrderingFamily family;
    // Laminar clusters: separator bag, parent cluster, orderings created there.
    struct Cluster {
        int parent = -1;
        int bag = -1;
        std::vector<int> orderings;
    };
    std::vector<Cluster> clusters;
    // Chain of clusters containing each vertex, root first.
    std::vector<std::vector<int>> chain;

    // Deepest cluster containing both; its separator bag separates u and v.
    int separating_cluster(int u, int v) const;
};

TreewidthLso build_rooted_lso_treewidth(const WeightedGraph& g, const TreeDecomposition& td);

}  // namespace lso
