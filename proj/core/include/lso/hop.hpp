#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lso/common.hpp"

namespace lso {

// 2-hop 1-spanner of the path 1..n. E_i holds the hub midpoints of i
// (sorted, self excluded); a query (i,j) returns l with i<=l<=j such that
// {i,l} and {l,j} are edges (l==i means the direct edge).
class TwoHopPathSpanner {
public:
    explicit TwoHopPathSpanner(int n = 0);

    int n() const { return n_; }
    int depth() const { return depth_; }
    const std::vector<int>& responsible(int i) const { return e_[i]; }
    bool has_edge(int i, int l) const;

    // Sigma |E_i| counting one bottom-level self entry per index; equals
    // n*log2(n)+1 for powers of two.
    long long responsibility_count() const;
    // Distinct non-loop edges {a,b}, a<b.
    std::vector<std::pair<int, int>> edges() const;

    int query(int i, int j) const;

private:
    int n_;
    int depth_;
    std::vector<std::vector<int>> e_;
};

// Middle-block redundancy for up to f vertex faults (f rounded up to even).
class FtTwoHopPathSpanner {
public:
    FtTwoHopPathSpanner(int n = 0, int f = 0);

    int n() const { return n_; }
    int f() const { return f_; }
    int requested_f() const { return requested_f_; }
    const std::vector<int>& responsible(int i) const { return e_[i]; }
    bool has_edge(int i, int l) const;
    long long entry_count() const;
    std::vector<std::pair<int, int>> edges() const;
    // Theoretical cap (2^d*d+1)(f+1) for the padded size 2^d.
    long long edge_bound() const;

    // faulty(x) must be cheap; at most f faults are assumed (not checked here).
    template <class Faulty>
    int query(int i, int j, Faulty&& faulty) const {
        if (i < 1 || j > n_ || i > j) throw Error("ft two-hop query: out of range");
        if (i == j) return i;
        unsigned x = static_cast<unsigned>(i - 1) ^ static_cast<unsigned>(j - 1);
        int k = 31 - __builtin_clz(x);
        if ((1LL << (k + 1)) <= clique_size_) return i;
        int hub = ((j - 1) >> k) << k;  // 1-indexed hub = last of left half
        int lo = std::max(i, hub - f_ / 2), hi = std::min(j, hub + f_ / 2);
        for (int l = lo; l <= hi; ++l)
            if (l == i || l == j || !faulty(l)) return l;
        throw Error("ft two-hop query: no surviving midpoint (more than f faults?)");
    }

private:
    int n_, f_, requested_f_;
    long long clique_size_ = 1;
    int depth_ = 0;
    std::vector<std::vector<int>> e_;
};

// h-hop 1-spanners of the path for h = 3 (sqrt blocks) and h = 4 (log blocks
// joined by a 2-hop structure over block boundaries).
class KHopPathSpanner {
public:
    KHopPathSpanner(int n = 0, int hops = 3);

    int n() const { return n_; }
    int hops() const { return hops_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool has_edge(int a, int b) const;
    // Monotone path i = p0 <= p1 <= ... <= pk = j, consecutive duplicates removed.
    std::vector<int> query(int i, int j) const;

private:
    struct Node {
        int lo, hi;
        bool clique = false;
        int block = 0;             // block length
        std::vector<int> child;    // node per block
        std::vector<int> bounds;   // boundary positions, sorted (4-hop)
        TwoHopPathSpanner two;     // over bounds (4-hop)
    };
    int build(int lo, int hi);
    void add(int a, int b);

    int n_, hops_;
    std::vector<Node> nodes_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;  // sorted neighbour lists
};

}  // namespace lso
