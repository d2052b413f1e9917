#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lso/doubling.hpp"
#include "lso/hop.hpp"
#include "lso/metric.hpp"
#include "lso/ordering.hpp"

namespace lso {

// Dynamic predecessor structure over [0, N): sorted buckets of width
// 2^ceil(log2 log2 N) under a 64-ary summary bitset of non-empty buckets.
// The minimum is cached and refreshed through successor(0) on deletion.
class PredecessorSet {
public:
    explicit PredecessorSet(uint32_t universe = 1);

    uint32_t universe() const { return n_; }
    size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }
    bool contains(uint32_t x) const;
    bool insert(uint32_t x);  // false if present
    bool erase(uint32_t x);   // false if absent
    // Largest element <= q / smallest element >= q.
    std::optional<uint32_t> predecessor(uint32_t q) const;
    std::optional<uint32_t> successor(uint32_t q) const;
    std::optional<uint32_t> minimum() const { return count_ ? std::optional<uint32_t>(min_) : std::nullopt; }

private:
    void check(uint32_t x) const;
    // Summary over bucket ids.
    void mark(uint32_t b, bool on);
    std::optional<uint32_t> next_bucket(uint32_t b) const;  // >= b
    std::optional<uint32_t> prev_bucket(uint32_t b) const;  // <= b

    uint32_t n_;
    int shift_;
    std::vector<std::vector<uint32_t>> buckets_;
    std::vector<std::vector<uint64_t>> summary_;  // level 0 = bucket bits
    size_t count_ = 0;
    uint32_t min_ = 0;
};

struct NnsAnswer {
    int point = -1;
    double estimate = kInf;  // distance estimate from labels (exact for ultrametrics)
};

enum class NnsStatus { Ok, Empty, NoSharedOrdering };

struct NnsResult {
    NnsStatus status = NnsStatus::Empty;
    NnsAnswer answer;
    bool ok() const { return status == NnsStatus::Ok; }
};

// Heavy-path LCA labels: per leaf, the sequence of heavy paths on its root
// path with the exit node on each.
struct LcaLabel {
    struct Entry {
        int path;
        int exit_index;
        int exit_node;
        double gamma;
    };
    std::vector<Entry> entries;
    int words() const { return static_cast<int>(entries.size()) * 4; }
};

std::vector<LcaLabel> build_lca_labels(const Hst& h);  // indexed by point
struct LcaResult {
    int node;
    double gamma;
};
LcaResult lca_from_labels(const LcaLabel& a, const LcaLabel& b);

class UltrametricNns {
public:
    explicit UltrametricNns(const Hst& h);
    void insert(int x);
    void erase(int x);
    bool contains(int x) const { return set_.contains(pos_[x]); }
    NnsResult query(int q) const;
    const LcaLabel& label(int x) const { return labels_[x]; }

private:
    std::vector<LcaLabel> labels_;
    std::vector<int> pos_, at_;
    PredecessorSet set_;
};

struct RootedNnsLabel {
    struct Entry {
        int ordering;
        int position;
        double root_dist;
    };
    std::vector<Entry> entries;
};

class RootedNns {
public:
    RootedNns(const OrderingFamily& fam, const Metric& m);
    void insert(int x);
    void erase(int x);
    bool contains(int x) const { return present_[x]; }
    NnsResult query(int q) const;
    const RootedNnsLabel& label(int x) const { return labels_[x]; }
    size_t max_label_entries() const;

private:
    std::vector<RootedNnsLabel> labels_;
    std::vector<std::vector<int>> perm_;  // per ordering
    std::vector<PredecessorSet> sets_;
    std::vector<char> present_;
    int size_ = 0;
};

struct TriangleNnsLabel {
    struct Hop {
        int midpoint;  // 1-indexed position
        double dist;
    };
    struct PerOrdering {
        int position;            // 1-indexed
        std::vector<Hop> hops;   // sorted by midpoint
    };
    std::vector<PerOrdering> per;
    size_t entries() const;
};

class TriangleNns {
public:
    TriangleNns(const OrderingFamily& fam, const Metric& m);
    void insert(int x);
    void erase(int x);
    bool contains(int x) const { return present_[x]; }
    NnsResult query(int q) const;
    const TriangleNnsLabel& label(int x) const { return labels_[x]; }
    size_t max_label_entries() const;
    double rho() const { return rho_; }

private:
    double hop_dist(const TriangleNnsLabel& l, int s, int mid) const;

    double rho_;
    TwoHopPathSpanner two_;
    std::vector<TriangleNnsLabel> labels_;
    std::vector<std::vector<int>> perm_;
    std::vector<PredecessorSet> sets_;
    std::vector<char> present_;
    int size_ = 0;
};

enum class NnsStrategy { Rooted, Triangle, Ultrametric, DistanceLabeling, JohnsonLindenstrauss };
NnsStrategy nns_strategy_from_string(const std::string& s);
// Throws OutOfScope for strategies whose machinery lives in cited work.
void require_in_scope(NnsStrategy s);

}  // namespace lso
