#include "lso/hop.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace lso {

namespace {

int ceil_log2(long long n) {
    int d = 0;
    while ((1LL << d) < n) ++d;
    return d;
}

void dedupe(std::vector<std::pair<int, int>>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

TwoHopPathSpanner::TwoHopPathSpanner(int n) : n_(n), depth_(n > 0 ? ceil_log2(n) : 0), e_(n + 1) {
    if (n < 0) throw Error("two-hop: n must be >= 0");
    if (n <= 1) return;
    // Build on [1, 2^depth]; keep indices <= n. Hub of a segment is the last
    // vertex of its left half; every other segment vertex points to it.
    long long N = 1LL << depth_;
    for (long long len = N; len >= 2; len >>= 1) {
        for (long long lo = 1; lo <= N; lo += len) {
            long long hub = lo + len / 2 - 1;
            if (hub > n) break;
            long long hi = std::min<long long>(lo + len - 1, n);
            for (long long i = lo; i <= hi; ++i)
                if (i != hub) e_[i].push_back(static_cast<int>(hub));
        }
    }
    for (auto& v : e_) std::sort(v.begin(), v.end());
}

bool TwoHopPathSpanner::has_edge(int i, int l) const {
    if (i == l) return true;
    auto& v = e_[i];
    if (std::binary_search(v.begin(), v.end(), l)) return true;
    auto& w = e_[l];
    return std::binary_search(w.begin(), w.end(), i);
}

long long TwoHopPathSpanner::responsibility_count() const {
    long long s = n_;
    for (auto& v : e_) s += static_cast<long long>(v.size());
    return s;
}

std::vector<std::pair<int, int>> TwoHopPathSpanner::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= n_; ++i)
        for (int l : e_[i]) out.push_back({std::min(i, l), std::max(i, l)});
    dedupe(out);
    return out;
}

int TwoHopPathSpanner::query(int i, int j) const {
    if (i < 1 || j > n_ || i > j) throw Error("two-hop query: out of range");
    if (i == j) return i;
    unsigned x = static_cast<unsigned>(i - 1) ^ static_cast<unsigned>(j - 1);
    int k = 31 - std::countl_zero(x);
    return static_cast<int>(((j - 1) >> k) << k);
}

FtTwoHopPathSpanner::FtTwoHopPathSpanner(int n, int f) : n_(n), f_(f + (f & 1)), requested_f_(f), e_(n + 1) {
    if (n < 0 || f < 0) throw Error("ft two-hop: n and f must be >= 0");
    if (n <= 1) return;
    depth_ = ceil_log2(n);
    long long N = 1LL << depth_;
    clique_size_ = 1;
    while (clique_size_ * 2 <= f_ + 2) clique_size_ *= 2;
    int half = f_ / 2;
    for (long long len = N; len >= 2; len >>= 1) {
        for (long long lo = 1; lo <= n; lo += len) {
            long long hi = std::min<long long>(lo + len - 1, n);
            if (len <= clique_size_) {
                for (long long a = lo; a <= hi; ++a)
                    for (long long b = lo; b <= hi; ++b)
                        if (a != b) e_[a].push_back(static_cast<int>(b));
                continue;
            }
            long long hub = lo + len / 2 - 1;
            long long blo = hub - half, bhi = std::min<long long>(hub + half, n);
            for (long long i = lo; i <= hi; ++i)
                for (long long b = blo; b <= bhi; ++b)
                    if (b != i) e_[i].push_back(static_cast<int>(b));
        }
        if (len <= clique_size_) break;
    }
    for (auto& v : e_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
}

bool FtTwoHopPathSpanner::has_edge(int i, int l) const {
    if (i == l) return true;
    auto& v = e_[i];
    if (std::binary_search(v.begin(), v.end(), l)) return true;
    auto& w = e_[l];
    return std::binary_search(w.begin(), w.end(), i);
}

long long FtTwoHopPathSpanner::entry_count() const {
    long long s = 0;
    for (auto& v : e_) s += static_cast<long long>(v.size());
    return s;
}

std::vector<std::pair<int, int>> FtTwoHopPathSpanner::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= n_; ++i)
        for (int l : e_[i]) out.push_back({std::min(i, l), std::max(i, l)});
    dedupe(out);
    return out;
}

long long FtTwoHopPathSpanner::edge_bound() const {
    long long N = 1LL << depth_;
    return (N * depth_ + 1) * (f_ + 1);
}

KHopPathSpanner::KHopPathSpanner(int n, int hops) : n_(n), hops_(hops), adj_(n + 1) {
    if (hops != 3 && hops != 4) throw Error("k-hop path spanner: hops must be 3 or 4");
    if (n >= 1) build(1, n);
    dedupe(edges_);
    for (auto [a, b] : edges_) {
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }
    for (auto& v : adj_) std::sort(v.begin(), v.end());
}

void KHopPathSpanner::add(int a, int b) {
    if (a != b) edges_.push_back({std::min(a, b), std::max(a, b)});
}

int KHopPathSpanner::build(int lo, int hi) {
    int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[id].lo = lo;
    nodes_[id].hi = hi;
    int len = hi - lo + 1;
    if (len <= 4) {
        nodes_[id].clique = true;
        for (int a = lo; a <= hi; ++a)
            for (int b = a + 1; b <= hi; ++b) add(a, b);
        return id;
    }
    int block = hops_ == 3 ? static_cast<int>(std::ceil(std::sqrt(static_cast<double>(len))))
                           : std::max(2, ceil_log2(len));
    std::vector<int> bounds;
    for (int s = lo; s <= hi; s += block) {
        int e = std::min(hi, s + block - 1);
        for (int v = s; v <= e; ++v) {
            add(v, s);
            add(v, e);
        }
        bounds.push_back(s);
        if (e != s) bounds.push_back(e);
    }
    if (hops_ == 3) {
        for (size_t a = 0; a < bounds.size(); ++a)
            for (size_t b = a + 1; b < bounds.size(); ++b) add(bounds[a], bounds[b]);
    } else {
        TwoHopPathSpanner two(static_cast<int>(bounds.size()));
        for (int a = 1; a <= two.n(); ++a)
            for (int l : two.responsible(a)) add(bounds[a - 1], bounds[l - 1]);
        nodes_[id].two = std::move(two);
    }
    nodes_[id].block = block;
    nodes_[id].bounds = bounds;
    std::vector<int> kids;
    for (int s = lo; s <= hi; s += block) kids.push_back(build(s, std::min(hi, s + block - 1)));
    nodes_[id].child = std::move(kids);
    return id;
}

bool KHopPathSpanner::has_edge(int a, int b) const {
    if (a == b) return true;
    auto& v = adj_[a];
    return std::binary_search(v.begin(), v.end(), b);
}

std::vector<int> KHopPathSpanner::query(int i, int j) const {
    if (i < 1 || j > n_ || i > j) throw Error("k-hop query: out of range");
    int id = 0;
    std::vector<int> path;
    while (true) {
        const Node& nd = nodes_[id];
        if (nd.clique) {
            path = {i, j};
            break;
        }
        int bi = (i - nd.lo) / nd.block, bj = (j - nd.lo) / nd.block;
        if (bi == bj) {
            id = nd.child[bi];
            continue;
        }
        int a = std::min(nd.hi, nd.lo + (bi + 1) * nd.block - 1);
        int c = nd.lo + bj * nd.block;
        if (hops_ == 3) {
            path = {i, a, c, j};
        } else {
            int ia = static_cast<int>(std::lower_bound(nd.bounds.begin(), nd.bounds.end(), a) - nd.bounds.begin());
            int ic = static_cast<int>(std::lower_bound(nd.bounds.begin(), nd.bounds.end(), c) - nd.bounds.begin());
            int m = nd.bounds[nd.two.query(ia + 1, ic + 1) - 1];
            path = {i, a, m, c, j};
        }
        break;
    }
    path.erase(std::unique(path.begin(), path.end()), path.end());
    return path;
}

}  // namespace lso
