#include "lso/nns.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace lso {

PredecessorSet::PredecessorSet(uint32_t universe) : n_(std::max<uint32_t>(universe, 1)) {
    int lg = std::max(1, static_cast<int>(std::bit_width(n_ - 1)));
    shift_ = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(lg - 1))));
    uint64_t nb = ((static_cast<uint64_t>(n_) - 1) >> shift_) + 1;
    buckets_.resize(nb);
    uint64_t bits = nb;
    do {
        uint64_t words = (bits + 63) / 64;
        summary_.emplace_back(words, 0);
        bits = words;
    } while (bits > 1);
}

void PredecessorSet::check(uint32_t x) const {
    if (x >= n_) throw Error("predecessor set: element " + std::to_string(x) + " outside universe " + std::to_string(n_));
}

void PredecessorSet::mark(uint32_t b, bool on) {
    uint64_t i = b;
    for (auto& lvl : summary_) {
        uint64_t w = i >> 6, bit = 1ULL << (i & 63);
        bool was_zero = lvl[w] == 0;
        if (on) {
            lvl[w] |= bit;
            if (!was_zero) return;
        } else {
            lvl[w] &= ~bit;
            if (lvl[w] != 0) return;
        }
        i = w;
    }
}

std::optional<uint32_t> PredecessorSet::next_bucket(uint32_t b) const {
    // Climb until a word with a set bit at or after the index, then descend.
    uint64_t i = b;
    size_t lvl = 0;
    while (true) {
        if (lvl == summary_.size()) return std::nullopt;
        const auto& bits = summary_[lvl];
        uint64_t w = i >> 6;
        if (w >= bits.size()) return std::nullopt;
        uint64_t m = bits[w] & (~0ULL << (i & 63));
        if (m) {
            i = (w << 6) + std::countr_zero(m);
            break;
        }
        i = w + 1;
        ++lvl;
    }
    while (lvl-- > 0) i = (i << 6) + std::countr_zero(summary_[lvl][i]);
    return static_cast<uint32_t>(i);
}

std::optional<uint32_t> PredecessorSet::prev_bucket(uint32_t b) const {
    int64_t i = b;
    size_t lvl = 0;
    while (true) {
        if (i < 0 || lvl == summary_.size()) return std::nullopt;
        const auto& bits = summary_[lvl];
        uint64_t w = static_cast<uint64_t>(i) >> 6;
        int sh = 63 - static_cast<int>(i & 63);
        uint64_t m = bits[w] & (~0ULL >> sh);
        if (m) {
            i = static_cast<int64_t>((w << 6) + 63 - std::countl_zero(m));
            break;
        }
        i = static_cast<int64_t>(w) - 1;
        ++lvl;
    }
    while (lvl-- > 0) i = (i << 6) + 63 - std::countl_zero(summary_[lvl][i]);
    return static_cast<uint32_t>(i);
}

bool PredecessorSet::contains(uint32_t x) const {
    if (x >= n_) return false;
    auto& b = buckets_[x >> shift_];
    return std::binary_search(b.begin(), b.end(), x);
}

bool PredecessorSet::insert(uint32_t x) {
    check(x);
    auto& b = buckets_[x >> shift_];
    auto it = std::lower_bound(b.begin(), b.end(), x);
    if (it != b.end() && *it == x) return false;
    b.insert(it, x);
    if (b.size() == 1) mark(x >> shift_, true);
    if (count_ == 0 || x < min_) min_ = x;
    ++count_;
    return true;
}

bool PredecessorSet::erase(uint32_t x) {
    check(x);
    auto& b = buckets_[x >> shift_];
    auto it = std::lower_bound(b.begin(), b.end(), x);
    if (it == b.end() || *it != x) return false;
    b.erase(it);
    if (b.empty()) mark(x >> shift_, false);
    --count_;
    if (count_ > 0 && x == min_) min_ = *successor(0);
    return true;
}

std::optional<uint32_t> PredecessorSet::predecessor(uint32_t q) const {
    if (count_ == 0) return std::nullopt;
    if (q >= n_) q = n_ - 1;
    uint32_t bi = q >> shift_;
    auto& b = buckets_[bi];
    auto it = std::upper_bound(b.begin(), b.end(), q);
    if (it != b.begin()) return *(it - 1);
    if (bi == 0) return std::nullopt;
    auto pb = prev_bucket(bi - 1);
    if (!pb) return std::nullopt;
    return buckets_[*pb].back();
}

std::optional<uint32_t> PredecessorSet::successor(uint32_t q) const {
    if (count_ == 0 || q >= n_) return std::nullopt;
    uint32_t bi = q >> shift_;
    auto& b = buckets_[bi];
    auto it = std::lower_bound(b.begin(), b.end(), q);
    if (it != b.end()) return *it;
    if (bi + 1 >= buckets_.size()) return std::nullopt;
    auto nb = next_bucket(bi + 1);
    if (!nb) return std::nullopt;
    return buckets_[*nb].front();
}

std::vector<LcaLabel> build_lca_labels(const Hst& h) {
    int N = static_cast<int>(h.gamma.size());
    std::vector<int> size(N, 1), order{h.root};
    for (size_t i = 0; i < order.size(); ++i)
        for (int c : h.children[order[i]]) order.push_back(c);
    for (size_t i = order.size(); i-- > 1;) size[h.parent[order[i]]] += size[order[i]];
    std::vector<int> path(N), index(N), head;
    for (int v : order) {
        int p = h.parent[v];
        bool heavy = false;
        if (p >= 0) {
            int best = -1;
            for (int c : h.children[p])
                if (best < 0 || size[c] > size[best]) best = c;
            heavy = best == v;
        }
        if (p >= 0 && heavy) {
            path[v] = path[p];
            index[v] = index[p] + 1;
        } else {
            path[v] = static_cast<int>(head.size());
            index[v] = 0;
            head.push_back(v);
        }
    }
    std::vector<LcaLabel> out(h.num_points());
    for (int x = 0; x < h.num_points(); ++x) {
        auto& e = out[x].entries;
        for (int u = h.leaf_node[x]; u >= 0; u = h.parent[head[path[u]]]) e.push_back({path[u], index[u], u, h.gamma[u]});
        std::reverse(e.begin(), e.end());
    }
    return out;
}

LcaResult lca_from_labels(const LcaLabel& a, const LcaLabel& b) {
    size_t k = std::min(a.entries.size(), b.entries.size());
    for (size_t r = 0; r < k; ++r) {
        const auto& ea = a.entries[r];
        const auto& eb = b.entries[r];
        if (ea.exit_index != eb.exit_index) {
            const auto& e = ea.exit_index < eb.exit_index ? ea : eb;
            return {e.exit_node, e.gamma};
        }
        bool more = r + 1 < k && a.entries[r + 1].path == b.entries[r + 1].path;
        if (!more) return {ea.exit_node, ea.gamma};
    }
    throw Error("lca labels: empty label");
}

UltrametricNns::UltrametricNns(const Hst& h) : labels_(build_lca_labels(h)), set_(h.num_points()) {
    at_ = h.preorder_points();
    pos_.assign(h.num_points(), 0);
    for (int i = 0; i < static_cast<int>(at_.size()); ++i) pos_[at_[i]] = i;
}

void UltrametricNns::insert(int x) { set_.insert(pos_[x]); }
void UltrametricNns::erase(int x) { set_.erase(pos_[x]); }

NnsResult UltrametricNns::query(int q) const {
    NnsResult r;
    if (set_.empty()) return r;
    r.status = NnsStatus::Ok;
    uint32_t p = pos_[q];
    if (set_.contains(p)) {
        r.answer = {q, 0};
        return r;
    }
    for (auto c : {set_.predecessor(p), set_.successor(p)}) {
        if (!c) continue;
        int y = at_[*c];
        double d = lca_from_labels(labels_[q], labels_[y]).gamma;
        if (d < r.answer.estimate || (d == r.answer.estimate && y < r.answer.point)) r.answer = {y, d};
    }
    return r;
}

RootedNns::RootedNns(const OrderingFamily& fam, const Metric& m) : labels_(fam.n), present_(fam.n, 0) {
    if (fam.kind != LsoKind::Rooted) throw Error("rooted nns: family must be rooted");
    for (int s = 0; s < static_cast<int>(fam.orderings.size()); ++s) {
        const auto& o = fam.orderings[s];
        perm_.push_back(o.perm);
        sets_.emplace_back(static_cast<uint32_t>(o.size()));
        for (int i = 0; i < o.size(); ++i) labels_[o.perm[i]].entries.push_back({s, i, m(o.perm[i], o.root)});
    }
}

void RootedNns::insert(int x) {
    if (present_[x]) return;
    present_[x] = 1;
    ++size_;
    for (auto& e : labels_[x].entries) sets_[e.ordering].insert(e.position);
}

void RootedNns::erase(int x) {
    if (!present_[x]) return;
    present_[x] = 0;
    --size_;
    for (auto& e : labels_[x].entries) sets_[e.ordering].erase(e.position);
}

size_t RootedNns::max_label_entries() const {
    size_t b = 0;
    for (auto& l : labels_) b = std::max(b, l.entries.size());
    return b;
}

NnsResult RootedNns::query(int q) const {
    NnsResult r;
    if (size_ == 0) return r;
    if (present_[q]) {
        r.status = NnsStatus::Ok;
        r.answer = {q, 0};
        return r;
    }
    for (auto& e : labels_[q].entries) {
        auto mn = sets_[e.ordering].minimum();
        if (!mn) continue;
        int y = perm_[e.ordering][*mn];
        double yd = 0;
        for (auto& f : labels_[y].entries)
            if (f.ordering == e.ordering) yd = f.root_dist;
        double est = e.root_dist + yd;
        if (est < r.answer.estimate || (est == r.answer.estimate && y < r.answer.point)) r.answer = {y, est};
    }
    r.status = r.answer.point >= 0 ? NnsStatus::Ok : NnsStatus::NoSharedOrdering;
    return r;
}

size_t TriangleNnsLabel::entries() const {
    size_t s = 0;
    for (auto& p : per) s += 1 + p.hops.size();
    return s;
}

TriangleNns::TriangleNns(const OrderingFamily& fam, const Metric& m)
    : rho_(fam.rho), two_(fam.n), labels_(fam.n), present_(fam.n, 0) {
    if (fam.kind != LsoKind::Triangle) throw Error("triangle nns: family must be triangle");
    fam.check_structure();
    for (const auto& o : fam.orderings) {
        perm_.push_back(o.perm);
        sets_.emplace_back(static_cast<uint32_t>(fam.n));
        for (int i = 0; i < o.size(); ++i) {
            int x = o.perm[i];
            TriangleNnsLabel::PerOrdering po{i + 1, {}};
            for (int l : two_.responsible(i + 1)) po.hops.push_back({l, m(x, o.perm[l - 1])});
            labels_[x].per.push_back(std::move(po));
        }
    }
}

void TriangleNns::insert(int x) {
    if (present_[x]) return;
    present_[x] = 1;
    ++size_;
    for (size_t s = 0; s < sets_.size(); ++s) sets_[s].insert(labels_[x].per[s].position - 1);
}

void TriangleNns::erase(int x) {
    if (!present_[x]) return;
    present_[x] = 0;
    --size_;
    for (size_t s = 0; s < sets_.size(); ++s) sets_[s].erase(labels_[x].per[s].position - 1);
}

size_t TriangleNns::max_label_entries() const {
    size_t b = 0;
    for (auto& l : labels_) b = std::max(b, l.entries());
    return b;
}

double TriangleNns::hop_dist(const TriangleNnsLabel& l, int s, int mid) const {
    const auto& po = l.per[s];
    if (po.position == mid) return 0;
    auto it = std::lower_bound(po.hops.begin(), po.hops.end(), mid,
                               [](const TriangleNnsLabel::Hop& h, int v) { return h.midpoint < v; });
    if (it == po.hops.end() || it->midpoint != mid) throw Error("triangle nns: midpoint missing from label");
    return it->dist;
}

NnsResult TriangleNns::query(int q) const {
    NnsResult r;
    if (size_ == 0) return r;
    r.status = NnsStatus::Ok;
    if (present_[q]) {
        r.answer = {q, 0};
        return r;
    }
    const auto& lq = labels_[q];
    for (int s = 0; s < static_cast<int>(sets_.size()); ++s) {
        uint32_t p = lq.per[s].position - 1;
        std::optional<uint32_t> cands[2] = {p > 0 ? sets_[s].predecessor(p - 1) : std::nullopt, sets_[s].successor(p + 1)};
        for (auto c : cands) {
            if (!c) continue;
            int y = perm_[s][*c];
            int i = std::min<int>(p, *c) + 1, j = std::max<int>(p, *c) + 1;
            int mid = two_.query(i, j);
            double est = hop_dist(lq, s, mid) + hop_dist(labels_[y], s, mid);
            if (est < r.answer.estimate || (est == r.answer.estimate && y < r.answer.point)) r.answer = {y, est};
        }
    }
    return r;
}

NnsStrategy nns_strategy_from_string(const std::string& s) {
    if (s == "rooted") return NnsStrategy::Rooted;
    if (s == "triangle") return NnsStrategy::Triangle;
    if (s == "ultrametric") return NnsStrategy::Ultrametric;
    if (s == "distance-labeling") return NnsStrategy::DistanceLabeling;
    if (s == "jl") return NnsStrategy::JohnsonLindenstrauss;
    throw Error("unknown nns strategy: " + s);
}

void require_in_scope(NnsStrategy s) {
    if (s == NnsStrategy::DistanceLabeling) throw OutOfScope("nns strategy 'distance-labeling' is out of scope");
    if (s == NnsStrategy::JohnsonLindenstrauss) throw OutOfScope("nns strategy 'jl' is out of scope");
}

}  // namespace lso
