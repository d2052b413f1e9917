#include "lso/spanner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lso {

bool EdgeSet::add(int u, int v, double w) {
    if (u == v) return false;
    auto [it, fresh] = w_.emplace(key(u, v), w);
    if (!fresh) return false;
    edges_.push_back({std::min(u, v), std::max(u, v), w});
    return true;
}

double EdgeSet::weight(int u, int v) const {
    if (u == v) return 0;
    auto it = w_.find(key(u, v));
    return it == w_.end() ? kInf : it->second;
}

double EdgeSet::total_weight() const {
    double s = 0;
    for (auto& e : edges_) s += e.w;
    return s;
}

double PathReportingSpanner::two_hop_weight(int u, int m, int v) const { return es_.weight(u, m) + es_.weight(m, v); }

SpannerPath PathReportingSpanner::two_hop_path(int u, int m, int v, double w) {
    SpannerPath p;
    p.weight = w;
    p.vertices.push_back(u);
    if (m != u && m != v) p.vertices.push_back(m);
    if (v != u) p.vertices.push_back(v);
    return p;
}

namespace {

void keep_lighter(SpannerPath& best, SpannerPath cand) {
    cand.inspected = best.inspected;
    if (cand.found() && cand.weight < best.weight) best = std::move(cand);
}

double classic_or_triangle_stretch(const OrderingFamily& fam) {
    if (fam.kind == LsoKind::Classic) return 1 + 2 * fam.rho;
    if (fam.kind == LsoKind::Triangle) return 2 * fam.rho;
    throw Error("ordering spanner: family must be classic or triangle");
}

}  // namespace

OrderingSpanner::OrderingSpanner(const OrderingFamily& fam, const Metric& m)
    : PathReportingSpanner(fam.n, classic_or_triangle_stretch(fam), 2), fam_(fam) {
    for (const auto& o : fam.orderings) {
        auto& t = two_[o.size()];
        if (!t) t = std::make_shared<TwoHopPathSpanner>(o.size());
        for (int i = 1; i <= o.size(); ++i)
            for (int l : t->responsible(i)) es_.add(o.perm[i - 1], o.perm[l - 1], m(o.perm[i - 1], o.perm[l - 1]));
    }
}

SpannerPath OrderingSpanner::through(int s, int u, int v) const {
    const auto& o = fam_.orderings[s];
    if (!o.contains(u) || !o.contains(v)) return {};
    int i = o.pos[u] + 1, j = o.pos[v] + 1;
    int l = two_.at(o.size())->query(std::min(i, j), std::max(i, j));
    int mid = o.perm[l - 1];
    return two_hop_path(u, mid, v, two_hop_weight(u, mid, v));
}

SpannerPath OrderingSpanner::query(int u, int v) const {
    SpannerPath best;
    if (u == v) return two_hop_path(u, u, u, 0);
    for (int s = 0; s < static_cast<int>(fam_.orderings.size()); ++s) {
        ++best.inspected;
        keep_lighter(best, through(s, u, v));
    }
    return best;
}

SpannerPath OrderingSpanner::query_hinted(int u, int v) const {
    if (u == v) return two_hop_path(u, u, u, 0);
    if (fam_.hint) {
        int s = fam_.hint(u, v);
        if (s >= 0) {
            auto p = through(s, u, v);
            p.inspected = 1;
            if (p.found()) return p;
        }
    }
    return query(u, v);
}

RootedSpanner::RootedSpanner(const OrderingFamily& fam, const Metric& m)
    : PathReportingSpanner(fam.n, fam.rho, 2), fam_(fam) {
    if (fam.kind != LsoKind::Rooted) throw Error("rooted spanner: family must be rooted");
    for (const auto& o : fam.orderings)
        for (int y : o.perm) es_.add(y, o.root, m(y, o.root));
}

SpannerPath RootedSpanner::query(int u, int v) const {
    SpannerPath best;
    if (u == v) return two_hop_path(u, u, u, 0);
    for (const auto& o : fam_.orderings) {
        ++best.inspected;
        if (!o.contains(u) || !o.contains(v)) continue;
        keep_lighter(best, two_hop_path(u, o.root, v, two_hop_weight(u, o.root, v)));
    }
    return best;
}

TzSpanner::TzSpanner(const Metric& m, int k, uint64_t seed) : PathReportingSpanner(m.size(), 2.0 * k - 1, 2), k_(k) {
    if (k < 1) throw Error("tz spanner: k must be >= 1");
    int n = m.size();
    double p = std::pow(static_cast<double>(std::max(n, 1)), -1.0 / k);
    double cap = 4.0 * k * std::pow(static_cast<double>(n), 1.0 + 1.0 / k);
    for (attempts_ = 1;; ++attempts_) {
        if (attempts_ > 1000) throw Error("tz spanner: sampling never met the bunch-size threshold");
        Rng rng = make_rng(seed, "tz-levels", attempts_);
        std::bernoulli_distribution keep(p);
        level_.assign(n, 0);
        bool top_empty = k > 1;
        for (int v = 0; v < n; ++v) {
            while (level_[v] < k - 1 && keep(rng)) ++level_[v];
            if (level_[v] == k - 1) top_empty = false;
        }
        if (n > 0 && top_empty) continue;

        dist_.assign(k + 1, std::vector<double>(n, kInf));
        pivot_.assign(k + 1, std::vector<int>(n, -1));
        for (int i = 0; i < k; ++i)
            for (int v = 0; v < n; ++v)
                for (int w = 0; w < n; ++w) {
                    if (level_[w] < i) continue;
                    double d = m(v, w);
                    if (d < dist_[i][v]) dist_[i][v] = d, pivot_[i][v] = w;
                }
        bunch_.assign(n, {});
        long long total = 0;
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w) {
                double d = m(v, w);
                // w in B_i(v) for i = level(w) is the only level that can hold.
                if (d < dist_[level_[w] + 1][v]) bunch_[v].emplace(w, d), ++total;
            }
        if (total <= cap) break;
    }
    for (int v = 0; v < n; ++v) {
        for (auto& [w, d] : bunch_[v]) es_.add(v, w, d);
        for (int i = 0; i < k; ++i) es_.add(v, pivot_[i][v], dist_[i][v]);
    }
}

long long TzSpanner::total_bunch_size() const {
    long long s = 0;
    for (auto& b : bunch_) s += static_cast<long long>(b.size());
    return s;
}

SpannerPath TzSpanner::query(int u0, int v0) const {
    if (u0 == v0) return two_hop_path(u0, u0, u0, 0);
    int u = u0, v = v0, w = u, i = 0;
    long long iters = 1;
    while (!bunch_[v].count(w)) {
        ++i;
        std::swap(u, v);
        w = pivot_[i][u];
        ++iters;
    }
    auto p = two_hop_path(u0, w, v0, two_hop_weight(u0, w, v0));
    p.inspected = iters;
    return p;
}

SparseCoverSpanner::SparseCoverSpanner(const Metric& m, int k, double eps, Estimator est)
    : PathReportingSpanner(m.size(), (1 + eps) * (4.0 * k - 2), 2), k_(k), eps_(eps), est_(std::move(est)) {
    if (k < 1) throw Error("sparse cover: k must be >= 1");
    if (!(eps > 0)) throw Error("sparse cover: eps must be positive");
    int n = m.size();
    if (n < 2) return;
    double lb = std::log1p(eps);
    double mn = min_distance(m), mx = diameter(m);
    lo_ = static_cast<int>(std::floor(std::log(mn / (2.0 * k - 1)) / lb)) - 1;
    int hi = static_cast<int>(std::ceil(std::log(mx) / lb)) + 1;
    if (static_cast<double>(hi) - lo_ > 1e9) throw Error("sparse cover: aspect ratio needs more than 1e9 scales");
    double growth = std::pow(static_cast<double>(n), 1.0 / k);
    for (int i = lo_; i <= hi; ++i) {
        Scale sc{i, std::pow(1 + eps, i), {}, std::vector<int>(n, -1)};
        std::vector<char> free(n, 1);
        for (int c = 0; c < n; ++c) {
            if (!free[c]) continue;
            auto ball = [&](double r) {
                std::vector<int> out;
                for (int x = 0; x < n; ++x)
                    if (free[x] && m(c, x) <= r) out.push_back(x);
                return out;
            };
            int j = 1;
            std::vector<int> kernel = ball(0);
            while (static_cast<double>(ball(2.0 * j * sc.delta).size()) > growth * kernel.size()) {
                ++j;
                kernel = ball((2.0 * j - 2) * sc.delta);
            }
            Cluster cl{c, j, kernel, {}};
            for (int x = 0; x < n; ++x)
                for (int y : kernel)
                    if (m(x, y) <= sc.delta) {
                        cl.members.push_back(x);
                        break;
                    }
            for (int y : kernel) free[y] = 0, sc.home[y] = static_cast<int>(sc.clusters.size());
            for (int x : cl.members) es_.add(x, c, m(x, c));
            sc.clusters.push_back(std::move(cl));
        }
        scales_.push_back(std::move(sc));
    }
}

int SparseCoverSpanner::max_membership() const {
    int best = 0;
    for (auto& sc : scales_) {
        std::vector<int> cnt(n_, 0);
        for (auto& c : sc.clusters)
            for (int x : c.members) best = std::max(best, ++cnt[x]);
    }
    return best;
}

SpannerPath SparseCoverSpanner::query(int u, int v) const {
    if (u == v) return two_hop_path(u, u, u, 0);
    double est = est_(u, v);
    double lb = std::log1p(eps_);
    int a = static_cast<int>(std::floor(std::log(est / (2.0 * k_ - 1)) / lb));
    int b = static_cast<int>(std::ceil(std::log(est) / lb)) + 1;
    SpannerPath best;
    for (int i = std::max(a, lo_); i <= b && i - lo_ < static_cast<int>(scales_.size()); ++i) {
        const auto& sc = scales_[i - lo_];
        ++best.inspected;
        for (int x : {u, v}) {
            const auto& cl = sc.clusters[sc.home[x]];
            int other = x == u ? v : u;
            if (!std::binary_search(cl.members.begin(), cl.members.end(), other)) continue;
            keep_lighter(best, two_hop_path(u, cl.center, v, two_hop_weight(u, cl.center, v)));
        }
    }
    if (!best.found())
        throw EstimatorFault("sparse cover: estimate " + std::to_string(est) + " for (" + std::to_string(u) + "," +
                             std::to_string(v) + ") left the pair without a common cluster (estimator-fault)");
    return best;
}

std::vector<char> FaultTolerantSpanner::fault_mask(int u, int v, const std::vector<int>& faults) const {
    std::vector<char> mask(n_, 0);
    int distinct = 0;
    for (int x : faults) {
        if (x < 0 || x >= n_) throw Error("ft spanner: fault id out of range");
        if (!mask[x]) ++distinct, mask[x] = 1;
    }
    if (distinct > f_) throw Error("ft spanner: " + std::to_string(distinct) + " faults exceed budget f=" + std::to_string(f_));
    if (mask[u] || mask[v]) throw Error("ft spanner: query endpoint is faulty");
    return mask;
}

namespace {

class FtOrderingSpanner final : public FaultTolerantSpanner {
public:
    FtOrderingSpanner(const OrderingFamily& fam, const Metric& m, int f)
        : FaultTolerantSpanner(fam.n, f, classic_or_triangle_stretch(fam)), fam_(fam), m_(&m) {
        std::unordered_map<int, std::shared_ptr<FtTwoHopPathSpanner>> by_size;
        for (const auto& o : fam.orderings) {
            auto& t = by_size[o.size()];
            if (!t) t = std::make_shared<FtTwoHopPathSpanner>(o.size(), f);
            per_.push_back(t);
            for (int i = 1; i <= o.size(); ++i)
                for (int l : t->responsible(i)) es_.add(o.perm[i - 1], o.perm[l - 1], m(o.perm[i - 1], o.perm[l - 1]));
        }
    }

    SpannerPath query(int u, int v, const std::vector<int>& faults) const override {
        auto mask = fault_mask(u, v, faults);
        if (u == v) return {{u}, 0, 0};
        int best_mid = -1;
        long long best_at = 0, inspected = 0;
        double best_w = kInf;
        for (size_t s = 0; s < fam_.orderings.size(); ++s) {
            const auto& o = fam_.orderings[s];
            ++inspected;
            if (!o.contains(u) || !o.contains(v)) continue;
            int i = o.pos[u] + 1, j = o.pos[v] + 1;
            int l;
            try {
                l = per_[s]->query(std::min(i, j), std::max(i, j), [&](int p) { return mask[o.perm[p - 1]] != 0; });
            } catch (const Error&) {
                continue;
            }
            int mid = o.perm[l - 1];
            // Edge weights are metric distances, so skip the edge lookups here.
            double w = mid == u || mid == v ? (*m_)(u, v) : (*m_)(u, mid) + (*m_)(mid, v);
            if (w < best_w) best_w = w, best_mid = mid, best_at = inspected;
        }
        SpannerPath best;
        best.inspected = inspected;
        if (best_mid < 0) return best;
        best.vertices = {u};
        if (best_mid != u && best_mid != v) best.vertices.push_back(best_mid);
        best.vertices.push_back(v);
        best.weight = best.vertices.size() == 2 ? es_.weight(u, v) : es_.weight(u, best_mid) + es_.weight(best_mid, v);
        best.inspected = best_at;
        return best;
    }

private:
    OrderingFamily fam_;  // copied, so temporaries are safe
    const Metric* m_;
    std::vector<std::shared_ptr<FtTwoHopPathSpanner>> per_;  // per ordering, shared by size
};

// Each point links to the first f+1 points of every ordering holding it.
class FtRootedSpanner final : public FaultTolerantSpanner {
public:
    FtRootedSpanner(const OrderingFamily& fam, const Metric& m, int f)
        : FaultTolerantSpanner(fam.n, f, 2 * fam.rho), fam_(fam) {
        for (const auto& o : fam.orderings) {
            int top = std::min(o.size(), f + 1);
            for (int y : o.perm)
                for (int a = 0; a < top; ++a) es_.add(y, o.perm[a], m(y, o.perm[a]));
        }
    }

    SpannerPath query(int u, int v, const std::vector<int>& faults) const override {
        auto mask = fault_mask(u, v, faults);
        SpannerPath best;
        if (u == v) return {{u}, 0, 0};
        for (const auto& o : fam_.orderings) {
            ++best.inspected;
            if (!o.contains(u) || !o.contains(v)) continue;
            int top = std::min(o.size(), f_ + 1);
            for (int a = 0; a < top; ++a) {
                int z = o.perm[a];
                if (mask[z] && z != u && z != v) continue;
                SpannerPath p;
                p.vertices = {u};
                if (z != u && z != v) p.vertices.push_back(z);
                p.vertices.push_back(v);
                p.weight = es_.weight(u, z) + es_.weight(z, v);
                if (p.weight < best.weight) {
                    p.inspected = best.inspected;
                    best = std::move(p);
                }
                break;
            }
        }
        return best;
    }

private:
    OrderingFamily fam_;  // copied, so temporaries are safe
};

}  // namespace

std::unique_ptr<FaultTolerantSpanner> ft_spanner_from_family(const OrderingFamily& fam, const Metric& m, int f) {
    if (f < 0) throw Error("ft spanner: f must be >= 0");
    if (fam.kind == LsoKind::Rooted) return std::make_unique<FtRootedSpanner>(fam, m, f);
    return std::make_unique<FtOrderingSpanner>(fam, m, f);
}

std::vector<Edge> SpannerOracle::operator()(const std::vector<int>& terminals, double L) {
    if (!(L > 0)) throw Error("spanner oracle: L must be positive");
    ++calls_;
    EdgeSet out;
    if (terminals.size() >= 2) emit(terminals, L, out);
    double ws = terminals.empty() ? 0 : out.total_weight() / (static_cast<double>(terminals.size()) * L);
    max_ws_ = std::max(max_ws_, ws);
    return out.edges();
}

namespace {

// Terminals listed in the order of o (all must be present).
std::vector<int> restrict_order(const Ordering& o, const std::vector<int>& terminals) {
    std::vector<int> t;
    for (int x : terminals)
        if (o.contains(x)) t.push_back(x);
    std::sort(t.begin(), t.end(), [&](int a, int b) { return o.pos[a] < o.pos[b]; });
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
}

}  // namespace

ClassicSpannerOracle::ClassicSpannerOracle(const OrderingFamily& fam, const Metric& m)
    : SpannerOracle(1 + 8 * fam.rho), fam_(fam), m_(&m) {
    if (fam.kind != LsoKind::Classic) throw Error("classic spanner oracle: family must be classic");
}

void ClassicSpannerOracle::emit(const std::vector<int>& terminals, double L, EdgeSet& out) const {
    for (const auto& o : fam_.orderings) {
        auto t = restrict_order(o, terminals);
        for (size_t i = 0; i + 1 < t.size(); ++i) {
            double d = (*m_)(t[i], t[i + 1]);
            if (d <= 2 * L) out.add(t[i], t[i + 1], d);
        }
    }
}

TriangleSpannerOracle::TriangleSpannerOracle(const OrderingFamily& fam, const Metric& m, int hops)
    : SpannerOracle(hops * fam.rho), fam_(fam), m_(&m), hops_(hops) {
    if (fam.kind != LsoKind::Triangle) throw Error("triangle spanner oracle: family must be triangle");
    if (hops < 2 || hops > 4) throw Error("triangle spanner oracle: hops must be 2, 3 or 4");
}

void TriangleSpannerOracle::emit(const std::vector<int>& terminals, double L, EdgeSet& out) const {
    double cap = 2 * fam_.rho * L;
    for (const auto& o : fam_.orderings) {
        auto t = restrict_order(o, terminals);
        int k = static_cast<int>(t.size());
        if (k < 2) continue;
        std::vector<std::pair<int, int>> pe;
        if (hops_ == 2)
            pe = TwoHopPathSpanner(k).edges();
        else
            pe = KHopPathSpanner(k, hops_).edges();
        for (auto [a, b] : pe) {
            double d = (*m_)(t[a - 1], t[b - 1]);
            if (d <= cap * (1 + kRelTol)) out.add(t[a - 1], t[b - 1], d);
        }
    }
}

namespace {

bool check_path(const std::vector<int>& p, int u, int v, const EdgeSet& es, const Metric& m, int hops, double bound,
                SpannerCheck& r) {
    if (p.empty() || p.front() != u || p.back() != v) return false;
    int h = static_cast<int>(p.size()) - 1;
    r.max_hops = std::max(r.max_hops, h);
    if (h > hops) return false;
    double w = 0;
    for (size_t i = 0; i + 1 < p.size(); ++i) {
        if (!es.contains(p[i], p[i + 1])) return false;
        w += m(p[i], p[i + 1]);
    }
    double d = m(u, v);
    if (d > 0) r.max_stretch = std::max(r.max_stretch, w / d);
    return leq_tol(w, bound * d);
}

void record(SpannerCheck& r, bool ok, int u, int v) {
    ++r.pairs;
    if (ok) return;
    ++r.failures;
    if (r.failed.size() < 16) r.failed.push_back({u, v});
}

}  // namespace

SpannerCheck check_spanner(const PathReportingSpanner& s, const Metric& m) {
    SpannerCheck r;
    for (int u = 0; u < s.n(); ++u)
        for (int v = u + 1; v < s.n(); ++v) {
            bool ok;
            try {
                auto p = s.query(u, v);
                r.max_inspected = std::max(r.max_inspected, p.inspected);
                ok = check_path(p.vertices, u, v, s.edge_set(), m, s.hops(), s.stretch(), r);
            } catch (const EstimatorFault&) {
                ok = false;
            }
            record(r, ok, u, v);
        }
    return r;
}

SpannerCheck check_ft_spanner(const FaultTolerantSpanner& s, const Metric& m, const std::vector<int>& faults) {
    SpannerCheck r;
    std::vector<char> bad(s.n(), 0);
    for (int x : faults) bad[x] = 1;
    for (int u = 0; u < s.n(); ++u)
        for (int v = u + 1; v < s.n(); ++v) {
            if (bad[u] || bad[v]) continue;
            auto p = s.query(u, v, faults);
            r.max_inspected = std::max(r.max_inspected, p.inspected);
            bool ok = check_path(p.vertices, u, v, s.edge_set(), m, 2, s.stretch(), r);
            for (int x : p.vertices) ok = ok && !bad[x];
            record(r, ok, u, v);
        }
    return r;
}

bool edge_weights_match(const EdgeSet& es, const Metric& m) {
    for (auto& e : es.edges())
        if (e.w != m(e.u, e.v)) return false;
    return true;
}

std::vector<std::vector<double>> edge_set_distances(int n, const std::vector<Edge>& edges, const std::vector<int>& sources) {
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (auto& e : edges) {
        adj[e.u].push_back({e.v, e.w});
        adj[e.v].push_back({e.u, e.w});
    }
    std::vector<std::vector<double>> out;
    for (int s : sources) out.push_back(dijkstra(adj, s));
    return out;
}

}  // namespace lso
