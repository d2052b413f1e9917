#include "lso/doubling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lso {

bool is_padded(const Metric& m, const Partition& p, int x, double r) {
    for (int y = 0; y < m.size(); ++y)
        if (p.cluster[y] != p.cluster[x] && m(x, y) <= r) return false;
    return true;
}

double partition_max_diameter(const Metric& m, const Partition& p) {
    double best = 0;
    for (int a = 0; a < m.size(); ++a)
        for (int b = a + 1; b < m.size(); ++b)
            if (p.cluster[a] == p.cluster[b]) best = std::max(best, m(a, b));
    return best;
}

PaddedPartitionCover build_padded_partition_cover(const Metric& m, double delta, double t, uint64_t seed) {
    if (!(delta > 0)) throw Error("padded cover: delta must be positive");
    if (!(t >= 2)) throw Error("padded cover: t must be at least 2");
    int n = m.size();
    PaddedPartitionCover cover;
    cover.rho = t;
    cover.delta = delta;
    double r = delta / t, half = delta / 2;
    if (diameter(m) <= delta) {
        cover.partitions.push_back({std::vector<int>(n, 0), 1, delta});
        return cover;
    }
    std::vector<int> net = build_epsilon_net(m, delta / 4);
    std::vector<int> open(n);
    std::iota(open.begin(), open.end(), 0);
    std::vector<double> best_pad(n, 0);
    for (int round = 0; !open.empty(); ++round) {
        if (round == 64) {
            int worst = open[0];
            for (int x : open)
                if (best_pad[x] < best_pad[worst]) worst = x;
            throw Error("padded cover: 64 partitions exceeded; point " + std::to_string(worst) + " padded only to radius " +
                        std::to_string(best_pad[worst]) + " < " + std::to_string(r) +
                        " (padding ratio t close to 2 needs far more partitions; raise t)");
        }
        Rng rng = make_rng(seed, "padded-round", round);
        Partition p{std::vector<int>(n, -1), 0, delta};
        auto claim = [&](int c) {
            bool any = false;
            for (int y = 0; y < n; ++y)
                if (p.cluster[y] < 0 && m(c, y) <= half) {
                    p.cluster[y] = p.num_clusters;
                    any = true;
                }
            if (any) ++p.num_clusters;
        };
        // Unpadded points whose whole r-ball is still free get their own ball.
        std::vector<int> order = open;
        std::shuffle(order.begin(), order.end(), rng);
        for (int u : order) {
            bool free_ball = true;
            for (int y = 0; y < n && free_ball; ++y)
                if (p.cluster[y] >= 0 && m(u, y) <= r) free_ball = false;
            if (free_ball) claim(u);
        }
        std::vector<int> centers = net;
        std::shuffle(centers.begin(), centers.end(), rng);
        for (int c : centers) claim(c);
        for (int y = 0; y < n; ++y)
            if (p.cluster[y] < 0) p.cluster[y] = p.num_clusters++;  // net covers all, kept for safety
        std::vector<int> still;
        for (int x : open) {
            if (is_padded(m, p, x, r)) continue;
            double pad = kInf;
            for (int y = 0; y < n; ++y)
                if (p.cluster[y] != p.cluster[x]) pad = std::min(pad, m(x, y));
            best_pad[x] = std::max(best_pad[x], pad);
            still.push_back(x);
        }
        open.swap(still);
        cover.partitions.push_back(std::move(p));
    }
    return cover;
}

LaminarChain laminarize(const Metric& m, const std::vector<Partition>& per_scale, const std::vector<double>& deltas,
                        double eps) {
    int n = m.size();
    if (per_scale.size() != deltas.size()) throw Error("laminarize: scale count mismatch");
    LaminarChain chain;
    chain.delta = deltas;
    std::vector<int> prev(n);
    std::iota(prev.begin(), prev.end(), 0);
    int prev_count = n;
    for (size_t i = 0; i < per_scale.size(); ++i) {
        const Partition& P = per_scale[i];
        std::vector<std::vector<int>> members(P.num_clusters), prev_members(prev_count);
        for (int x = 0; x < n; ++x) {
            members[P.cluster[x]].push_back(x);
            prev_members[prev[x]].push_back(x);
        }
        std::vector<int> cur(n, -1);
        std::vector<char> taken(prev_count, 0);
        int count = 0;
        for (int q = 0; q < P.num_clusters; ++q) {
            std::vector<int> pts;
            for (int x : members[q])
                if (cur[x] < 0 && !taken[prev[x]]) {
                    taken[prev[x]] = 1;
                    for (int y : prev_members[prev[x]]) pts.push_back(y);
                }
            if (pts.empty()) continue;
            for (int y : pts) cur[y] = count;
            double diam = 0;
            for (size_t a = 0; a < pts.size(); ++a)
                for (size_t b = a + 1; b < pts.size(); ++b) diam = std::max(diam, m(pts[a], pts[b]));
            if (!leq_tol(diam, (1 + eps) * deltas[i]))
                throw Error("laminarize: level " + std::to_string(i) + " cluster diameter " + std::to_string(diam) +
                            " exceeds (1+eps) Delta = " + std::to_string((1 + eps) * deltas[i]));
            ++count;
        }
        chain.levels.push_back(cur);
        prev = std::move(cur);
        prev_count = count;
    }
    return chain;
}

Hst hierarchy_to_hst(const LaminarChain& chain, double eps) {
    int n = chain.levels.empty() ? 0 : static_cast<int>(chain.levels[0].size());
    Hst h;
    if (n == 0) throw Error("hierarchy_to_hst: empty chain");
    h.leaf_node.resize(n);
    for (int x = 0; x < n; ++x) {
        h.gamma.push_back(0);
        h.children.push_back({});
        h.parent.push_back(-1);
        h.leaf_of.push_back(x);
        h.leaf_node[x] = x;
    }
    if (n == 1) {
        h.root = 0;
        return h;
    }
    std::vector<int> below(n);
    std::iota(below.begin(), below.end(), 0);  // node of each point's current cluster
    for (size_t i = 0; i < chain.levels.size(); ++i) {
        const auto& lv = chain.levels[i];
        int k = *std::max_element(lv.begin(), lv.end()) + 1;
        int base = static_cast<int>(h.gamma.size());
        for (int c = 0; c < k; ++c) {
            h.gamma.push_back((1 + eps) * chain.delta[i]);
            h.children.push_back({});
            h.parent.push_back(-1);
            h.leaf_of.push_back(-1);
        }
        for (int x = 0; x < n; ++x) {
            int child = below[x], node = base + lv[x];
            if (h.parent[child] < 0) {
                h.parent[child] = node;
                h.children[node].push_back(child);
            } else if (h.parent[child] != node) {
                throw Error("hierarchy_to_hst: chain is not laminar at level " + std::to_string(i));
            }
        }
        for (int x = 0; x < n; ++x) below[x] = base + lv[x];
        h.root = k == 1 ? base : -1;
    }
    if (h.root < 0) throw Error("hierarchy_to_hst: chain does not end in a single root cluster");
    // Children by ascending minimum point id.
    std::vector<int> minpt(h.gamma.size(), INT32_MAX);
    for (int x = 0; x < n; ++x)
        for (int v = x; v >= 0; v = h.parent[v]) {
            if (minpt[v] <= x) break;
            minpt[v] = x;
        }
    for (auto& ch : h.children) std::sort(ch.begin(), ch.end(), [&](int a, int b) { return minpt[a] < minpt[b]; });
    return h;
}

std::vector<int> Hst::depth() const {
    std::vector<int> d(gamma.size(), 0);
    std::vector<int> st{root};
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int c : children[v]) {
            d[c] = d[v] + 1;
            st.push_back(c);
        }
    }
    return d;
}

int Hst::lca_naive(int a, int b) const {
    std::vector<char> anc(gamma.size(), 0);
    for (int v = a; v >= 0; v = parent[v]) anc[v] = 1;
    for (int v = b; v >= 0; v = parent[v])
        if (anc[v]) return v;
    throw Error("hst: nodes in different trees");
}

double Hst::dist(int x, int y) const {
    if (x == y) return 0;
    // Walk up from both leaves by depth-free climbing (ancestor sets are short).
    int a = leaf_node[x], b = leaf_node[y];
    std::vector<int> pa;
    for (int v = a; v >= 0; v = parent[v]) pa.push_back(v);
    for (int v = b; v >= 0; v = parent[v])
        if (std::find(pa.begin(), pa.end(), v) != pa.end()) return gamma[v];
    throw Error("hst: leaves in different trees");
}

std::vector<int> Hst::preorder_points() const {
    std::vector<int> out;
    std::vector<int> st{root};
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        if (leaf_of[v] >= 0) out.push_back(leaf_of[v]);
        for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) st.push_back(*it);
    }
    return out;
}

void Hst::validate() const {
    int N = static_cast<int>(gamma.size());
    if (root < 0 || root >= N) throw Error("hst: bad root");
    for (int v = 0; v < N; ++v) {
        if (leaf_of[v] >= 0 && (!children[v].empty() || gamma[v] != 0)) throw Error("hst: leaf with children or nonzero label");
        if (v != root && (parent[v] < 0 || gamma[parent[v]] < gamma[v])) throw Error("hst: labels increase towards a leaf");
    }
}

UltrametricCover build_ultrametric_cover(const Metric& metric, double t, double eps, uint64_t seed) {
    if (!(eps > 0 && eps <= 0.25)) throw Error("ultrametric cover: eps must lie in (0, 1/4]");
    double rho = t / std::pow(1 + eps, 3);
    if (rho < 2) throw Error("ultrametric cover: t too small (needs t >= 2(1+eps)^3)");
    int n = metric.size();
    UltrametricCover cover;
    cover.rho = t;
    if (n == 1) {
        Hst h;
        h.gamma = {0};
        h.children = {{}};
        h.parent = {-1};
        h.leaf_of = {0};
        h.leaf_node = {0};
        h.root = 0;
        cover.trees.push_back(h);
        return cover;
    }
    double mn = min_distance(metric);
    if (std::isinf(mn)) throw Error("ultrametric cover: all points identical");
    cover.scale = 1 / mn;
    MatrixMetric base = MatrixMetric::from(metric);
    std::vector<double> sd = base.data();
    for (auto& v : sd) v *= cover.scale;
    MatrixMetric m(n, std::move(sd), metric.exact());
    double diam = diameter(m);
    double R = 4 * rho / eps;
    int shifts = static_cast<int>(std::floor(std::log(R) / std::log1p(eps))) + 1;
    for (int l = 0; l < shifts; ++l) {
        double c = std::pow(1 + eps, l);
        std::vector<double> deltas;
        for (double D = c; ; D *= R) {
            deltas.push_back(D);
            if (D >= diam) break;
        }
        std::vector<std::vector<Partition>> per_scale;
        size_t tau = 1;
        for (size_t i = 0; i < deltas.size(); ++i) {
            auto pc = build_padded_partition_cover(m, deltas[i], rho, derive_seed(seed, "cover", l * 1000 + i));
            tau = std::max(tau, pc.partitions.size());
            per_scale.push_back(std::move(pc.partitions));
        }
        cover.partitions_per_scale = std::max<int>(cover.partitions_per_scale, static_cast<int>(tau));
        for (size_t j = 0; j < tau; ++j) {
            std::vector<Partition> chosen;
            for (auto& ps : per_scale) chosen.push_back(ps[j % ps.size()]);
            LaminarChain chain = laminarize(m, chosen, deltas, eps);
            Hst h = hierarchy_to_hst(chain, eps);
            for (auto& g : h.gamma) g /= cover.scale;
            cover.trees.push_back(std::move(h));
        }
    }
    return cover;
}

OrderingFamily cover_preorder_to_triangle_lso(const UltrametricCover& cover) {
    OrderingFamily fam;
    fam.kind = LsoKind::Triangle;
    fam.rho = cover.rho;
    fam.n = cover.trees.empty() ? 0 : cover.trees[0].num_points();
    for (auto& h : cover.trees) fam.orderings.emplace_back(h.preorder_points(), fam.n);
    return fam;
}

Hst random_hst(int n, uint64_t seed, int max_children) {
    if (n < 1) throw Error("random_hst: n must be positive");
    Rng rng = make_rng(seed, "random-hst");
    Hst h;
    h.leaf_node.resize(n);
    std::vector<int> level;
    for (int x = 0; x < n; ++x) {
        h.gamma.push_back(0);
        h.children.push_back({});
        h.parent.push_back(-1);
        h.leaf_of.push_back(x);
        h.leaf_node[x] = x;
        level.push_back(x);
    }
    std::shuffle(level.begin(), level.end(), rng);
    std::uniform_real_distribution<double> U(0.1, 1.0);
    std::uniform_int_distribution<int> K(2, std::max(2, max_children));
    while (level.size() > 1) {
        std::vector<int> next;
        size_t i = 0;
        while (i < level.size()) {
            size_t k = std::min<size_t>(K(rng), level.size() - i);
            if (k == 1 && !next.empty() && level.size() > 1) {
                // fold the straggler into the previous parent
                int p = next.back(), c = level[i];
                h.parent[c] = p;
                h.children[p].push_back(c);
                h.gamma[p] = std::max(h.gamma[p], h.gamma[c] + U(rng));
                ++i;
                continue;
            }
            int p = static_cast<int>(h.gamma.size());
            double g = 0;
            h.children.push_back({});
            for (size_t q = 0; q < k; ++q) {
                int c = level[i + q];
                h.parent[c] = p;
                h.children[p].push_back(c);
                g = std::max(g, h.gamma[c]);
            }
            h.gamma.push_back(g + U(rng));
            h.parent.push_back(-1);
            h.leaf_of.push_back(-1);
            next.push_back(p);
            i += k;
        }
        level.swap(next);
        std::shuffle(level.begin(), level.end(), rng);
    }
    h.root = level[0];
    if (n == 1) h.root = 0;
    std::vector<int> minpt(h.gamma.size(), INT32_MAX);
    for (int x = 0; x < n; ++x)
        for (int v = x; v >= 0; v = h.parent[v]) {
            if (minpt[v] <= x) break;
            minpt[v] = x;
        }
    for (auto& ch : h.children) std::sort(ch.begin(), ch.end(), [&](int a, int b) { return minpt[a] < minpt[b]; });
    return h;
}

}  // namespace lso
