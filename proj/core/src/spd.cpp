#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>

#include "lso/spanner.hpp"

namespace lso {

int Spd::depth() const {
    int d = 0;
    for (auto& e : entries) d = std::max(d, e.level + 1);
    return d;
}

Spd read_spd(std::istream& in) {
    Spd spd;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        std::string kw, lvl, pathkw, tok;
        SpdEntry e{};
        ss >> kw >> lvl >> pathkw;
        bool ok = kw == "level" && lvl.size() >= 2 && lvl.back() == ':' && pathkw == "path";
        if (ok) {
            try {
                e.level = std::stoi(lvl.substr(0, lvl.size() - 1));
            } catch (...) {
                ok = false;
            }
        }
        bool saw_at = false;
        while (ok && ss >> tok) {
            if (tok == "@") {
                saw_at = true;
                break;
            }
            try {
                e.path.push_back(std::stoi(tok));
            } catch (...) {
                ok = false;
            }
        }
        std::string compkw;
        ok = ok && saw_at && (ss >> compkw >> e.component) && compkw == "component" && !e.path.empty();
        if (!ok) throw Error("spd: malformed line " + std::to_string(lineno) + ": " + line);
        spd.entries.push_back(std::move(e));
    }
    return spd;
}

void write_spd(std::ostream& out, const Spd& spd) {
    for (auto& e : spd.entries) {
        out << "level " << e.level << ": path";
        for (int v : e.path) out << ' ' << v;
        out << " @ component " << e.component << '\n';
    }
}

namespace {

using Adj = std::vector<std::vector<std::pair<int, double>>>;

// Components of the vertices with mask set; comp[v] = -1 elsewhere.
int label_components(const Adj& adj, const std::vector<char>& mask, std::vector<int>& comp) {
    int n = static_cast<int>(adj.size()), k = 0;
    comp.assign(n, -1);
    for (int s = 0; s < n; ++s) {
        if (!mask[s] || comp[s] >= 0) continue;
        std::vector<int> st{s};
        comp[s] = k;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (auto [y, w] : adj[x])
                if (mask[y] && comp[y] < 0) comp[y] = k, st.push_back(y);
        }
        ++k;
    }
    return k;
}

std::vector<double> masked_dijkstra(const Adj& adj, const std::vector<char>& mask, int src) {
    std::vector<double> d(adj.size(), kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[src] = 0;
    pq.push({0, src});
    while (!pq.empty()) {
        auto [dx, x] = pq.top();
        pq.pop();
        if (dx > d[x]) continue;
        for (auto [y, w] : adj[x])
            if (mask[y] && dx + w < d[y]) d[y] = dx + w, pq.push({d[y], y});
    }
    return d;
}

double edge_weight(const Adj& adj, int a, int b) {
    double w = kInf;
    for (auto [y, wy] : adj[a])
        if (y == b) w = std::min(w, wy);
    return w;
}

// Component (vertex list) of every entry; throws naming the level on errors.
std::vector<std::vector<int>> resolve_spd(const WeightedGraph& g, const Spd& spd) {
    g.validate();
    Adj adj = g.adjacency();
    int n = g.n;
    std::map<int, std::vector<int>> by_level;
    for (int e = 0; e < static_cast<int>(spd.entries.size()); ++e) {
        if (spd.entries[e].level < 0) throw Error("spd: negative level");
        by_level[spd.entries[e].level].push_back(e);
    }
    std::vector<std::vector<int>> comp_of(spd.entries.size());
    std::vector<char> alive(n, 1);
    int expected = 0;
    for (auto& [lvl, ids] : by_level) {
        std::string where = "spd level " + std::to_string(lvl) + ": ";
        if (lvl != expected) throw Error(where + "levels must be consecutive from 0");
        ++expected;
        std::vector<int> comp;
        int k = label_components(adj, alive, comp);
        std::vector<int> owner(k, -1);
        for (int e : ids) {
            const auto& path = spd.entries[e].path;
            for (int v : path)
                if (v < 0 || v >= n || !alive[v]) throw Error(where + "path vertex " + std::to_string(v) + " is not present");
            int c = comp[path[0]];
            for (int v : path)
                if (comp[v] != c) throw Error(where + "path leaves its component");
            if (owner[c] >= 0) throw Error(where + "two paths in one component");
            owner[c] = e;
            std::vector<char> mask(n, 0);
            for (int v = 0; v < n; ++v)
                if (comp[v] == c) mask[v] = 1, comp_of[e].push_back(v);
            double len = 0;
            for (size_t i = 0; i + 1 < path.size(); ++i) {
                double w = edge_weight(adj, path[i], path[i + 1]);
                if (w == kInf) throw Error(where + "consecutive path vertices are not adjacent");
                len += w;
            }
            double d = masked_dijkstra(adj, mask, path[0])[path.back()];
            if (!leq_tol(len, d)) throw Error(where + "path is not a shortest path of its component");
            std::vector<int> sorted = path;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error(where + "path repeats a vertex");
        }
        for (int c = 0; c < k; ++c)
            if (owner[c] < 0) {
                int v = static_cast<int>(std::find(comp.begin(), comp.end(), c) - comp.begin());
                throw Error(where + "component containing vertex " + std::to_string(v) + " has no path");
            }
        for (int e : ids)
            for (int v : spd.entries[e].path) alive[v] = 0;
    }
    for (int v = 0; v < n; ++v)
        if (alive[v]) throw Error("spd level " + std::to_string(expected) + ": vertex " + std::to_string(v) + " is never removed");
    return comp_of;
}

}  // namespace

void validate_spd(const WeightedGraph& g, const Spd& spd) { resolve_spd(g, spd); }

Spd heavy_path_spd(const WeightedGraph& tree) {
    if (!tree.is_tree()) throw Error("heavy-path spd: input is not a tree");
    int n = tree.n;
    Adj adj = tree.adjacency();
    std::vector<int> parent(n, -1), order{0}, size(n, 1);
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    for (size_t i = 0; i < order.size(); ++i)
        for (auto [y, w] : adj[order[i]])
            if (!seen[y]) seen[y] = 1, parent[y] = order[i], order.push_back(y);
    for (size_t i = order.size(); i-- > 1;) size[parent[order[i]]] += size[order[i]];
    std::vector<int> heavy(n, -1);
    for (int v : order) {
        int p = parent[v];
        if (p >= 0 && (heavy[p] < 0 || size[v] > size[heavy[p]] || (size[v] == size[heavy[p]] && v < heavy[p]))) heavy[p] = v;
    }
    std::vector<int> light_depth(n, 0);
    Spd spd;
    for (int v : order) {
        int p = parent[v];
        if (p >= 0) light_depth[v] = light_depth[p] + (heavy[p] == v ? 0 : 1);
        if (p >= 0 && heavy[p] == v) continue;
        SpdEntry e{light_depth[v], 0, {}};
        for (int x = v; x >= 0; x = heavy[x]) e.path.push_back(x);
        spd.entries.push_back(std::move(e));
    }
    std::stable_sort(spd.entries.begin(), spd.entries.end(), [](auto& a, auto& b) { return a.level < b.level; });
    for (size_t i = 0; i < spd.entries.size(); ++i) spd.entries[i].component = static_cast<int>(i);
    return spd;
}

Spd treewidth_spd(const WeightedGraph& g, const TreeDecomposition& td) {
    td.validate(g);
    int n = g.n;
    Adj adj = g.adjacency();
    Spd spd;
    struct Work {
        std::vector<int> vertices;
        int level;
    };
    std::queue<Work> q;
    {
        std::vector<char> all(n, 1);
        std::vector<int> comp;
        int k = label_components(adj, all, comp);
        std::vector<std::vector<int>> parts(k);
        for (int v = 0; v < n; ++v) parts[comp[v]].push_back(v);
        for (auto& p : parts) q.push({std::move(p), 0});
    }
    std::vector<int> comp;
    while (!q.empty()) {
        Work w = std::move(q.front());
        q.pop();
        std::vector<char> mask(n, 0);
        for (int v : w.vertices) mask[v] = 1;
        // Bag whose removal leaves the smallest largest piece.
        int best_bag = -1;
        size_t best_size = 0;
        for (int b = 0; b < static_cast<int>(td.bags.size()); ++b) {
            std::vector<char> rest = mask;
            bool hits = false;
            for (int v : td.bags[b])
                if (rest[v]) rest[v] = 0, hits = true;
            if (!hits) continue;
            int k = label_components(adj, rest, comp);
            std::vector<size_t> cnt(k, 0);
            size_t big = 0;
            for (int v : w.vertices)
                if (comp[v] >= 0) big = std::max(big, ++cnt[comp[v]]);
            if (best_bag < 0 || big < best_size) best_bag = b, best_size = big;
        }
        int pick = n;
        for (int v : td.bags[best_bag])
            if (mask[v]) pick = std::min(pick, v);
        spd.entries.push_back({w.level, 0, {pick}});
        mask[pick] = 0;
        int k = label_components(adj, mask, comp);
        std::vector<std::vector<int>> parts(k);
        for (int v : w.vertices)
            if (comp[v] >= 0) parts[comp[v]].push_back(v);
        for (auto& p : parts) q.push({std::move(p), w.level + 1});
    }
    for (size_t i = 0; i < spd.entries.size(); ++i) spd.entries[i].component = static_cast<int>(i);
    return spd;
}

SpdSpanner::SpdSpanner(const WeightedGraph& g, const Spd& spd, double eps)
    : PathReportingSpanner(g.n, 1 + eps, 2), chain_(g.n) {
    if (!(eps > 0)) throw Error("spd spanner: eps must be positive");
    auto comps = resolve_spd(g, spd);
    depth_ = spd.depth();
    Adj adj = g.adjacency();
    MatrixMetric dg = graph_metric(g);
    std::vector<int> order(spd.entries.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return spd.entries[a].level < spd.entries[b].level; });
    std::unordered_map<int, std::shared_ptr<TwoHopPathSpanner>> by_size;
    paths_.resize(spd.entries.size());
    two_.resize(spd.entries.size());
    for (int e : order) {
        const auto& P = spd.entries[e].path;
        int m = static_cast<int>(P.size());
        paths_[e] = P;
        auto& t = by_size[m];
        if (!t) t = std::make_shared<TwoHopPathSpanner>(m);
        two_[e] = t;
        std::vector<double> along(m, 0);
        for (int i = 1; i < m; ++i) along[i] = along[i - 1] + edge_weight(adj, P[i - 1], P[i]);
        std::vector<char> mask(n_, 0);
        for (int v : comps[e]) mask[v] = 1;
        std::vector<std::vector<double>> from(m);
        for (int i = 0; i < m; ++i) from[i] = masked_dijkstra(adj, mask, P[i]);
        for (int v : comps[e]) {
            // Greedy portals in both directions along the path.
            std::vector<char> mark(m, 0);
            int last = -1;
            for (int i = 0; i < m; ++i)
                if (last < 0 || from[last][v] + (along[i] - along[last]) > (1 + eps) * from[i][v]) mark[i] = 1, last = i;
            last = -1;
            for (int i = m - 1; i >= 0; --i)
                if (last < 0 || from[last][v] + (along[last] - along[i]) > (1 + eps) * from[i][v]) mark[i] = 1, last = i;
            Level lv{e, {}};
            for (int i = 0; i < m; ++i) {
                if (!mark[i]) continue;
                lv.marks.push_back({i, from[i][v]});
                es_.add(v, P[i], dg(v, P[i]));
                for (int l : t->responsible(i + 1)) es_.add(v, P[l - 1], dg(v, P[l - 1]));
            }
            max_landmarks_ = std::max(max_landmarks_, static_cast<int>(lv.marks.size()));
            chain_[v].push_back(std::move(lv));
        }
    }
}

SpannerPath SpdSpanner::query(int u, int v) const {
    if (u == v) return two_hop_path(u, u, u, 0);
    SpannerPath best;
    size_t k = std::min(chain_[u].size(), chain_[v].size());
    for (size_t r = 0; r < k && chain_[u][r].entry == chain_[v][r].entry; ++r) {
        int e = chain_[u][r].entry;
        struct Tagged {
            int pos, owner;
        };
        std::vector<Tagged> merged;
        for (auto& mk : chain_[u][r].marks) merged.push_back({mk.pos, 0});
        for (auto& mk : chain_[v][r].marks) merged.push_back({mk.pos, 1});
        std::stable_sort(merged.begin(), merged.end(), [](auto& a, auto& b) { return a.pos < b.pos; });
        for (size_t i = 0; i + 1 < merged.size(); ++i) {
            if (merged[i].owner == merged[i + 1].owner) continue;
            ++best.inspected;
            int a = merged[i].pos + 1, b = merged[i + 1].pos + 1;
            int mid = paths_[e][two_[e]->query(a, b) - 1];
            double w = two_hop_weight(u, mid, v);
            if (w < best.weight) {
                auto p = two_hop_path(u, mid, v, w);
                p.inspected = best.inspected;
                best = std::move(p);
            }
        }
    }
    return best;
}

}  // namespace lso
