#include "lso/ordering.hpp"

#include <algorithm>
#include <istream>
#include <memory>
#include <numeric>
#include <ostream>
#include <sstream>

namespace lso {

std::string to_string(LsoKind k) {
    switch (k) {
        case LsoKind::Classic: return "classic";
        case LsoKind::Triangle: return "triangle";
        case LsoKind::Rooted: return "rooted";
    }
    return "?";
}

LsoKind kind_from_string(const std::string& s) {
    if (s == "classic") return LsoKind::Classic;
    if (s == "triangle") return LsoKind::Triangle;
    if (s == "rooted") return LsoKind::Rooted;
    throw Error("unknown ordering kind: " + s);
}

Ordering::Ordering(std::vector<int> p, int n, int r) : perm(std::move(p)), pos(n, -1), root(r) {
    for (int i = 0; i < static_cast<int>(perm.size()); ++i) {
        int x = perm[i];
        if (x < 0 || x >= n) throw Error("ordering: id out of range");
        if (pos[x] >= 0) throw Error("ordering: repeated id " + std::to_string(x));
        pos[x] = i;
    }
}

std::vector<std::vector<int>> OrderingFamily::memberships() const {
    std::vector<std::vector<int>> mem(n);
    for (int s = 0; s < static_cast<int>(orderings.size()); ++s)
        for (int x : orderings[s].perm) mem[x].push_back(s);
    return mem;
}

int OrderingFamily::tau() const {
    std::vector<int> c(n, 0);
    for (auto& o : orderings)
        for (int x : o.perm) ++c[x];
    return n ? *std::max_element(c.begin(), c.end()) : 0;
}

void OrderingFamily::check_structure() const {
    for (size_t s = 0; s < orderings.size(); ++s) {
        const auto& o = orderings[s];
        if (static_cast<int>(o.pos.size()) != n) throw Error("ordering " + std::to_string(s) + ": position map has wrong size");
        if (kind != LsoKind::Rooted && o.size() != n)
            throw Error("ordering " + std::to_string(s) + " does not cover all points");
        if (kind == LsoKind::Rooted && (o.perm.empty() || o.perm[0] != o.root))
            throw Error("rooted ordering " + std::to_string(s) + ": root is not first");
    }
}

namespace {

// Distances as a dense matrix when affordable, else the metric itself.
struct DistCache {
    std::unique_ptr<MatrixMetric> mat;
    const Metric* m;
    explicit DistCache(const Metric& base) : m(&base) {
        if (!dynamic_cast<const MatrixMetric*>(&base) && base.size() <= 4096) {
            mat = std::make_unique<MatrixMetric>(MatrixMetric::from(base));
            m = mat.get();
        }
    }
    double operator()(int a, int b) const { return (*m)(a, b); }
};

double ratio(double num, double d) {
    if (num <= 0) return 0;
    if (d <= 0) return kInf;
    return num / d;
}

// Smallest radius r for which o's window between x and y splits.
double classic_min_radius(const Ordering& o, const DistCache& m, int x, int y) {
    int a = o.pos[x], b = o.pos[y];
    if (a > b) {
        std::swap(a, b);
        std::swap(x, y);
    }
    int w = b - a - 1;
    if (w <= 0) return 0;
    std::vector<double> suf(w + 1, 0);
    for (int i = w - 1; i >= 0; --i) suf[i] = std::max(suf[i + 1], m(y, o.perm[a + 1 + i]));
    double best = suf[0], pre = 0;
    for (int k = 0; k < w; ++k) {
        pre = std::max(pre, m(x, o.perm[a + 1 + k]));
        best = std::min(best, std::max(pre, suf[k + 1]));
    }
    return best;
}

}  // namespace

bool classic_window_ok(const Ordering& o, const Metric& m, int x, int y, double r) {
    int a = o.pos[x], b = o.pos[y];
    if (a > b) {
        std::swap(a, b);
        std::swap(x, y);
    }
    int k = a + 1;
    while (k < b && leq_tol(m(x, o.perm[k]), r)) ++k;
    for (; k < b; ++k)
        if (!leq_tol(m(y, o.perm[k]), r)) return false;
    return true;
}

VerificationReport verify_classic(const OrderingFamily& fam, const Metric& metric) {
    if (fam.kind != LsoKind::Classic) throw Error("verify_classic: family is not classic");
    fam.check_structure();
    DistCache m(metric);
    VerificationReport rep;
    int n = fam.n;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            ++rep.pairs_checked;
            double d = m(x, y);
            double found = kInf;
            auto try_one = [&](int s) {
                double r = classic_min_radius(fam.orderings[s], m, x, y);
                found = std::min(found, ratio(r, d));
                return leq_tol(found, fam.rho);
            };
            bool ok = false;
            if (fam.hint) {
                int s = fam.hint(x, y);
                if (s >= 0 && s < static_cast<int>(fam.orderings.size())) ok = try_one(s);
            }
            for (int s = 0; !ok && s < static_cast<int>(fam.orderings.size()); ++s) ok = try_one(s);
            rep.max_observed_stretch = std::max(rep.max_observed_stretch, found);
            if (!ok) rep.violations.push_back({x, y, found});
        }
    rep.max_membership = fam.tau();
    return rep;
}

std::vector<double> window_diameters(const Ordering& o, const Metric& m) {
    int k = o.size();
    std::vector<double> D(static_cast<size_t>(k) * k, 0);
    for (int i = k - 1; i >= 0; --i)
        for (int j = i + 1; j < k; ++j) {
            double v = m(o.perm[i], o.perm[j]);
            v = std::max(v, D[static_cast<size_t>(i + 1) * k + j]);
            v = std::max(v, D[static_cast<size_t>(i) * k + j - 1]);
            D[static_cast<size_t>(i) * k + j] = v;
        }
    return D;
}

double window_diameter_naive(const Ordering& o, const Metric& m, int i, int j) {
    if (i > j) std::swap(i, j);
    double best = 0;
    for (int a = i; a <= j; ++a)
        for (int b = a + 1; b <= j; ++b) best = std::max(best, m(o.perm[a], o.perm[b]));
    return best;
}

VerificationReport verify_triangle(const OrderingFamily& fam, const Metric& metric) {
    if (fam.kind != LsoKind::Triangle) throw Error("verify_triangle: family is not triangle");
    fam.check_structure();
    DistCache m(metric);
    int n = fam.n;
    std::vector<double> best(static_cast<size_t>(n) * n, kInf);
    std::vector<double> next(n), cur(n);
    for (auto& o : fam.orderings) {
        // Row recurrence over i descending; next holds D(i+1, .).
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = n - 1; i >= 0; --i) {
            int x = o.perm[i];
            cur[i] = 0;
            for (int j = i + 1; j < n; ++j) {
                int y = o.perm[j];
                double v = std::max({m(x, y), next[j], cur[j - 1]});
                cur[j] = v;
                size_t key = x < y ? static_cast<size_t>(x) * n + y : static_cast<size_t>(y) * n + x;
                if (v < best[key]) best[key] = v;
            }
            std::swap(cur, next);
        }
    }
    VerificationReport rep;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            ++rep.pairs_checked;
            double r = ratio(best[static_cast<size_t>(x) * n + y], m(x, y));
            if (fam.orderings.empty()) r = kInf;
            rep.max_observed_stretch = std::max(rep.max_observed_stretch, r);
            if (!leq_tol(r, fam.rho)) rep.violations.push_back({x, y, r});
        }
    rep.max_membership = fam.tau();
    return rep;
}

VerificationReport verify_rooted(const OrderingFamily& fam, const Metric& metric) {
    if (fam.kind != LsoKind::Rooted) throw Error("verify_rooted: family is not rooted");
    fam.check_structure();
    DistCache m(metric);
    int n = fam.n;
    for (size_t s = 0; s < fam.orderings.size(); ++s) {
        const auto& o = fam.orderings[s];
        for (int i = 1; i < o.size(); ++i)
            if (m(o.root, o.perm[i]) < m(o.root, o.perm[i - 1]) * (1 - kRelTol))
                throw Error("rooted ordering " + std::to_string(s) + " is not sorted by distance to its root");
    }
    auto mem = fam.memberships();
    VerificationReport rep;
    std::vector<char> in(fam.orderings.size(), 0);
    for (int u = 0; u < n; ++u) {
        for (int s : mem[u]) in[s] = 1;
        for (int v = u + 1; v < n; ++v) {
            ++rep.pairs_checked;
            double best = kInf;
            for (int s : mem[v])
                if (in[s]) {
                    int r = fam.orderings[s].root;
                    best = std::min(best, m(u, r) + m(r, v));
                }
            double rr = std::isinf(best) ? kInf : ratio(best, m(u, v));
            rep.max_observed_stretch = std::max(rep.max_observed_stretch, rr);
            if (!leq_tol(rr, fam.rho)) rep.violations.push_back({u, v, rr});
        }
        for (int s : mem[u]) in[s] = 0;
    }
    rep.max_membership = fam.tau();
    return rep;
}

OrderingFamily build_rooted_lso_tree(const WeightedGraph& tree) {
    tree.validate();
    if (!tree.is_tree()) throw Error("build_rooted_lso_tree: input is not a tree");
    int n = tree.n;
    auto adj = tree.adjacency();
    OrderingFamily fam;
    fam.kind = LsoKind::Rooted;
    fam.n = n;
    fam.rho = 1;
    std::vector<char> removed(n, 0);
    std::vector<int> sz(n), par(n);
    std::vector<double> dist(n);
    std::vector<std::vector<int>> work{{0}};  // one representative per component
    while (!work.empty()) {
        int start = work.back()[0];
        work.pop_back();
        // Collect component in BFS order.
        std::vector<int> comp{start};
        par[start] = -1;
        for (size_t i = 0; i < comp.size(); ++i)
            for (auto [u, w] : adj[comp[i]])
                if (!removed[u] && u != par[comp[i]]) {
                    par[u] = comp[i];
                    comp.push_back(u);
                }
        int total = static_cast<int>(comp.size());
        if (total < 2) continue;  // a lone vertex has no pair left to serve
        for (int i = total - 1; i >= 0; --i) {
            int v = comp[i];
            sz[v] = 1;
            for (auto [u, w] : adj[v])
                if (!removed[u] && u != par[v]) sz[v] += sz[u];
        }
        int c = start;
        for (int v : comp) {
            int mx = total - sz[v];
            for (auto [u, w] : adj[v])
                if (!removed[u] && u != par[v]) mx = std::max(mx, sz[u]);
            if (mx * 2 <= total) {
                c = v;
                break;
            }
        }
        // Distances from the centroid inside the component.
        std::vector<int> order{c};
        dist[c] = 0;
        par[c] = -1;
        for (size_t i = 0; i < order.size(); ++i)
            for (auto [u, w] : adj[order[i]])
                if (!removed[u] && u != par[order[i]]) {
                    par[u] = order[i];
                    dist[u] = dist[order[i]] + w;
                    order.push_back(u);
                }
        std::sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] != dist[b] ? dist[a] < dist[b] : a < b; });
        fam.orderings.emplace_back(std::move(order), n, c);
        removed[c] = 1;
        for (auto [u, w] : adj[c])
            if (!removed[u]) work.push_back({u});
    }
    return fam;
}

int TreeDecomposition::width() const {
    size_t w = 0;
    for (auto& b : bags) w = std::max(w, b.size());
    return static_cast<int>(w) - 1;
}

void TreeDecomposition::validate(const WeightedGraph& g) const {
    int B = static_cast<int>(bags.size());
    if (n != g.n) throw Error("tree decomposition: vertex count differs from graph");
    if (B == 0) throw Error("tree decomposition: no bags");
    if (static_cast<int>(edges.size()) != B - 1) throw Error("tree decomposition: bag graph is not a tree (edge count)");
    std::vector<std::vector<int>> badj(B);
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= B || b >= B) throw Error("tree decomposition: bag edge out of range");
        badj[a].push_back(b);
        badj[b].push_back(a);
    }
    {
        std::vector<char> seen(B, 0);
        std::vector<int> st{0};
        seen[0] = 1;
        int cnt = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : badj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    ++cnt;
                    st.push_back(y);
                }
        }
        if (cnt != B) throw Error("tree decomposition: bag graph is not a tree (disconnected)");
    }
    std::vector<std::vector<int>> where(n);
    for (int b = 0; b < B; ++b)
        for (int v : bags[b]) {
            if (v < 0 || v >= n) throw Error("tree decomposition: bag vertex out of range");
            where[v].push_back(b);
        }
    for (int v = 0; v < n; ++v)
        if (where[v].empty()) throw Error("tree decomposition: vertex coverage violated, vertex " + std::to_string(v) + " in no bag");
    std::vector<std::vector<int>> sorted_bags = bags;
    for (auto& b : sorted_bags) std::sort(b.begin(), b.end());
    for (auto& e : g.edges) {
        bool ok = false;
        for (int b : where[e.u])
            if (std::binary_search(sorted_bags[b].begin(), sorted_bags[b].end(), e.v)) {
                ok = true;
                break;
            }
        if (!ok) throw Error("tree decomposition: edge coverage violated for edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    // Running intersection: bags holding v form a connected subtree.
    std::vector<char> has(B, 0), seen(B, 0);
    for (int v = 0; v < n; ++v) {
        for (int b : where[v]) has[b] = 1;
        std::vector<int> st{where[v][0]};
        seen[where[v][0]] = 1;
        size_t cnt = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : badj[x])
                if (has[y] && !seen[y]) {
                    seen[y] = 1;
                    ++cnt;
                    st.push_back(y);
                }
        }
        bool ok = cnt == where[v].size();
        for (int b : where[v]) has[b] = seen[b] = 0;
        if (!ok) throw Error("tree decomposition: vertex connectivity violated for vertex " + std::to_string(v));
    }
}

TreeDecomposition read_tree_decomposition(std::istream& in) {
    TreeDecomposition td;
    std::string line, tag;
    int nb = -1, w1 = 0;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        if (!(ss >> tag) || tag[0] == '#') continue;
        if (tag == "td") {
            ss >> nb >> w1 >> td.n;
            td.bags.assign(nb, {});
        } else if (tag == "b") {
            int id, v;
            ss >> id;
            if (id < 0 || id >= nb) throw Error("tree decomposition file: bad bag id");
            while (ss >> v) td.bags[id].push_back(v);
        } else if (tag == "e") {
            int a, b;
            if (!(ss >> a >> b)) throw Error("tree decomposition file: bad edge line");
            td.edges.push_back({a, b});
        } else {
            throw Error("tree decomposition file: unknown line tag " + tag);
        }
    }
    if (nb < 0) throw Error("tree decomposition file: missing td header");
    return td;
}

void write_tree_decomposition(std::ostream& out, const TreeDecomposition& td) {
    out << "td " << td.bags.size() << " " << td.width() + 1 << " " << td.n << "\n";
    for (size_t b = 0; b < td.bags.size(); ++b) {
        out << "b " << b;
        for (int v : td.bags[b]) out << " " << v;
        out << "\n";
    }
    for (auto [a, b] : td.edges) out << "e " << a << " " << b << "\n";
}

TreeDecomposition grid_tree_decomposition(int rows, int cols) {
    TreeDecomposition td;
    td.n = rows * cols;
    if (rows == 1 || cols == 1 || td.n <= cols + 1) {
        // Degenerate grids: consecutive pairs (or one bag).
        if (td.n <= cols + 1) {
            std::vector<int> all(td.n);
            std::iota(all.begin(), all.end(), 0);
            td.bags.push_back(all);
            return td;
        }
    }
    for (int k = 0; k + cols < td.n; ++k) {
        std::vector<int> b;
        for (int v = k; v <= k + cols; ++v) b.push_back(v);
        td.bags.push_back(std::move(b));
        if (k > 0) td.edges.push_back({k - 1, k});
    }
    return td;
}

TreeDecomposition tree_tree_decomposition(const WeightedGraph& tree) {
    if (!tree.is_tree()) throw Error("tree decomposition: input is not a tree");
    TreeDecomposition td;
    td.n = tree.n;
    if (tree.n == 1) {
        td.bags = {{0}};
        return td;
    }
    auto adj = tree.adjacency();
    std::vector<int> par(tree.n, -1), bag_of(tree.n, -1), order{0};
    std::vector<char> seen(tree.n, 0);
    seen[0] = 1;
    for (size_t i = 0; i < order.size(); ++i)
        for (auto [u, w] : adj[order[i]])
            if (!seen[u]) {
                seen[u] = 1;
                par[u] = order[i];
                order.push_back(u);
            }
    int first_root_bag = -1;
    for (size_t i = 1; i < order.size(); ++i) {
        int v = order[i];
        int b = static_cast<int>(td.bags.size());
        td.bags.push_back({par[v], v});
        bag_of[v] = b;
        if (par[v] == 0) {
            if (first_root_bag < 0) first_root_bag = b;
            else td.edges.push_back({first_root_bag, b});
        } else {
            td.edges.push_back({bag_of[par[v]], b});
        }
    }
    return td;
}

int TreewidthLso::separating_cluster(int u, int v) const {
    const auto& a = chain[u];
    const auto& b = chain[v];
    int c = -1;
    for (size_t i = 0; i < a.size() && i < b.size() && a[i] == b[i]; ++i) c = a[i];
    return c;
}

TreewidthLso build_rooted_lso_treewidth(const WeightedGraph& g, const TreeDecomposition& td) {
    g.validate();
    td.validate(g);
    MatrixMetric d = graph_metric(g);
    int n = g.n, B = static_cast<int>(td.bags.size());
    std::vector<std::vector<int>> badj(B);
    for (auto [a, b] : td.edges) {
        badj[a].push_back(b);
        badj[b].push_back(a);
    }
    TreewidthLso out;
    out.family.kind = LsoKind::Rooted;
    out.family.n = n;
    out.family.rho = 1;
    out.chain.assign(n, {});
    std::vector<char> deleted(n, 0), bag_alive(B, 1), mark(B, 0);

    struct Task {
        std::vector<int> bags;
        int parent;
    };
    std::vector<Task> work;
    std::vector<int> all(B);
    std::iota(all.begin(), all.end(), 0);
    work.push_back({all, -1});
    std::vector<int> vseen(n, -1);
    while (!work.empty()) {
        Task t = std::move(work.back());
        work.pop_back();
        // Live vertices of this decomposition component.
        std::vector<int> verts;
        int stamp = static_cast<int>(out.clusters.size());
        for (int b : t.bags)
            for (int v : td.bags[b])
                if (!deleted[v] && vseen[v] != stamp) {
                    vseen[v] = stamp;
                    verts.push_back(v);
                }
        if (verts.empty()) continue;
        // Balanced bag: minimize largest remaining component, ties lowest id.
        for (int b : t.bags) mark[b] = 1;
        std::vector<int> sorted_bags = t.bags;
        std::sort(sorted_bags.begin(), sorted_bags.end());
        int best_bag = -1;
        size_t best_size = SIZE_MAX;
        // Subtree sizes from an arbitrary root give all component sizes.
        {
            std::vector<int> order{sorted_bags[0]}, par(1, -1);
            std::vector<int> parent_of(B, -2);
            parent_of[sorted_bags[0]] = -1;
            for (size_t i = 0; i < order.size(); ++i)
                for (int y : badj[order[i]])
                    if (mark[y] && parent_of[y] == -2) {
                        parent_of[y] = order[i];
                        order.push_back(y);
                    }
            std::vector<size_t> sub(B, 1);
            for (size_t i = order.size(); i-- > 1;) sub[parent_of[order[i]]] += sub[order[i]];
            size_t total = order.size();
            for (int b : sorted_bags) {
                size_t mx = total - sub[b];
                for (int y : badj[b])
                    if (mark[y] && parent_of[y] == b) mx = std::max(mx, sub[y]);
                if (mx < best_size) {
                    best_size = mx;
                    best_bag = b;
                }
            }
        }
        int cid = static_cast<int>(out.clusters.size());
        out.clusters.push_back({t.parent, best_bag, {}});
        for (int v : verts) out.chain[v].push_back(cid);
        for (int x : td.bags[best_bag]) {
            std::vector<int> perm = verts;
            if (deleted[x]) perm.push_back(x);
            std::sort(perm.begin(), perm.end(), [&](int a, int b) {
                double da = d(x, a), db = d(x, b);
                return da != db ? da < db : a < b;
            });
            out.clusters[cid].orderings.push_back(static_cast<int>(out.family.orderings.size()));
            out.family.orderings.emplace_back(std::move(perm), n, x);
        }
        for (int x : td.bags[best_bag]) deleted[x] = 1;
        // Components of the bag tree minus the separator.
        mark[best_bag] = 0;
        std::vector<char> used(B, 0);
        for (int y0 : badj[best_bag]) {
            if (!mark[y0] || used[y0]) continue;
            std::vector<int> comp{y0};
            used[y0] = 1;
            for (size_t i = 0; i < comp.size(); ++i)
                for (int y : badj[comp[i]])
                    if (mark[y] && !used[y]) {
                        used[y] = 1;
                        comp.push_back(y);
                    }
            work.push_back({std::move(comp), cid});
        }
        for (int b : t.bags) mark[b] = 0;
    }
    return out;
}

}  // namespace lso
