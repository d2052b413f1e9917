#include "lso/metric.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

namespace lso {

PointSet::PointSet(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim <= 0) throw Error("point set: dimension must be positive");
    if (coords_.size() % dim != 0) throw Error("point set: coordinate count not a multiple of dim");
    for (double c : coords_)
        if (!std::isfinite(c)) throw Error("point set: non-finite coordinate");
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw Error("point set: at least one point required");
    int d = static_cast<int>(rows[0].size());
    std::vector<double> c;
    c.reserve(rows.size() * d);
    for (auto& r : rows) {
        if (static_cast<int>(r.size()) != d) throw Error("point set: ragged rows");
        c.insert(c.end(), r.begin(), r.end());
    }
    return PointSet(d, std::move(c));
}

PointSet PointSet::subset(const std::vector<int>& ids) const {
    std::vector<double> c;
    c.reserve(ids.size() * dim_);
    for (int i : ids) {
        auto r = (*this)[i];
        c.insert(c.end(), r.begin(), r.end());
    }
    return PointSet(dim_, std::move(c));
}

PointSet PointSet::scaled(double s) const {
    std::vector<double> c = coords_;
    for (double& x : c) x *= s;
    return PointSet(dim_, std::move(c));
}

double lp_distance(std::span<const double> x, std::span<const double> y, double p) {
    if (x.size() != y.size()) throw Error("lp_distance: dimension mismatch");
    size_t d = x.size();
    if (std::isinf(p)) {
        double m = 0;
        for (size_t i = 0; i < d; ++i) m = std::max(m, std::abs(x[i] - y[i]));
        return m;
    }
    if (p < 1) throw Error("lp_distance: p must be >= 1");
    double s = 0;
    if (p == 2) {
        for (size_t i = 0; i < d; ++i) {
            double t = x[i] - y[i];
            s += t * t;
        }
        return std::sqrt(s);
    }
    if (p == 1) {
        for (size_t i = 0; i < d; ++i) s += std::abs(x[i] - y[i]);
        return s;
    }
    for (size_t i = 0; i < d; ++i) s += std::pow(std::abs(x[i] - y[i]), p);
    return std::pow(s, 1.0 / p);
}

LpMetric::LpMetric(PointSet ps, double p) : ps_(std::move(ps)), p_(p) {
    if (!(p >= 1)) throw Error("lp metric: p must be in [1, inf]");
    if (ps_.size() < 1) throw Error("lp metric: empty point set");
}

MatrixMetric::MatrixMetric(int n, std::vector<double> d, bool exact) : n_(n), d_(std::move(d)), exact_(exact) {
    if (d_.size() != static_cast<size_t>(n) * n) throw Error("matrix metric: size mismatch");
}

MatrixMetric MatrixMetric::from(const Metric& m) {
    int n = m.size();
    std::vector<double> d(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) d[static_cast<size_t>(a) * n + b] = d[static_cast<size_t>(b) * n + a] = m(a, b);
    return MatrixMetric(n, std::move(d), m.exact());
}

void WeightedGraph::validate() const {
    if (n <= 0) throw Error("graph: vertex count must be positive");
    for (auto& e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw Error("graph: edge endpoint out of range");
        if (!(e.w > 0) || !std::isfinite(e.w)) throw Error("graph: weights must be positive");
    }
}

std::vector<std::vector<std::pair<int, double>>> WeightedGraph::adjacency() const {
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (auto& e : edges) {
        adj[e.u].push_back({e.v, e.w});
        adj[e.v].push_back({e.u, e.w});
    }
    return adj;
}

bool WeightedGraph::connected() const {
    if (n == 0) return true;
    auto adj = adjacency();
    std::vector<char> seen(n, 0);
    std::vector<int> st{0};
    seen[0] = 1;
    int cnt = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (auto [u, w] : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                ++cnt;
                st.push_back(u);
            }
    }
    return cnt == n;
}

bool WeightedGraph::is_tree() const { return static_cast<int>(edges.size()) == n - 1 && connected(); }

std::vector<double> dijkstra(const std::vector<std::vector<std::pair<int, double>>>& adj, int src) {
    std::vector<double> dist(adj.size(), kInf);
    using QE = std::pair<double, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
    dist[src] = 0;
    pq.push({0, src});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (auto [u, w] : adj[v]) {
            double nd = d + w;
            if (nd < dist[u]) {
                dist[u] = nd;
                pq.push({nd, u});
            }
        }
    }
    return dist;
}

std::vector<std::vector<double>> graph_distances(const WeightedGraph& g, const std::vector<int>& sources) {
    g.validate();
    auto adj = g.adjacency();
    std::vector<std::vector<double>> out;
    out.reserve(sources.size());
    for (int s : sources) {
        if (s < 0 || s >= g.n) throw Error("graph_distances: source out of range");
        out.push_back(dijkstra(adj, s));
        for (int v = 0; v < g.n; ++v)
            if (std::isinf(out.back()[v])) throw Error("graph_distances: graph disconnected, vertex " + std::to_string(v) + " unreachable from " + std::to_string(s));
    }
    return out;
}

MatrixMetric graph_metric(const WeightedGraph& g) {
    std::vector<int> all(g.n);
    std::iota(all.begin(), all.end(), 0);
    auto t = graph_distances(g, all);
    std::vector<double> d(static_cast<size_t>(g.n) * g.n);
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) d[static_cast<size_t>(a) * g.n + b] = std::min(t[a][b], t[b][a]);
    return MatrixMetric(g.n, std::move(d), true);
}

std::vector<int> build_epsilon_net(const Metric& m, const std::vector<int>& subset, double r) {
    if (!(r > 0)) throw Error("epsilon net: radius must be positive");
    std::vector<int> ids = subset;
    std::sort(ids.begin(), ids.end());
    std::vector<int> net;
    for (int x : ids) {
        bool covered = false;
        for (int c : net)
            if (m(x, c) < r) {
                covered = true;
                break;
            }
        if (!covered) net.push_back(x);
    }
    return net;
}

std::vector<int> build_epsilon_net(const Metric& m, double r) {
    std::vector<int> all(m.size());
    std::iota(all.begin(), all.end(), 0);
    return build_epsilon_net(m, all, r);
}

double min_distance(const Metric& m) {
    double best = kInf;
    for (int a = 0; a < m.size(); ++a)
        for (int b = a + 1; b < m.size(); ++b) {
            double d = m(a, b);
            if (d > 0) best = std::min(best, d);
        }
    return best;
}

double diameter(const Metric& m) {
    double best = 0;
    for (int a = 0; a < m.size(); ++a)
        for (int b = a + 1; b < m.size(); ++b) best = std::max(best, m(a, b));
    return best;
}

double aspect_ratio(const Metric& m) {
    double mn = min_distance(m);
    if (std::isinf(mn)) throw Error("aspect ratio: need two distinct points");
    return diameter(m) / mn;
}

namespace {

// Next non-empty, non-comment line.
bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        auto p = line.find_first_not_of(" \t\r");
        if (p == std::string::npos || line[p] == '#') continue;
        return true;
    }
    return false;
}

}  // namespace

PointSet read_points(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (next_line(in, line)) {
        std::istringstream ss(line);
        std::vector<double> r;
        double x;
        while (ss >> x) r.push_back(x);
        if (!ss.eof()) throw Error("point file: bad number on line: " + line);
        rows.push_back(std::move(r));
    }
    return PointSet::from_rows(rows);
}

WeightedGraph read_graph(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw Error("graph file: missing header");
    WeightedGraph g;
    size_t m = 0;
    std::istringstream hs(line);
    if (!(hs >> g.n >> m)) throw Error("graph file: bad header");
    for (size_t i = 0; i < m; ++i) {
        if (!next_line(in, line)) throw Error("graph file: too few edges");
        std::istringstream ss(line);
        Edge e{};
        if (!(ss >> e.u >> e.v >> e.w)) throw Error("graph file: bad edge line: " + line);
        g.edges.push_back(e);
    }
    g.validate();
    return g;
}

MatrixMetric read_matrix(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw Error("matrix file: missing header");
    std::istringstream hs(line);
    std::string tag;
    int n = 0;
    if (!(hs >> tag >> n) || tag != "matrix" || n <= 0) throw Error("matrix file: expected 'matrix n'");
    std::vector<double> d(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        if (!next_line(in, line)) throw Error("matrix file: too few rows");
        std::istringstream ss(line);
        for (int b = 0; b < n; ++b)
            if (!(ss >> d[static_cast<size_t>(a) * n + b])) throw Error("matrix file: short row");
    }
    return MatrixMetric(n, std::move(d), true);
}

void write_points(std::ostream& out, const PointSet& ps) {
    out << std::setprecision(17);
    for (int i = 0; i < ps.size(); ++i) {
        auto r = ps[i];
        for (int k = 0; k < ps.dim(); ++k) out << (k ? " " : "") << r[k];
        out << "\n";
    }
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
    out << std::setprecision(17) << g.n << " " << g.edges.size() << "\n";
    for (auto& e : g.edges) out << e.u << " " << e.v << " " << e.w << "\n";
}

void write_matrix(std::ostream& out, const MatrixMetric& m) {
    out << std::setprecision(17) << "matrix " << m.size() << "\n";
    for (int a = 0; a < m.size(); ++a) {
        for (int b = 0; b < m.size(); ++b) out << (b ? " " : "") << m(a, b);
        out << "\n";
    }
}

}  // namespace lso
