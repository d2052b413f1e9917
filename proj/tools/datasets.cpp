#include "datasets.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lso/common.hpp"

namespace lso::cli {

std::string to_string(DataFormat f) {
    switch (f) {
        case DataFormat::Points: return "points";
        case DataFormat::Graph: return "graph";
        default: return "matrix";
    }
}

DataFormat format_from_string(const std::string& s) {
    if (s == "points") return DataFormat::Points;
    if (s == "graph") return DataFormat::Graph;
    if (s == "matrix") return DataFormat::Matrix;
    throw Error("unknown data format '" + s + "' (points, graph, matrix)");
}

namespace {

double uniform(Rng& rng) { return std::uniform_real_distribution<double>(0, 1)(rng); }

int pick(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

WeightedGraph tree_edges(int n, Rng& rng) {
    WeightedGraph g;
    g.n = n;
    for (int v = 1; v < n; ++v) g.edges.push_back({pick(rng, v), v, static_cast<double>(1 + pick(rng, 10))});
    return g;
}

}  // namespace

Dataset generate(const std::string& kind, int n, int d, uint64_t seed) {
    if (n < 1) throw Error("gen: n must be positive");
    if (d < 1) throw Error("gen: d must be positive");
    Rng rng = make_rng(seed, "gen:" + kind);
    Dataset ds;
    if (kind == "uniform-cube") {
        std::vector<double> c(static_cast<size_t>(n) * d);
        for (auto& x : c) x = uniform(rng);
        ds.points = PointSet(d, std::move(c));
    } else if (kind == "gaussian-clusters") {
        int clusters = std::max(1, static_cast<int>(std::lround(std::sqrt(n / 4.0))));
        std::vector<double> centers(static_cast<size_t>(clusters) * d);
        for (auto& x : centers) x = uniform(rng);
        std::normal_distribution<double> N(0, 0.05);
        std::vector<double> c(static_cast<size_t>(n) * d);
        for (int i = 0; i < n; ++i) {
            int k = pick(rng, clusters);
            for (int a = 0; a < d; ++a) c[static_cast<size_t>(i) * d + a] = centers[static_cast<size_t>(k) * d + a] + N(rng);
        }
        ds.points = PointSet(d, std::move(c));
    } else if (kind == "grid") {
        // cols = ceil(sqrt n); n is rounded up to a full rows x cols grid.
        int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
        int rows = (n + cols - 1) / cols;
        ds.format = DataFormat::Graph;
        ds.graph.n = rows * cols;
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                int v = r * cols + c;
                if (c + 1 < cols) ds.graph.edges.push_back({v, v + 1, static_cast<double>(1 + pick(rng, 4))});
                if (r + 1 < rows) ds.graph.edges.push_back({v, v + cols, static_cast<double>(1 + pick(rng, 4))});
            }
        ds.td = grid_tree_decomposition(rows, cols);
    } else if (kind == "random-tree") {
        ds.format = DataFormat::Graph;
        ds.graph = tree_edges(n, rng);
    } else if (kind == "random-graph") {
        // Connected: a random tree plus about n extra edges.
        ds.format = DataFormat::Graph;
        ds.graph = tree_edges(n, rng);
        for (int e = 0; e < n && n > 1; ++e) {
            int u = pick(rng, n), v = pick(rng, n);
            if (u != v) ds.graph.edges.push_back({u, v, static_cast<double>(1 + pick(rng, 10))});
        }
    } else if (kind == "random-metric") {
        std::vector<double> m(static_cast<size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) m[static_cast<size_t>(i) * n + j] = m[static_cast<size_t>(j) * n + i] = 1 + 9 * uniform(rng);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double via = m[static_cast<size_t>(i) * n + k] + m[static_cast<size_t>(k) * n + j];
                    auto& cur = m[static_cast<size_t>(i) * n + j];
                    if (via < cur) cur = via;
                }
        ds.format = DataFormat::Matrix;
        ds.matrix.emplace(n, std::move(m), false);
    } else {
        throw Error("gen: unknown kind '" + kind +
                    "' (uniform-cube, gaussian-clusters, grid, random-metric, random-tree, random-graph)");
    }
    return ds;
}

void write_dataset(const std::string& path, const Dataset& ds) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << "# lso " << to_string(ds.format) << "\n";
    switch (ds.format) {
        case DataFormat::Points: write_points(out, ds.points); break;
        case DataFormat::Graph: write_graph(out, ds.graph); break;
        case DataFormat::Matrix: write_matrix(out, *ds.matrix); break;
    }
    if (ds.td) {
        std::ofstream td(path + ".td");
        if (!td) throw Error("cannot write " + path + ".td");
        write_tree_decomposition(td, *ds.td);
    }
}

Dataset read_dataset(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::string fmt = format;
    if (fmt.empty()) {
        std::string line;
        while (std::getline(in, line)) {
            if (line.rfind("# lso ", 0) == 0) {
                fmt = line.substr(6);
                break;
            }
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ss(line);
            std::string first;
            ss >> first;
            if (first == "matrix") {
                fmt = "matrix";
            } else {
                // "n m" with integer tokens reads as a graph header.
                std::string second, third;
                bool ints = first.find_first_not_of("0123456789") == std::string::npos;
                fmt = ints && (ss >> second) && second.find_first_not_of("0123456789") == std::string::npos &&
                              !(ss >> third)
                          ? "graph"
                          : "points";
            }
            break;
        }
        in.clear();
        in.seekg(0);
    }
    Dataset ds;
    ds.format = format_from_string(fmt);
    switch (ds.format) {
        case DataFormat::Points: ds.points = read_points(in); break;
        case DataFormat::Graph: ds.graph = read_graph(in); break;
        case DataFormat::Matrix: ds.matrix.emplace(read_matrix(in)); break;
    }
    return ds;
}

Dataset load_source(const ExperimentConfig::Source& src) {
    Dataset ds = src.file.empty() ? generate(src.generator, src.n, src.d, src.seed) : read_dataset(src.file, src.format);
    if (!src.td.empty()) {
        std::ifstream in(src.td);
        if (!in) throw Error("cannot open " + src.td);
        ds.td = read_tree_decomposition(in);
    } else if (!src.file.empty()) {
        std::ifstream in(src.file + ".td");
        if (in) ds.td = read_tree_decomposition(in);
    }
    return ds;
}

LoadedMetric metric_of(const Dataset& ds, double p) {
    LoadedMetric lm;
    switch (ds.format) {
        case DataFormat::Points:
            lm.metric = std::make_unique<LpMetric>(ds.points, p);
            lm.points = &ds.points;
            break;
        case DataFormat::Graph:
            lm.metric = std::make_unique<MatrixMetric>(graph_metric(ds.graph));
            lm.graph = &ds.graph;
            break;
        case DataFormat::Matrix: lm.metric = std::make_unique<MatrixMetric>(*ds.matrix); break;
    }
    return lm;
}

}  // namespace lso::cli
