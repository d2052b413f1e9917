#pragma once

#include <memory>
#include <optional>
#include <string>

#include "config.hpp"
#include "lso/metric.hpp"
#include "lso/ordering.hpp"

namespace lso::cli {

enum class DataFormat { Points, Graph, Matrix };

std::string to_string(DataFormat f);
DataFormat format_from_string(const std::string& s);

struct Dataset {
    DataFormat format = DataFormat::Points;
    PointSet points;
    WeightedGraph graph;
    std::optional<MatrixMetric> matrix;
    std::optional<TreeDecomposition> td;  // grids carry their decomposition
};

// Deterministic in (kind, n, d, seed). Throws on unknown kinds or bad sizes.
Dataset generate(const std::string& kind, int n, int d, uint64_t seed);

// Writes with a leading "# lso <format>" line so readers can sniff it.
void write_dataset(const std::string& path, const Dataset& ds);
// format empty: sniff the header comment, then the first data line.
Dataset read_dataset(const std::string& path, const std::string& format = "");

// Source described by the config: a file or a generator spec.
Dataset load_source(const ExperimentConfig::Source& src);

// Loaded metric view over a dataset (lp for points, shortest paths otherwise).
struct LoadedMetric {
    std::unique_ptr<Metric> metric;
    const PointSet* points = nullptr;
    const WeightedGraph* graph = nullptr;
};
LoadedMetric metric_of(const Dataset& ds, double p);

}  // namespace lso::cli
