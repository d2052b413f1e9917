#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace lso::cli {

using Json = nlohmann::ordered_json;

// Everything needed to reproduce one build / verify run.
struct ExperimentConfig {
    std::string structure;
    struct Source {
        std::string file;       // dataset path, or empty to generate
        std::string format;     // points | graph | matrix, empty = sniff
        std::string generator;  // gen kind when file is empty
        int n = 0;
        int d = 2;
        uint64_t seed = 1;
        std::string td;      // tree decomposition file for treewidth inputs
        std::string family;  // prebuilt ordering family JSON, used instead of building one
        std::string spd;     // shortest path decomposition file
        bool operator==(const Source&) const = default;
    } source;
    struct Params {
        double t = 0;  // 0: 2 d^(1/p) for Euclidean triangle builds, 8 otherwise
        double eps = 0.25;
        double p = 2;
        double delta = 0.5;
        int k = 2;
        int f = 1;
        int hops = 2;
        bool operator==(const Params&) const = default;
    } params;
    uint64_t seed = 1;
    struct Verify {
        bool enabled = true;  // build also writes a report when outputs.report is set
        bool timings = true;  // off for byte-stable reports
        bool operator==(const Verify&) const = default;
    } verify;
    struct Outputs {
        std::string structure;
        std::string report;
        bool operator==(const Outputs&) const = default;
    } outputs;

    bool operator==(const ExperimentConfig&) const = default;
};

Json to_json(const ExperimentConfig& c);
// Throws lso::Error on unknown keys or wrong types.
ExperimentConfig config_from_json(const Json& j);
ExperimentConfig read_config(const std::string& path);
void write_config(const std::string& path, const ExperimentConfig& c);

}  // namespace lso::cli
