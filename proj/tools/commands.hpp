#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "serialize.hpp"

namespace lso::cli {

// Structure names accepted by build / verify / path / bench.
const std::vector<std::string>& structure_names();

// Builds the configured structure and returns its serialization.
Json build(const ExperimentConfig& cfg);
// Builds and checks the structure; report.pass() decides the exit status.
Report verify(const ExperimentConfig& cfg);
// Verifies several structures of one config, up to `jobs` at a time.
std::vector<Report> verify_many(const ExperimentConfig& cfg, const std::vector<std::string>& structures, int jobs);

// Reads "i <id>", "d <id>", "q <id>" lines; writes one answer line per query.
// labels_path, when set, receives "id kind payload" lines.
void run_nns(const ExperimentConfig& cfg, std::istream& in, std::ostream& out, const std::string& labels_path);
// Reads "p <u> <v> [faults...]" lines; writes the path and its weight.
void run_path(const ExperimentConfig& cfg, std::istream& in, std::ostream& out);
// Timing percentiles of build and queries.
Json bench(const ExperimentConfig& cfg, long long queries);
// CSV summary of report files.
std::string report_csv(const std::vector<std::string>& report_paths);

}  // namespace lso::cli
