#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "lso/doubling.hpp"
#include "lso/euclid.hpp"
#include "lso/nns.hpp"
#include "lso/ordering.hpp"
#include "lso/spanner.hpp"

namespace lso::cli {

// {"kind","rho","tau","n","orderings":[{"root":id|null,"perm":[...]}]}
Json family_to_json(const OrderingFamily& fam);
OrderingFamily family_from_json(const Json& j);

// {"gamma","children","leaf_of"}
Json hst_to_json(const Hst& h);
Hst hst_from_json(const Json& j);
// {"rho","trees":[...]}
Json cover_to_json(const UltrametricCover& c);

// {"stretch","hops","edges":[[u,v,w],...]}
Json spanner_to_json(double stretch, int hops, const std::vector<Edge>& edges);

// {"p","t","delta","xi","gamma","shift","seed","centers":{j:[...]}}
Json scheme_to_json(const BallCarvingScheme& s);

Json label_to_json(const LcaLabel& l);
Json label_to_json(const RootedNnsLabel& l);
Json label_to_json(const TriangleNnsLabel& l);

struct Report {
    std::string structure;
    Json params = Json::object();
    uint64_t seed = 0;
    std::optional<long long> num_orderings, num_edges;
    std::optional<double> weight;
    long long verified_pairs = 0;
    long long violation_count = 0;
    Json violations = Json::array();  // first kMaxListed
    double max_observed_stretch = 0;
    std::optional<double> weak_sparsity;
    Json extra = Json::object();
    Json timings = Json::object();

    static constexpr int kMaxListed = 1000;
    bool pass() const { return violation_count == 0; }
    void add_violation(Json v) {
        if (violation_count++ < kMaxListed) violations.push_back(std::move(v));
    }
};

Json report_to_json(const Report& r, bool with_timings);

Json read_json_file(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace lso::cli
