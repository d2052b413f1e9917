#include "doctest.h"

#include "config.hpp"
#include "datasets.hpp"
#include "lso/common.hpp"

using namespace lso;
using namespace lso::cli;

TEST_CASE("config round-trips through json") {
    ExperimentConfig c;
    c.structure = "doubling-lso";
    c.source.generator = "uniform-cube";
    c.source.n = 64;
    c.source.d = 3;
    c.params.t = 8;
    c.params.f = 3;
    c.seed = 42;
    c.verify.timings = false;
    c.outputs.report = "r.json";
    CHECK(config_from_json(to_json(c)) == c);
    CHECK(config_from_json(Json::object()) == ExperimentConfig{});
}

TEST_CASE("config rejects unknown keys and bad types") {
    auto j = to_json(ExperimentConfig{});
    auto top = j;
    top["bogus"] = 1;
    CHECK_THROWS_AS(config_from_json(top), Error);
    auto nested = j;
    nested["params"]["kk"] = 2;
    CHECK_THROWS_AS(config_from_json(nested), Error);
    auto typed = j;
    typed["params"]["k"] = "two";
    CHECK_THROWS_AS(config_from_json(typed), Error);
}

TEST_CASE("generated datasets are deterministic in the seed") {
    for (const char* kind : {"uniform-cube", "gaussian-clusters", "grid", "random-tree", "random-graph", "random-metric"}) {
        auto da = generate(kind, 30, 2, 7), db = generate(kind, 30, 2, 7);
        auto a = metric_of(da, 2), b = metric_of(db, 2);
        const Metric& ma = *a.metric;
        const Metric& mb = *b.metric;
        REQUIRE(ma.size() == mb.size());
        for (int i = 0; i < ma.size(); ++i)
            for (int j = 0; j < ma.size(); ++j) CHECK(ma(i, j) == mb(i, j));
    }
    CHECK_THROWS_AS(generate("nope", 10, 2, 1), Error);
}
