#include "config.hpp"

#include <fstream>
#include <set>

#include "lso/common.hpp"

namespace lso::cli {

namespace {

void only_keys(const Json& j, const std::string& where, std::initializer_list<const char*> keys) {
    if (!j.is_object()) throw Error("config: " + where + " must be an object");
    std::set<std::string> ok(keys.begin(), keys.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) throw Error("config: unknown key '" + it.key() + "' in " + where);
}

template <class T>
void take(const Json& j, const char* key, T& out, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) return;
    try {
        out = it->template get<T>();
    } catch (const nlohmann::json::exception&) {
        throw Error("config: bad value for '" + std::string(key) + "' in " + where);
    }
}

}  // namespace

Json to_json(const ExperimentConfig& c) {
    Json j;
    j["structure"] = c.structure;
    j["source"] = {{"file", c.source.file},  {"format", c.source.format}, {"generator", c.source.generator},
                   {"n", c.source.n},        {"d", c.source.d},           {"seed", c.source.seed},
                   {"td", c.source.td},      {"family", c.source.family}, {"spd", c.source.spd}};
    j["params"] = {{"t", c.params.t},         {"eps", c.params.eps}, {"p", c.params.p}, {"delta", c.params.delta},
                   {"k", c.params.k},         {"f", c.params.f},     {"hops", c.params.hops}};
    j["seed"] = c.seed;
    j["verify"] = {{"enabled", c.verify.enabled}, {"timings", c.verify.timings}};
    j["outputs"] = {{"structure", c.outputs.structure}, {"report", c.outputs.report}};
    return j;
}

ExperimentConfig config_from_json(const Json& j) {
    ExperimentConfig c;
    only_keys(j, "config", {"structure", "source", "params", "seed", "verify", "outputs"});
    take(j, "structure", c.structure, "config");
    take(j, "seed", c.seed, "config");
    if (auto it = j.find("source"); it != j.end()) {
        only_keys(*it, "source", {"file", "format", "generator", "n", "d", "seed", "td", "family", "spd"});
        take(*it, "file", c.source.file, "source");
        take(*it, "format", c.source.format, "source");
        take(*it, "generator", c.source.generator, "source");
        take(*it, "n", c.source.n, "source");
        take(*it, "d", c.source.d, "source");
        take(*it, "seed", c.source.seed, "source");
        take(*it, "td", c.source.td, "source");
        take(*it, "family", c.source.family, "source");
        take(*it, "spd", c.source.spd, "source");
    }
    if (auto it = j.find("params"); it != j.end()) {
        only_keys(*it, "params", {"t", "eps", "p", "delta", "k", "f", "hops"});
        take(*it, "t", c.params.t, "params");
        take(*it, "eps", c.params.eps, "params");
        take(*it, "p", c.params.p, "params");
        take(*it, "delta", c.params.delta, "params");
        take(*it, "k", c.params.k, "params");
        take(*it, "f", c.params.f, "params");
        take(*it, "hops", c.params.hops, "params");
    }
    if (auto it = j.find("verify"); it != j.end()) {
        only_keys(*it, "verify", {"enabled", "timings"});
        take(*it, "enabled", c.verify.enabled, "verify");
        take(*it, "timings", c.verify.timings, "verify");
    }
    if (auto it = j.find("outputs"); it != j.end()) {
        only_keys(*it, "outputs", {"structure", "report"});
        take(*it, "structure", c.outputs.structure, "outputs");
        take(*it, "report", c.outputs.report, "outputs");
    }
    return c;
}

ExperimentConfig read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("config: cannot open " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(std::string("config: ") + e.what());
    }
    return config_from_json(j);
}

void write_config(const std::string& path, const ExperimentConfig& c) {
    std::ofstream out(path);
    if (!out) throw Error("config: cannot write " + path);
    out << to_json(c).dump(2) << "\n";
}

}  // namespace lso::cli
