#include "serialize.hpp"

#include <algorithm>
#include <fstream>

namespace lso::cli {

Json family_to_json(const OrderingFamily& fam) {
    Json j;
    j["kind"] = to_string(fam.kind);
    j["rho"] = fam.rho;
    j["tau"] = fam.tau();
    j["n"] = fam.n;
    Json ords = Json::array();
    for (const auto& o : fam.orderings) {
        Json e;
        e["root"] = o.root >= 0 ? Json(o.root) : Json(nullptr);
        e["perm"] = o.perm;
        ords.push_back(std::move(e));
    }
    j["orderings"] = std::move(ords);
    return j;
}

OrderingFamily family_from_json(const Json& j) {
    try {
        OrderingFamily fam;
        fam.kind = kind_from_string(j.at("kind").get<std::string>());
        fam.rho = j.at("rho").get<double>();
        int n = 0;
        for (const auto& e : j.at("orderings"))
            for (int x : e.at("perm")) n = std::max(n, x + 1);
        if (j.contains("n")) n = std::max(n, j["n"].get<int>());
        fam.n = n;
        for (const auto& e : j.at("orderings")) {
            int root = e.at("root").is_null() ? -1 : e["root"].get<int>();
            fam.orderings.emplace_back(e.at("perm").get<std::vector<int>>(), n, root);
        }
        fam.check_structure();
        return fam;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("family json: ") + e.what());
    }
}

Json hst_to_json(const Hst& h) {
    Json j;
    j["gamma"] = h.gamma;
    j["children"] = h.children;
    j["leaf_of"] = h.leaf_of;
    return j;
}

Hst hst_from_json(const Json& j) {
    try {
        Hst h;
        h.gamma = j.at("gamma").get<std::vector<double>>();
        h.children = j.at("children").get<std::vector<std::vector<int>>>();
        h.leaf_of = j.at("leaf_of").get<std::vector<int>>();
        int nodes = static_cast<int>(h.gamma.size());
        if (static_cast<int>(h.children.size()) != nodes || static_cast<int>(h.leaf_of.size()) != nodes)
            throw Error("hst json: gamma, children and leaf_of differ in length");
        h.parent.assign(nodes, -1);
        for (int v = 0; v < nodes; ++v)
            for (int c : h.children[v]) {
                if (c < 0 || c >= nodes || h.parent[c] >= 0) throw Error("hst json: bad child list");
                h.parent[c] = v;
            }
        int points = 0;
        for (int v = 0; v < nodes; ++v) {
            if (h.parent[v] < 0) h.root = v;
            points = std::max(points, h.leaf_of[v] + 1);
        }
        h.leaf_node.assign(points, -1);
        for (int v = 0; v < nodes; ++v)
            if (h.leaf_of[v] >= 0) h.leaf_node[h.leaf_of[v]] = v;
        h.validate();
        return h;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("hst json: ") + e.what());
    }
}

Json cover_to_json(const UltrametricCover& c) {
    Json j;
    j["rho"] = c.rho;
    Json trees = Json::array();
    for (const auto& h : c.trees) trees.push_back(hst_to_json(h));
    j["trees"] = std::move(trees);
    return j;
}

Json spanner_to_json(double stretch, int hops, const std::vector<Edge>& edges) {
    Json j;
    j["stretch"] = stretch;
    j["hops"] = hops;
    auto sorted = edges;
    for (auto& e : sorted)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    Json es = Json::array();
    for (const auto& e : sorted) es.push_back(Json::array({e.u, e.v, e.w}));
    j["edges"] = std::move(es);
    return j;
}

Json scheme_to_json(const BallCarvingScheme& s) {
    Json j;
    j["p"] = s.p();
    j["t"] = s.t();
    j["delta"] = s.delta();
    j["xi"] = s.xi();
    j["gamma"] = s.gamma();
    j["shift"] = s.shift();
    j["seed"] = s.seed();
    Json centers = Json::object();
    for (int b = 0; b < s.gamma(); ++b)
        if (s.center_count_or_zero(b) > 0) centers[std::to_string(b)] = s.base_centers(b);
    j["centers"] = std::move(centers);
    return j;
}

Json label_to_json(const LcaLabel& l) {
    Json a = Json::array();
    for (const auto& e : l.entries) a.push_back({{"path", e.path}, {"exit_index", e.exit_index}, {"exit_node", e.exit_node}, {"gamma", e.gamma}});
    return a;
}

Json label_to_json(const RootedNnsLabel& l) {
    Json a = Json::array();
    for (const auto& e : l.entries) a.push_back({{"ordering", e.ordering}, {"position", e.position}, {"root_dist", e.root_dist}});
    return a;
}

Json label_to_json(const TriangleNnsLabel& l) {
    Json a = Json::array();
    for (const auto& p : l.per) {
        Json hops = Json::array();
        for (const auto& h : p.hops) hops.push_back(Json::array({h.midpoint, h.dist}));
        a.push_back({{"position", p.position}, {"hops", std::move(hops)}});
    }
    return a;
}

Json report_to_json(const Report& r, bool with_timings) {
    Json j;
    j["structure"] = r.structure;
    j["params"] = r.params;
    j["seed"] = r.seed;
    if (r.num_orderings) j["num_orderings"] = *r.num_orderings;
    if (r.num_edges) j["num_edges"] = *r.num_edges;
    if (r.weight) j["weight"] = *r.weight;
    j["verified_pairs"] = r.verified_pairs;
    j["violation_count"] = r.violation_count;
    j["violations"] = r.violations;
    j["max_observed_stretch"] = r.max_observed_stretch;
    if (r.weak_sparsity) j["weak_sparsity"] = *r.weak_sparsity;
    for (auto it = r.extra.begin(); it != r.extra.end(); ++it) j[it.key()] = it.value();
    j["pass"] = r.pass();
    if (with_timings) j["timings"] = r.timings;
    return j;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

}  // namespace lso::cli
