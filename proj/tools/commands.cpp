#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "datasets.hpp"
#include "lso/hop.hpp"

namespace lso::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

const std::vector<std::string> kFamilies = {"triangle-lso", "grid-lso", "doubling-lso", "tree-lso", "treewidth-lso"};
const std::vector<std::string> kSpanners = {"ordering-spanner", "rooted-spanner", "tz-spanner",
                                            "sparse-cover-spanner", "spd-spanner"};

bool among(const std::string& s, const std::vector<std::string>& v) { return std::find(v.begin(), v.end(), s) != v.end(); }

Json params_json(const ExperimentConfig& c) {
    const auto& p = c.params;
    return {{"t", p.t}, {"eps", p.eps}, {"p", p.p}, {"delta", p.delta}, {"k", p.k}, {"f", p.f}, {"hops", p.hops}};
}

// Dataset, metric and the ordering family shared by one command.
class Session {
public:
    explicit Session(const ExperimentConfig& cfg) : cfg_(cfg) {}

    const ExperimentConfig& cfg() const { return cfg_; }
    uint64_t seed(const std::string& tag) const { return derive_seed(cfg_.seed, tag); }

    const Dataset& data() {
        if (!loaded_) {
            ds_ = load_source(cfg_.source);
            lm_ = metric_of(ds_, cfg_.params.p);
            loaded_ = true;
        }
        return ds_;
    }
    const Metric& metric() {
        data();
        return *lm_.metric;
    }
    const PointSet& points() {
        if (data().format != DataFormat::Points) throw Error(cfg_.structure + ": needs a point dataset");
        return ds_.points;
    }
    const WeightedGraph& graph() {
        if (data().format != DataFormat::Graph) throw Error(cfg_.structure + ": needs a graph dataset");
        return ds_.graph;
    }

    // which: one of kFamilies, "default" (triangle on points, doubling
    // otherwise) or "rooted" (tree, else treewidth).
    const OrderingFamily& family(std::string which) {
        if (have_family_) return fam_;
        if (!cfg_.source.family.empty()) {
            data();
            fam_ = family_from_json(read_json_file(cfg_.source.family));
            builder_ = "file";
            have_family_ = true;
            return fam_;
        }
        if (which == "default") which = data().format == DataFormat::Points ? "triangle-lso" : "doubling-lso";
        if (which == "rooted") {
            if (graph().is_tree()) which = "tree-lso";
            else if (data().td) which = "treewidth-lso";
            else throw Error(cfg_.structure + ": rooted family needs a tree or a tree decomposition");
        }
        const auto& p = cfg_.params;
        if (which == "triangle-lso") {
            auto res = build_verified_triangle_lso(points(), {p.p, t(true), p.delta}, seed("triangle-lso"));
            fam_ = std::move(res.family);
            extra_["resampling_rounds"] = res.rounds;
            extra_["schemes_per_shift"] = res.m;
        } else if (which == "grid-lso") {
            auto res = build_verified_grid_lso(points(), p.eps, seed("grid-lso"));
            grid_ = std::move(res.lso);
            fam_ = grid_->family();
            extra_["resampling_rounds"] = res.rounds;
        } else if (which == "doubling-lso") {
            auto cover = build_ultrametric_cover(metric(), t(false), p.eps, seed("doubling-lso"));
            fam_ = cover_preorder_to_triangle_lso(cover);
        } else if (which == "tree-lso") {
            if (!graph().is_tree()) throw Error("tree-lso: input graph is not a tree");
            fam_ = build_rooted_lso_tree(graph());
        } else if (which == "treewidth-lso") {
            if (!data().td) throw Error("treewidth-lso: needs a tree decomposition (--td or <input>.td)");
            ds_.td->validate(graph());
            fam_ = build_rooted_lso_treewidth(graph(), *ds_.td).family;
        } else {
            throw Error("unknown family '" + which + "'");
        }
        builder_ = which;
        have_family_ = true;
        return fam_;
    }

    // Target stretch with the 0 = default convention resolved.
    double t(bool euclidean) {
        if (cfg_.params.t > 0) return cfg_.params.t;
        if (!euclidean) return 8;  // t near 2(1+eps)^3 needs very many partitions per scale
        return 2 * std::pow(static_cast<double>(points().dim()), 1 / cfg_.params.p);
    }

    const std::string& family_builder() const { return builder_; }
    Json& extra() { return extra_; }

private:
    const ExperimentConfig& cfg_;
    bool loaded_ = false;
    Dataset ds_;
    LoadedMetric lm_;
    std::unique_ptr<GridLso> grid_;  // the grid family's hint points into it
    bool have_family_ = false;
    OrderingFamily fam_;
    std::string builder_;
    Json extra_ = Json::object();
};

std::unique_ptr<PathReportingSpanner> make_spanner(Session& s, std::unique_ptr<TzSpanner>& estimator) {
    const auto& name = s.cfg().structure;
    const auto& p = s.cfg().params;
    if (name == "ordering-spanner") return std::make_unique<OrderingSpanner>(s.family("default"), s.metric());
    if (name == "rooted-spanner") return std::make_unique<RootedSpanner>(s.family("rooted"), s.metric());
    if (name == "tz-spanner") return std::make_unique<TzSpanner>(s.metric(), p.k, s.seed("tz-spanner"));
    if (name == "sparse-cover-spanner") {
        estimator = std::make_unique<TzSpanner>(s.metric(), p.k, s.seed("sparse-cover-estimator"));
        auto* est = estimator.get();
        return std::make_unique<SparseCoverSpanner>(s.metric(), p.k, p.eps,
                                                    [est](int a, int b) { return est->estimate(a, b); });
    }
    if (name == "spd-spanner") {
        const auto& g = s.graph();
        Spd spd;
        if (!s.cfg().source.spd.empty()) {
            std::ifstream in(s.cfg().source.spd);
            if (!in) throw Error("cannot open " + s.cfg().source.spd);
            spd = read_spd(in);
        } else if (g.is_tree()) {
            spd = heavy_path_spd(g);
        } else if (s.data().td) {
            spd = treewidth_spd(g, *s.data().td);
        } else {
            throw Error("spd-spanner: needs a tree, a tree decomposition or an --spd file");
        }
        validate_spd(g, spd);
        return std::make_unique<SpdSpanner>(g, spd, p.eps);
    }
    throw Error("not a spanner structure: " + name);
}

std::unique_ptr<SpannerOracle> make_oracle(Session& s) {
    const auto& name = s.cfg().structure;
    if (name == "classic-oracle") return std::make_unique<ClassicSpannerOracle>(s.family("grid-lso"), s.metric());
    return std::make_unique<TriangleSpannerOracle>(s.family("default"), s.metric(), s.cfg().params.hops);
}

int path_depth(int n) {
    int d = 0;
    while ((1LL << d) < n) ++d;
    return d;
}

std::vector<Edge> path_edges(const std::vector<std::pair<int, int>>& pairs) {
    std::vector<Edge> out;
    for (auto [a, b] : pairs) out.push_back({a - 1, b - 1, static_cast<double>(b - a)});
    return out;
}

Json violation_json(int x, int y, double best) {
    return {{"x", x}, {"y", y}, {"best", std::isfinite(best) ? Json(best) : Json(nullptr)}};
}

void fill_from(Report& r, const VerificationReport& v) {
    r.verified_pairs = v.pairs_checked;
    for (const auto& x : v.violations) r.add_violation(violation_json(x.x, x.y, x.best));
    r.max_observed_stretch = v.max_observed_stretch;
}

void fill_from(Report& r, const SpannerCheck& c) {
    r.verified_pairs = c.pairs;
    for (auto [u, v] : c.failed) r.add_violation(violation_json(u, v, kInf));
    // check_spanner lists only the first few failing pairs.
    r.violation_count = std::max(r.violation_count, c.failures);
    r.max_observed_stretch = c.max_stretch;
    r.extra["max_hops"] = c.max_hops;
    r.extra["max_inspected"] = c.max_inspected;
}

constexpr int kSkip = -2;  // pair has a faulty endpoint

// Monotone 2-hop check for path spanners.
template <class S, class Query>
void check_path_pairs(Report& r, const S& s, int n, uint64_t seed, Query query) {
    auto ok = [&](int i, int j, int l) {
        if (l < i || l > j) return false;
        if (l == i || l == j) return i == j || s.has_edge(i, j);
        return s.has_edge(i, l) && s.has_edge(l, j);
    };
    auto one = [&](int i, int j) {
        int l = query(i, j);
        if (l == kSkip) return;
        ++r.verified_pairs;
        if (!ok(i, j, l)) r.add_violation(violation_json(i, j, kInf));
    };
    if (n <= 4096) {
        for (int i = 1; i <= n; ++i)
            for (int j = i; j <= n; ++j) one(i, j);
    } else {
        Rng rng(seed);
        std::uniform_int_distribution<int> X(1, n);
        for (int q = 0; q < 1'000'000; ++q) {
            int a = X(rng), b = X(rng);
            one(std::min(a, b), std::max(a, b));
        }
        r.extra["sampled"] = true;
    }
}

int path_n(const ExperimentConfig& cfg) {
    if (cfg.source.n < 1) throw Error(cfg.structure + ": needs --n >= 1");
    return cfg.source.n;
}

}  // namespace

const std::vector<std::string>& structure_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v = kFamilies;
        v.insert(v.end(), kSpanners.begin(), kSpanners.end());
        for (const char* s : {"ultrametric-cover", "carving-scheme", "two-hop", "ft-two-hop", "ft-spanner",
                              "classic-oracle", "triangle-oracle"})
            v.push_back(s);
        return v;
    }();
    return names;
}

Json build(const ExperimentConfig& cfg) {
    const auto& name = cfg.structure;
    const auto& p = cfg.params;
    Session s(cfg);
    if (among(name, kFamilies)) return family_to_json(s.family(name));
    if (name == "ultrametric-cover")
        return cover_to_json(build_ultrametric_cover(s.metric(), s.t(false), p.eps, s.seed("doubling-lso")));
    if (name == "carving-scheme") {
        const auto& ps = s.points();
        BallCarvingScheme scheme(ps.dim(), p.p, s.t(true), p.delta, 0, s.seed("carving-scheme"));
        auto range = ordering_scale_range(ps, scheme);
        for (int i = range.i_max; i >= range.i_min; --i) carve_scale(ps, scheme, i);
        return scheme_to_json(scheme);
    }
    if (name == "two-hop") {
        TwoHopPathSpanner t(path_n(cfg));
        return spanner_to_json(1, 2, path_edges(t.edges()));
    }
    if (name == "ft-two-hop") {
        FtTwoHopPathSpanner t(path_n(cfg), p.f);
        return spanner_to_json(1, 2, path_edges(t.edges()));
    }
    if (among(name, kSpanners)) {
        std::unique_ptr<TzSpanner> est;
        auto sp = make_spanner(s, est);
        return spanner_to_json(sp->stretch(), sp->hops(), sp->edge_set().edges());
    }
    if (name == "ft-spanner") {
        auto sp = ft_spanner_from_family(s.family("default"), s.metric(), p.f);
        return spanner_to_json(sp->stretch(), 2, sp->edge_set().edges());
    }
    if (name == "classic-oracle" || name == "triangle-oracle")
        throw Error(name + ": oracles produce edges per (T, L) call; use verify");
    throw Error("unknown structure '" + name + "'");
}

Report verify(const ExperimentConfig& cfg) {
    const auto& name = cfg.structure;
    const auto& p = cfg.params;
    Session s(cfg);
    Report r;
    r.structure = name;
    r.params = params_json(cfg);
    r.seed = cfg.seed;
    auto t0 = Clock::now();

    if (among(name, kFamilies)) {
        const auto& fam = s.family(name);
        r.timings["build_ms"] = ms_since(t0);
        auto t1 = Clock::now();
        VerificationReport v = fam.kind == LsoKind::Classic    ? verify_classic(fam, s.metric())
                               : fam.kind == LsoKind::Triangle ? verify_triangle(fam, s.metric())
                                                               : verify_rooted(fam, s.metric());
        r.timings["verify_ms"] = ms_since(t1);
        fill_from(r, v);
        r.num_orderings = static_cast<long long>(fam.orderings.size());
        r.extra["kind"] = to_string(fam.kind);
        r.extra["rho"] = fam.rho;
        r.extra["tau"] = fam.tau();
        r.extra["family_source"] = s.family_builder();
        for (auto it = s.extra().begin(); it != s.extra().end(); ++it) r.extra[it.key()] = it.value();
        return r;
    }
    if (name == "ultrametric-cover") {
        auto cover = build_ultrametric_cover(s.metric(), s.t(false), p.eps, s.seed("doubling-lso"));
        r.timings["build_ms"] = ms_since(t0);
        const auto& m = s.metric();
        for (int x = 0; x < m.size(); ++x)
            for (int y = x + 1; y < m.size(); ++y) {
                ++r.verified_pairs;
                double best = kInf;
                bool dominated = true;
                for (const auto& h : cover.trees) {
                    double u = h.dist(x, y);
                    dominated = dominated && u >= m(x, y);
                    best = std::min(best, u);
                }
                double ratio = best / m(x, y);
                r.max_observed_stretch = std::max(r.max_observed_stretch, ratio);
                if (!dominated || !leq_tol(best, cover.rho * m(x, y))) r.add_violation(violation_json(x, y, ratio));
            }
        r.extra["trees"] = static_cast<long long>(cover.trees.size());
        r.extra["rho"] = cover.rho;
        return r;
    }
    if (name == "two-hop" || name == "ft-two-hop") {
        int n = path_n(cfg);
        if (name == "two-hop") {
            TwoHopPathSpanner t(n);
            r.timings["build_ms"] = ms_since(t0);
            r.num_edges = static_cast<long long>(t.edges().size());
            r.extra["responsibility_count"] = t.responsibility_count();
            if ((n & (n - 1)) == 0) {
                long long want = static_cast<long long>(n) * path_depth(n) + 1;
                r.extra["expected_count"] = want;
                if (t.responsibility_count() != want) r.add_violation({{"count", t.responsibility_count()}});
            }
            check_path_pairs(r, t, n, s.seed("sample"), [&](int i, int j) { return t.query(i, j); });
        } else {
            FtTwoHopPathSpanner t(n, p.f);
            r.timings["build_ms"] = ms_since(t0);
            r.num_edges = static_cast<long long>(t.edges().size());
            r.extra["f_effective"] = t.f();
            r.extra["edge_bound"] = t.edge_bound();
            if (*r.num_edges > t.edge_bound()) r.add_violation({{"edges", *r.num_edges}});
            // One random fault set of size f per run, endpoints exempt.
            Rng rng(s.seed("faults"));
            std::vector<char> faulty(n + 1, 0);
            for (int c = 0; c < std::min(p.f, n); ++c) faulty[std::uniform_int_distribution<int>(1, n)(rng)] = 1;
            auto is_faulty = [&](int x) { return faulty[x] != 0; };
            check_path_pairs(r, t, n, s.seed("sample"), [&](int i, int j) {
                if (faulty[i] || faulty[j]) return kSkip;
                int l = t.query(i, j, is_faulty);
                return faulty[l] ? -1 : l;
            });
        }
        r.max_observed_stretch = r.pass() ? 1 : 0;
        r.timings["total_ms"] = ms_since(t0);
        return r;
    }
    if (among(name, kSpanners)) {
        std::unique_ptr<TzSpanner> est;
        auto sp = make_spanner(s, est);
        r.timings["build_ms"] = ms_since(t0);
        auto t1 = Clock::now();
        auto chk = check_spanner(*sp, s.metric());
        r.timings["verify_ms"] = ms_since(t1);
        fill_from(r, chk);
        r.num_edges = static_cast<long long>(sp->edge_set().size());
        r.weight = sp->edge_set().total_weight();
        r.extra["stretch_bound"] = sp->stretch();
        r.extra["hop_bound"] = sp->hops();
        if (auto* tz = dynamic_cast<TzSpanner*>(sp.get())) {
            r.extra["bunch_total"] = tz->total_bunch_size();
            r.extra["sampling_attempts"] = tz->attempts();
        }
        if (name == "ordering-spanner" || name == "rooted-spanner") r.num_orderings = static_cast<long long>(s.family("default").orderings.size());
        return r;
    }
    if (name == "ft-spanner") {
        const auto& fam = s.family("default");
        auto sp = ft_spanner_from_family(fam, s.metric(), p.f);
        r.timings["build_ms"] = ms_since(t0);
        r.num_edges = static_cast<long long>(sp->edge_set().size());
        r.weight = sp->edge_set().total_weight();
        r.num_orderings = static_cast<long long>(fam.orderings.size());
        int n = s.metric().size();
        Rng rng(s.seed("attacks"));
        const int attacks = 20;
        for (int a = 0; a < attacks; ++a) {
            std::vector<int> F;
            while (static_cast<int>(F.size()) < std::min(p.f, n - 2)) {
                int x = std::uniform_int_distribution<int>(0, n - 1)(rng);
                if (std::find(F.begin(), F.end(), x) == F.end()) F.push_back(x);
            }
            auto chk = check_ft_spanner(*sp, s.metric(), F);
            r.verified_pairs += chk.pairs;
            for (auto [u, v] : chk.failed) r.add_violation({{"x", u}, {"y", v}, {"faults", F}});
            r.violation_count = std::max(r.violation_count, chk.failures);
            r.max_observed_stretch = std::max(r.max_observed_stretch, chk.max_stretch);
        }
        r.extra["attacks"] = attacks;
        r.extra["stretch_bound"] = sp->stretch();
        return r;
    }
    if (name == "classic-oracle" || name == "triangle-oracle") {
        auto orc = make_oracle(s);
        const auto& fam = s.family(name == "classic-oracle" ? "grid-lso" : "default");
        const auto& m = s.metric();
        int n = m.size();
        if (n < 2) throw Error(name + ": needs at least two points");
        bool stretch_applies = name == "triangle-oracle" || fam.rho < 0.25;
        Rng rng(s.seed("oracle-calls"));
        double ws_bound = 0;
        for (int call = 0; call < 100; ++call) {
            std::vector<int> all(n);
            for (int i = 0; i < n; ++i) all[i] = i;
            std::shuffle(all.begin(), all.end(), rng);
            all.resize(2 + std::uniform_int_distribution<int>(0, std::max(0, std::min(n, 60) - 2))(rng));
            double L = m(all[0], all[1]) * std::uniform_real_distribution<double>(0.5, 1.0)(rng);
            if (!(L > 0)) continue;
            auto edges = (*orc)(all, L);
            // Classic: Ws <= 2 tau. Triangle: |T| ceil(log2 |T|) + 1 edges per
            // ordering, each at most 2 rho L, so Ws <= 2 rho tau (ceil(log2 |T|) + 1).
            double w = 0;
            for (const auto& e : edges) w += e.w;
            double ws = w / (static_cast<double>(all.size()) * L);
            double bound = name == "classic-oracle"
                               ? 2.0 * fam.tau()
                               : 2 * fam.rho * fam.tau() * (std::ceil(std::log2(static_cast<double>(all.size()))) + 1);
            ws_bound = std::max(ws_bound, bound);
            if (ws > bound * (1 + kRelTol)) r.add_violation({{"call", call}, {"weak_sparsity", ws}, {"bound", bound}});
            auto dist = edge_set_distances(n, edges, all);
            for (size_t a = 0; a < all.size(); ++a)
                for (int y : all) {
                    double d = m(all[a], y);
                    if (all[a] >= y || d < L || d >= 2 * L) continue;
                    ++r.verified_pairs;
                    double ratio = dist[a][y] / d;
                    r.max_observed_stretch = std::max(r.max_observed_stretch, ratio);
                    if (stretch_applies && !leq_tol(ratio, orc->stretch()))
                        r.add_violation(violation_json(all[a], y, ratio));
                }
        }
        r.weak_sparsity = orc->max_weak_sparsity();
        r.extra["weak_sparsity_bound"] = ws_bound;
        r.num_orderings = static_cast<long long>(fam.orderings.size());
        r.extra["tau"] = fam.tau();
        r.extra["rho"] = fam.rho;
        r.extra["stretch_bound"] = orc->stretch();
        r.extra["stretch_bound_applies"] = stretch_applies;
        r.timings["total_ms"] = ms_since(t0);
        return r;
    }
    if (name == "carving-scheme") throw Error("carving-scheme: nothing to verify; build emits the scheme");
    throw Error("unknown structure '" + name + "'");
}

std::vector<Report> verify_many(const ExperimentConfig& cfg, const std::vector<std::string>& structures, int jobs) {
    std::vector<ExperimentConfig> cfgs;
    for (const auto& st : structures) {
        cfgs.push_back(cfg);
        cfgs.back().structure = st;
    }
    std::vector<Report> out(cfgs.size());
    jobs = std::max(1, jobs);
    for (size_t start = 0; start < cfgs.size(); start += jobs) {
        std::vector<std::future<Report>> running;
        for (size_t i = start; i < std::min(cfgs.size(), start + jobs); ++i)
            running.push_back(std::async(std::launch::async, [&cfgs, i] { return verify(cfgs[i]); }));
        for (size_t i = 0; i < running.size(); ++i) out[start + i] = running[i].get();
    }
    return out;
}

void run_nns(const ExperimentConfig& cfg, std::istream& in, std::ostream& out, const std::string& labels_path) {
    auto strategy = nns_strategy_from_string(cfg.structure);
    require_in_scope(strategy);
    Session s(cfg);
    const auto& m = s.metric();
    int n = m.size();

    std::function<void(int)> ins, del;
    std::function<NnsResult(int)> query;
    std::function<Json(int)> label;
    std::function<size_t(int)> entries;
    std::string kind = cfg.structure;
    std::unique_ptr<RootedNns> rooted;
    std::unique_ptr<TriangleNns> tri;
    std::unique_ptr<UltrametricNns> ultra;
    std::optional<Hst> hst;
    if (strategy == NnsStrategy::Rooted) {
        rooted = std::make_unique<RootedNns>(s.family("rooted"), m);
        ins = [&](int x) { rooted->insert(x); };
        del = [&](int x) { rooted->erase(x); };
        query = [&](int q) { return rooted->query(q); };
        label = [&](int x) { return label_to_json(rooted->label(x)); };
        entries = [&](int x) { return rooted->label(x).entries.size(); };
    } else if (strategy == NnsStrategy::Triangle) {
        tri = std::make_unique<TriangleNns>(s.family("default"), m);
        ins = [&](int x) { tri->insert(x); };
        del = [&](int x) { tri->erase(x); };
        query = [&](int q) { return tri->query(q); };
        label = [&](int x) { return label_to_json(tri->label(x)); };
        entries = [&](int x) { return tri->label(x).entries(); };
    } else {
        // Exact with respect to the first tree of an ultrametric cover.
        auto cover = build_ultrametric_cover(m, s.t(false), cfg.params.eps, s.seed("doubling-lso"));
        hst = cover.trees.front();
        ultra = std::make_unique<UltrametricNns>(*hst);
        ins = [&](int x) { ultra->insert(x); };
        del = [&](int x) { ultra->erase(x); };
        query = [&](int q) { return ultra->query(q); };
        label = [&](int x) { return label_to_json(ultra->label(x)); };
        entries = [&](int x) { return ultra->label(x).entries.size(); };
    }
    if (!labels_path.empty()) {
        // Sizes in entries and in serialized payload bytes.
        std::ostringstream ls;
        size_t max_entries = 0, max_bytes = 0, total_bytes = 0;
        for (int x = 0; x < n; ++x) {
            std::string payload = label(x).dump();
            max_entries = std::max(max_entries, entries(x));
            max_bytes = std::max(max_bytes, payload.size());
            total_bytes += payload.size();
            ls << x << " " << kind << " " << payload << "\n";
        }
        write_text(labels_path, ls.str());
        out << "# labels max_entries " << max_entries << " max_bytes " << max_bytes << " total_bytes " << total_bytes
            << "\n";
    }
    out << std::setprecision(17);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string op;
        int x;
        if (!(ss >> op) || op[0] == '#') continue;
        if (!(ss >> x) || x < 0 || x >= n) {
            out << "error: bad line '" << line << "'\n";
            continue;
        }
        if (op == "i") {
            ins(x);
        } else if (op == "d") {
            del(x);
        } else if (op == "q") {
            auto r = query(x);
            if (r.status == NnsStatus::Empty) out << "q " << x << " empty\n";
            else if (!r.ok()) out << "q " << x << " no-shared-ordering\n";
            else out << "q " << x << " " << r.answer.point << " " << r.answer.estimate << " " << m(x, r.answer.point) << "\n";
        } else {
            out << "error: unknown op '" << op << "'\n";
        }
    }
}

void run_path(const ExperimentConfig& cfg, std::istream& in, std::ostream& out) {
    Session s(cfg);
    std::unique_ptr<TzSpanner> est;
    std::unique_ptr<PathReportingSpanner> sp;
    std::unique_ptr<FaultTolerantSpanner> ft;
    if (cfg.structure == "ft-spanner") ft = ft_spanner_from_family(s.family("default"), s.metric(), cfg.params.f);
    else sp = make_spanner(s, est);
    int n = s.metric().size();
    out << std::setprecision(17);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string op;
        if (!(ss >> op) || op[0] == '#') continue;
        int u, v;
        if (op != "p" || !(ss >> u >> v) || u < 0 || v < 0 || u >= n || v >= n) {
            out << "error: bad line '" << line << "'\n";
            continue;
        }
        std::vector<int> faults;
        for (int x; ss >> x;) faults.push_back(x);
        try {
            SpannerPath p;
            if (ft) p = ft->query(u, v, faults);
            else if (!faults.empty()) throw Error("faults need --structure ft-spanner");
            else p = sp->query(u, v);
            if (!p.found()) {
                out << "p " << u << " " << v << " none\n";
                continue;
            }
            out << "p " << u << " " << v << " path";
            for (int x : p.vertices) out << " " << x;
            out << " weight " << p.weight << "\n";
        } catch (const Error& e) {
            out << "error: " << e.what() << "\n";
        }
    }
}

Json bench(const ExperimentConfig& cfg, long long queries) {
    Json j;
    j["structure"] = cfg.structure;
    j["seed"] = cfg.seed;
    Rng rng(derive_seed(cfg.seed, "bench"));
    std::vector<double> ns;
    ns.reserve(static_cast<size_t>(queries));
    auto time_queries = [&](auto&& one) {
        for (long long q = 0; q < queries; ++q) {
            auto t0 = Clock::now();
            one();
            ns.push_back(std::chrono::duration<double, std::nano>(Clock::now() - t0).count());
        }
    };
    auto t0 = Clock::now();
    volatile long long sink = 0;
    const auto& name = cfg.structure;
    if (name == "two-hop" || name == "ft-two-hop") {
        int n = path_n(cfg);
        std::uniform_int_distribution<int> X(1, n);
        j["n"] = n;
        if (name == "two-hop") {
            TwoHopPathSpanner t(n);
            j["build_ms"] = ms_since(t0);
            time_queries([&] {
                int a = X(rng), b = X(rng);
                sink = sink + t.query(std::min(a, b), std::max(a, b));
            });
        } else {
            FtTwoHopPathSpanner t(n, cfg.params.f);
            j["build_ms"] = ms_since(t0);
            time_queries([&] {
                int a = X(rng), b = X(rng);
                sink = sink + t.query(std::min(a, b), std::max(a, b), [](int) { return false; });
            });
        }
    } else if (name == "predecessor") {
        uint32_t U = static_cast<uint32_t>(std::max(2, path_n(cfg)));
        PredecessorSet ps(U);
        std::uniform_int_distribution<uint32_t> X(0, U - 1);
        for (uint32_t i = 0; i < U / 4; ++i) ps.insert(X(rng));
        j["n"] = U;
        j["build_ms"] = ms_since(t0);
        time_queries([&] {
            auto r = ps.predecessor(X(rng));
            sink = sink + (r ? *r : 0);
        });
    } else {
        Session s(cfg);
        std::unique_ptr<TzSpanner> est;
        auto sp = make_spanner(s, est);
        int n = s.metric().size();
        std::uniform_int_distribution<int> X(0, n - 1);
        j["n"] = n;
        j["build_ms"] = ms_since(t0);
        time_queries([&] { sink = sink + static_cast<long long>(sp->query(X(rng), X(rng)).vertices.size()); });
    }
    std::sort(ns.begin(), ns.end());
    auto pct = [&](double q) { return ns.empty() ? 0.0 : ns[std::min(ns.size() - 1, static_cast<size_t>(q * ns.size()))]; };
    j["queries"] = queries;
    j["p50_ns"] = pct(0.50);
    j["p99_ns"] = pct(0.99);
    double sum = 0;
    for (double x : ns) sum += x;
    j["mean_ns"] = ns.empty() ? 0.0 : sum / ns.size();
    return j;
}

std::string report_csv(const std::vector<std::string>& report_paths) {
    std::ostringstream out;
    out << std::setprecision(10);
    out << "file,structure,pass,verified_pairs,violation_count,max_observed_stretch,weak_sparsity,num_edges,num_orderings\n";
    auto cell = [](const Json& j, const char* key) {
        if (!j.contains(key) || j[key].is_null()) return std::string();
        const auto& v = j[key];
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    };
    for (const auto& path : report_paths) {
        Json j = read_json_file(path);
        std::vector<Json> reports = j.is_array() ? std::vector<Json>(j.begin(), j.end()) : std::vector<Json>{j};
        for (const auto& r : reports)
            out << path << "," << cell(r, "structure") << "," << cell(r, "pass") << "," << cell(r, "verified_pairs") << ","
                << cell(r, "violation_count") << "," << cell(r, "max_observed_stretch") << "," << cell(r, "weak_sparsity")
                << "," << cell(r, "num_edges") << "," << cell(r, "num_orderings") << "\n";
    }
    return out.str();
}

}  // namespace lso::cli
