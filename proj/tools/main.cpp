// lso: dataset generation, structure builds, verification and reports.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "datasets.hpp"

using namespace lso;
using namespace lso::cli;

namespace {

// Flags shared by the structure subcommands; explicit flags override --config.
struct Flags {
    std::string config, input, out, report, structure, format, td, family, spd, generator, dump_config;
    uint64_t seed = 1;
    double t = 0, eps = 0.25, p = 2, delta = 0.5;
    int k = 2, f = 1, hops = 2, n = 0, d = 2, jobs = 1;
    bool no_timings = false;
};

void add_common(CLI::App* app, Flags& fl) {
    app->add_option("--config", fl.config, "ExperimentConfig JSON");
    app->add_option("--input", fl.input, "dataset file");
    app->add_option("--out", fl.out, "output file (default stdout)");
    app->add_option("--report", fl.report, "build: also verify and write the report here");
    app->add_option("--seed", fl.seed, "64-bit seed");
    app->add_option("--structure", fl.structure, "structure name");
    app->add_option("--t", fl.t, "target stretch (0 = default for the structure)");
    app->add_option("--eps", fl.eps, "epsilon");
    app->add_option("--k", fl.k, "tz / sparse cover parameter");
    app->add_option("--f", fl.f, "fault budget");
    app->add_option("--p", fl.p, "lp norm of point datasets");
    app->add_option("--delta", fl.delta, "stretch slack of the triangle builder");
    app->add_option("--hops", fl.hops, "hops of the triangle oracle (2, 3, 4)");
    app->add_option("--n", fl.n, "size for generated or path inputs");
    app->add_option("--d", fl.d, "dimension for generated inputs");
    app->add_option("--gen", fl.generator, "generate the input instead of reading --input");
    app->add_option("--format", fl.format, "points | graph | matrix (default: sniff)");
    app->add_option("--td", fl.td, "tree decomposition file");
    app->add_option("--family", fl.family, "prebuilt ordering family JSON");
    app->add_option("--spd", fl.spd, "shortest path decomposition file");
    app->add_option("--dump-config", fl.dump_config, "write the resolved config here");
}

ExperimentConfig resolve(CLI::App* app, const Flags& fl) {
    ExperimentConfig c = fl.config.empty() ? ExperimentConfig{} : read_config(fl.config);
    auto given = [&](const char* name) { return app->count(name) > 0; };
    if (given("--structure")) c.structure = fl.structure;
    if (given("--input")) c.source.file = fl.input;
    if (given("--format")) c.source.format = fl.format;
    if (given("--gen")) c.source.generator = fl.generator, c.source.file.clear();
    if (given("--n")) c.source.n = fl.n;
    if (given("--d")) c.source.d = fl.d;
    if (given("--td")) c.source.td = fl.td;
    if (given("--family")) c.source.family = fl.family;
    if (given("--spd")) c.source.spd = fl.spd;
    if (given("--seed")) c.seed = fl.seed, c.source.seed = fl.seed;
    if (given("--t")) c.params.t = fl.t;
    if (given("--eps")) c.params.eps = fl.eps;
    if (given("--p")) c.params.p = fl.p;
    if (given("--delta")) c.params.delta = fl.delta;
    if (given("--k")) c.params.k = fl.k;
    if (given("--f")) c.params.f = fl.f;
    if (given("--hops")) c.params.hops = fl.hops;
    if (given("--out")) c.outputs.structure = c.outputs.report = fl.out;
    if (given("--report")) c.outputs.report = fl.report;
    if (fl.no_timings) c.verify.timings = false;
    if (!fl.dump_config.empty()) write_config(fl.dump_config, c);
    return c;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) std::cout << text;
    else write_text(path, text);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, ',');)
        if (!part.empty()) out.push_back(part);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Locality-sensitive orderings: build, verify and benchmark"};
    app.require_subcommand(1);

    std::string gen_kind, gen_out;
    int gen_n = 100, gen_d = 2;
    uint64_t gen_seed = 1;
    auto* gen = app.add_subcommand("gen", "write a deterministic dataset");
    gen->add_option("kind", gen_kind, "uniform-cube | gaussian-clusters | grid | random-metric | random-tree | random-graph")
        ->required();
    gen->add_option("--n", gen_n, "number of points / vertices");
    gen->add_option("--d", gen_d, "dimension of point sets");
    gen->add_option("--seed", gen_seed, "64-bit seed");
    gen->add_option("--out", gen_out, "output file")->required();

    Flags build_fl, verify_fl, nns_fl, path_fl, bench_fl;
    auto* build_cmd = app.add_subcommand("build", "build a structure and write its JSON");
    add_common(build_cmd, build_fl);

    auto* verify_cmd = app.add_subcommand("verify", "build, check and write a JSON report (exit 1 on failure)");
    add_common(verify_cmd, verify_fl);
    verify_cmd->add_option("--jobs", verify_fl.jobs, "parallel verifications for comma-separated structures");
    verify_cmd->add_flag("--no-timings", verify_fl.no_timings, "omit timings for byte-stable reports");

    std::string labels_out;
    auto* nns_cmd = app.add_subcommand("nns", "labeled nearest neighbor queries from stdin (i/d/q <id>)");
    add_common(nns_cmd, nns_fl);
    nns_cmd->add_option("--labels", labels_out, "write 'id kind payload' label lines here");

    auto* path_cmd = app.add_subcommand("path", "spanner path queries from stdin (p <u> <v> [faults...])");
    add_common(path_cmd, path_fl);

    long long bench_queries = 1'000'000;
    auto* bench_cmd = app.add_subcommand("bench", "build and query timings with P50/P99");
    add_common(bench_cmd, bench_fl);
    bench_cmd->add_option("--queries", bench_queries, "number of timed queries");

    std::vector<std::string> report_inputs;
    std::string report_out;
    auto* report_cmd = app.add_subcommand("report", "CSV summary of report JSON files");
    report_cmd->add_option("--input", report_inputs, "report files")->required();
    report_cmd->add_option("--out", report_out, "CSV output (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            write_dataset(gen_out, generate(gen_kind, gen_n, gen_d, gen_seed));
            return 0;
        }
        if (*build_cmd) {
            auto cfg = resolve(build_cmd, build_fl);
            emit(cfg.outputs.structure, build(cfg).dump() + "\n");
            bool separate = !cfg.outputs.report.empty() && cfg.outputs.report != cfg.outputs.structure;
            if (!cfg.verify.enabled || !separate) return 0;
            auto r = verify(cfg);
            emit(cfg.outputs.report, report_to_json(r, cfg.verify.timings).dump(2) + "\n");
            return r.pass() ? 0 : 1;
        }
        if (*verify_cmd) {
            auto cfg = resolve(verify_cmd, verify_fl);
            auto names = split_commas(cfg.structure);
            if (names.empty()) throw Error("verify: --structure is required");
            auto reports = verify_many(cfg, names, verify_fl.jobs);
            bool ok = true;
            Json out = Json::array();
            for (const auto& r : reports) {
                ok = ok && r.pass();
                out.push_back(report_to_json(r, cfg.verify.timings));
            }
            emit(cfg.outputs.report, (names.size() == 1 ? out[0] : out).dump(2) + "\n");
            return ok ? 0 : 1;
        }
        if (*nns_cmd) {
            auto cfg = resolve(nns_cmd, nns_fl);
            if (cfg.outputs.report.empty()) {
                run_nns(cfg, std::cin, std::cout, labels_out);
            } else {
                std::ofstream out(cfg.outputs.report);
                run_nns(cfg, std::cin, out, labels_out);
            }
            return 0;
        }
        if (*path_cmd) {
            auto cfg = resolve(path_cmd, path_fl);
            if (cfg.outputs.report.empty()) {
                run_path(cfg, std::cin, std::cout);
            } else {
                std::ofstream out(cfg.outputs.report);
                run_path(cfg, std::cin, out);
            }
            return 0;
        }
        if (*bench_cmd) {
            auto cfg = resolve(bench_cmd, bench_fl);
            emit(cfg.outputs.report, bench(cfg, bench_queries).dump(2) + "\n");
            return 0;
        }
        if (*report_cmd) {
            emit(report_out, report_csv(report_inputs));
            return 0;
        }
    } catch (const OutOfScope& e) {
        std::cerr << "out of scope: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
