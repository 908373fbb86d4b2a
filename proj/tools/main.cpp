// spannerforge command-line front end.
#include <chrono>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "spannerforge/errors.hpp"
#include "spannerforge/graph_io.hpp"
#include "spannerforge/lp_text.hpp"
#include "spannerforge/oracles.hpp"
#include "spannerforge/pipeline.hpp"
#include "spannerforge/random.hpp"
#include "spannerforge/relaxations.hpp"

using namespace spannerforge;
using namespace spannerforge::cli;

namespace {

// Output goes to a file when a path is given, to stdout otherwise.
void emit(const std::string& path, const std::string& text, RunManifest& m) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    write_text_file(path, text);
    m.outputs.push_back(path);
}

ParamTuple parse_tuple(const std::string& s) {
    std::vector<int> v;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoi(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::logic_error&) {
            throw ParameterError("tuple entry '" + part + "' is not an integer");
        }
    }
    if (v.size() != 4) throw ParameterError("tuple needs four entries k0,k1,d0,d1, got '" + s + "'");
    return {v[0], v[1], v[2], v[3]};
}

std::vector<ParamTuple> parse_multiset(const std::string& s) {
    std::vector<ParamTuple> out;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, ';'))
        if (!part.empty()) out.push_back(parse_tuple(part));
    return out;
}

std::string edge_list_text(int n, const std::vector<Edge>& edges) {
    std::ostringstream s;
    write_edge_list(s, n, edges);
    return s.str();
}

struct Common {
    std::uint64_t seed = 1;
    std::string manifest;
};

struct GenArgs {
    int n = 64;
    double alpha = 0.5;
    int k = 8;
    double beta = 0.5;
    std::string mode = "random";
    std::string out, meta;
};

struct Ld2sArgs {
    std::string graph, out, report;
    int q = 2;
    std::string lambda_search = "all";
    int max_iterations = 64;
};

struct SmesArgs {
    std::string graph, tau, report;
    int q = 2;
};

struct OracleArgs {
    std::string problem, graph;
    long m = 1;
    std::size_t budget = 0;
};

struct FaithArgs {
    int side = 12, d = 4, copies = 3, trials = 10000, q = 2;
    double noise = 0.1;
    std::string rounder = "dispatcher", report, csv;
};

struct GapArgs {
    std::vector<int> deltas{4, 9, 16};
    std::size_t budget = 400000;
    std::string out;
};

struct ExportArgs {
    std::string builder = "kp", graph, tau, multiset, out;
    int q = 2, lambda = 1;
};

int run_gen(const GenArgs& a, const Common& c, RunManifest& m) {
    const GenMode mode = a.mode == "planted" ? GenMode::Planted : GenMode::Random;
    const GeneratedGraph g = gen_dense_vs_random(a.n, a.alpha, a.k, a.beta, mode, c.seed);
    std::ostringstream s;
    write_graph(s, g.graph);
    emit(a.out, s.str(), m);
    if (!a.meta.empty()) emit(a.meta, dump(to_json(g)), m);
    return 0;
}

int run_ld2s(const Ld2sArgs& a, const Common& c, RunManifest& m) {
    const Graph g = read_graph_file(a.graph);
    m.input_hash = file_hash(a.graph);
    PipelineConfig cfg;
    cfg.q = a.q;
    cfg.seed = c.seed;
    cfg.max_iterations = a.max_iterations;
    cfg.lambda_search = a.lambda_search == "powers-of-two" ? LambdaSearch::PowersOfTwo : LambdaSearch::All;
    const Ld2sReport r = approximate_ld2s(g, cfg);
    emit(a.out, edge_list_text(g.num_vertices(), r.spanner), m);
    if (!a.report.empty()) emit(a.report, dump(to_json(r)), m);
    std::cerr << "max degree " << r.cost << " (" << r.status << ")\n";
    return 0;
}

int run_smes(const SmesArgs& a, const Common& c, RunManifest& m) {
    const Graph g = read_graph_file(a.graph);
    m.input_hash = file_hash(a.graph);
    const ParamTuple tau = parse_tuple(a.tau);
    SmesLp lp = build_smes_lp(g, tau, a.q);
    // The system is homogeneous; pin y_empty = 1 so the point is a normalized one.
    if (lp.block.active()) lp.lp.add_row({{lp.block.y.empty_var(), 1.0}}, Relation::Equal, 1.0, "normalize");
    const LPSolution sol = solve(lp.lp);
    Json j;
    j["tau"] = to_json(tau);
    j["lp_status"] = to_string(sol.status);
    if (!sol.has_point() || !lp.block.active() || sol.values[lp.block.y.empty_var()] <= 1e-12)
        throw DomainError("the relaxation is infeasible for tau " + tau.str());
    const BlockValues values(lp.block.y, sol.values);
    const BipartiteGraph& host = lp.block.y.host();
    const BipartiteSmesRounder rounder(host, lp.block.y.tau(), a.q, values);
    const RoundingOutcome out = rounder.round(c.seed);
    const RoundedSubgraph folded = fold_cover(g, host, out.sub);
    j["route"] = route_name(out.route);
    j["factor"] = rounder.factor();
    j["swapped"] = rounder.swapped();
    j["phi"] = out.phi;
    j["runs"] = out.runs;
    if (!rounder.note().empty()) j["note"] = rounder.note();
    j["vertices"] = folded.vertices;
    std::vector<Edge> es;
    for (std::size_t e : folded.edges) es.push_back(g.edges()[e]);
    j["edges"] = to_json(es);
    emit(a.report, dump(j), m);
    return 0;
}

int run_oracle(const OracleArgs& a, const Common&, RunManifest& m) {
    const Graph g = read_graph_file(a.graph);
    m.input_hash = file_hash(a.graph);
    std::ostringstream s;
    if (a.problem == "ld2s") {
        if (a.budget > 0) {
            const Ld2sBounds b = ld2s_bounds(g, a.budget);
            if (b.exact) s << b.upper << "\n";
            else s << b.lower << ".." << b.upper << "\n";
        } else {
            s << brute_ld2s(g).degree << "\n";
        }
    } else {
        const SmesOptimum r = brute_smes(g, a.m);
        if (!r.feasible) s << "infeasible\n";
        else s << r.size << "\n";
    }
    std::cout << s.str();
    return 0;
}

int run_faithfulness(const FaithArgs& a, const Common& c, RunManifest& m) {
    const PlantedSmesInstance inst = gen_planted_smes(a.side, a.d, a.copies, a.noise, c.seed);
    const MixtureValues y(inst.host, inst.components, a.q);
    RoundOnce round;
    double f = 1.0;
    std::unique_ptr<BipartiteSmesRounder> disp;
    std::unique_ptr<SmallDegreeRounder> small;
    if (a.rounder == "small-degree") {
        small = std::make_unique<SmallDegreeRounder>(inst.host, inst.tau, y);
        f = inst.tau.d0 * RoundingConstants{}.polylog(inst.host.num_vertices());
        round = [&](std::uint64_t s) { return small->round(s); };
    } else {
        disp = std::make_unique<BipartiteSmesRounder>(inst.host, inst.tau, a.q, y);
        f = disp->factor();
        round = [&](std::uint64_t s) { return disp->round(s).sub; };
    }
    const FaithfulnessReport r = estimate_faithfulness(round, inst.host, y, f, a.trials, derive_seed(c.seed, 7));
    Json j = to_json(r, true);
    j["rounder"] = a.rounder;
    if (disp) j["route"] = route_name(disp->planned_route());
    j["correlation_demo"] = to_json(correlation_demo(a.trials, derive_seed(c.seed, 8)));
    emit(a.report, dump(j), m);
    if (!a.csv.empty()) {
        CsvTable t;
        t.header = {"kind", "id", "hits", "rate", "ci_low", "ci_high", "lp"};
        for (std::size_t i = 0; i < r.vertices.size(); ++i) {
            const ItemRate& v = r.vertex_rates[i];
            t.add_row({"vertex", std::to_string(r.vertices[i]), std::to_string(v.hits), format_real(v.rate),
                       format_real(v.lo), format_real(v.hi), format_real(v.lp)});
        }
        for (std::size_t e = 0; e < r.edge_rates.size(); ++e) {
            const ItemRate& v = r.edge_rates[e];
            t.add_row({"edge", std::to_string(e), std::to_string(v.hits), format_real(v.rate), format_real(v.lo),
                       format_real(v.hi), format_real(v.lp)});
        }
        t.write_file(a.csv);
        m.outputs.push_back(a.csv);
    }
    return r.all_pass() ? 0 : 1;
}

CsvTable gap_table(const GapArgs& a) {
    CsvTable t;
    t.header = {"delta", "lp_value", "brute_opt", "ratio"};
    for (int delta : a.deltas) {
        if (delta < 1) throw ParameterError("deltas must be positive");
        std::vector<Edge> es;
        for (int u = 0; u <= delta; ++u)
            for (int v = u + 1; v <= delta; ++v) es.push_back({u, v});
        const Graph k(delta + 1, es);
        const KpLp kp = build_kp_lp(k);
        const LPSolution s = solve(kp.lp);
        if (!s.has_point()) throw DomainError("KP relaxation reported " + std::string(to_string(s.status)));
        const double lp = s.values[kp.lambda_var];
        const Ld2sBounds b = ld2s_bounds(k, a.budget);
        if (!b.exact)
            std::cerr << "delta " << delta << ": optimum bracketed in [" << b.lower << ", " << b.upper
                      << "]; reporting the certified lower bound\n";
        t.add_row({std::to_string(delta), format_real(lp), std::to_string(b.lower), format_real(b.lower / lp)});
    }
    return t;
}

int run_gap(const GapArgs& a, const Common&, RunManifest& m) {
    std::ostringstream s;
    gap_table(a).write(s);
    emit(a.out, s.str(), m);
    return 0;
}

int run_export(const ExportArgs& a, const Common& c, RunManifest& m) {
    const Graph g = read_graph_file(a.graph);
    m.input_hash = file_hash(a.graph);
    std::string text;
    if (a.builder == "kp") {
        text = export_lp_text(build_kp_lp(g).lp);
    } else if (a.builder == "smes") {
        text = export_lp_text(build_smes_lp(g, parse_tuple(a.tau), a.q).lp);
    } else if (a.builder == "bipartite-smes") {
        text = export_lp_text(build_bipartite_smes_lp(double_cover(g), parse_tuple(a.tau), a.q).lp);
    } else {
        std::vector<ParamTuple> ms = a.multiset.empty()
                                         ? spanner_multiset(g, greedy_spanner(g), derive_seed(c.seed, 0x5eed))
                                         : parse_multiset(a.multiset);
        text = export_lp_text(build_ld2s_lp(g, g.edges(), a.lambda, a.q, ms).lp);
    }
    emit(a.out, text, m);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    const auto start = std::chrono::steady_clock::now();
    CLI::App app{"spannerforge: lowest-degree 2-spanners, smallest m-edge subgraphs and faithful rounding",
                 "spannerforge"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value configuration file; flags take precedence");
    Common common;
    app.add_option("--seed", common.seed, "Seed for every random stream")->capture_default_str();
    app.add_option("--manifest", common.manifest, "Manifest path (default: spannerforge.manifest.json)");

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate a dense-vs-random instance");
    g->add_option("--n", gen.n, "Vertex count")->capture_default_str();
    g->add_option("--alpha", gen.alpha, "Log-density of the random part, p = n^(alpha-1)")->capture_default_str();
    g->add_option("--k", gen.k, "Plant size (planted mode)")->capture_default_str();
    g->add_option("--beta", gen.beta, "Plant log-density (planted mode)")->capture_default_str();
    g->add_option("--mode", gen.mode, "random or planted")
        ->check(CLI::IsMember({"random", "planted"}))
        ->capture_default_str();
    g->add_option("--out", gen.out, "Graph file (default: stdout)");
    g->add_option("--meta", gen.meta, "JSON metadata file");

    Ld2sArgs ld;
    auto* l = app.add_subcommand("solve-ld2s", "Approximate a lowest-degree 2-spanner");
    l->add_option("--graph", ld.graph, "Input graph file")->required();
    l->add_option("--out", ld.out, "Spanner edge list (default: stdout)");
    l->add_option("--report", ld.report, "JSON run report");
    l->add_option("--q", ld.q, "Lift level of the relaxation")->capture_default_str();
    l->add_option("--lambda-search", ld.lambda_search, "all or powers-of-two")
        ->check(CLI::IsMember({"all", "powers-of-two"}))
        ->capture_default_str();
    l->add_option("--max-iterations", ld.max_iterations, "Iteration cap per lambda")->capture_default_str();

    SmesArgs sm;
    auto* s = app.add_subcommand("solve-smes", "Solve the SmES relaxation and round it once");
    s->add_option("--graph", sm.graph, "Input graph file")->required();
    s->add_option("--tau", sm.tau, "Parameter tuple k0,k1,d0,d1")->required();
    s->add_option("--q", sm.q, "Lift level")->capture_default_str();
    s->add_option("--report", sm.report, "JSON result (default: stdout)");

    OracleArgs orc;
    auto* o = app.add_subcommand("oracle", "Exact brute-force optimum");
    o->add_option("problem", orc.problem, "ld2s or smes")->required()->check(CLI::IsMember({"ld2s", "smes"}));
    o->add_option("--graph", orc.graph, "Input graph file")->required();
    o->add_option("--m", orc.m, "Edge target for smes")->capture_default_str();
    o->add_option("--budget", orc.budget, "ld2s: node budget for graphs past the exhaustive cap (prints lo..hi)");

    FaithArgs fa;
    auto* f = app.add_subcommand("faithfulness", "Monte-Carlo faithfulness check on a planted instance");
    f->add_option("--side", fa.side, "Vertices per side")->capture_default_str();
    f->add_option("--d", fa.d, "Plant is K_{d,d}")->capture_default_str();
    f->add_option("--copies", fa.copies, "Plants mixed with equal weight")->capture_default_str();
    f->add_option("--noise", fa.noise, "Noise edge probability")->capture_default_str();
    f->add_option("--trials", fa.trials, "Independent rounding runs")->capture_default_str();
    f->add_option("--q", fa.q, "Lift level")->capture_default_str();
    f->add_option("--rounder", fa.rounder, "dispatcher or small-degree")
        ->check(CLI::IsMember({"dispatcher", "small-degree"}))
        ->capture_default_str();
    f->add_option("--report", fa.report, "JSON report (default: stdout)");
    f->add_option("--csv", fa.csv, "Per-item rates as CSV");

    GapArgs gap;
    auto* gd = app.add_subcommand("gap-demo", "KP relaxation value against the optimum on K_{delta+1}");
    gd->add_option("--deltas", gap.deltas, "Comma-separated degrees")->delimiter(',')->capture_default_str();
    gd->add_option("--budget", gap.budget, "Search node budget per degree bound")->capture_default_str();
    gd->add_option("--out", gap.out, "CSV file (default: stdout)");

    ExportArgs ex;
    auto* e = app.add_subcommand("export-lp", "Write a relaxation as LP text");
    e->add_option("--builder", ex.builder, "kp, smes, bipartite-smes or ld2s")
        ->check(CLI::IsMember({"kp", "smes", "bipartite-smes", "ld2s"}))
        ->capture_default_str();
    e->add_option("--graph", ex.graph, "Input graph file")->required();
    e->add_option("--tau", ex.tau, "Tuple k0,k1,d0,d1 (smes builders)");
    e->add_option("--multiset", ex.multiset, "ld2s tuples, ';'-separated (default: from a greedy spanner)");
    e->add_option("--lambda", ex.lambda, "ld2s degree bound")->capture_default_str();
    e->add_option("--q", ex.q, "Lift level")->capture_default_str();
    e->add_option("--out", ex.out, "LP file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& err) {
        return app.exit(err);
    } catch (const CLI::CallForAllHelp& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    RunManifest man;
    man.command = sub->get_name();
    man.seed = common.seed;
    Json cfg = Json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->get_single_name() == "help") continue;
        if (opt->count() > 0 || !opt->get_default_str().empty())
            cfg[opt->get_single_name()] = opt->count() > 0 ? opt->as<std::string>() : opt->get_default_str();
    }
    man.config = cfg;

    int code = 0;
    try {
        if (sub == g) code = run_gen(gen, common, man);
        else if (sub == l) code = run_ld2s(ld, common, man);
        else if (sub == s) code = run_smes(sm, common, man);
        else if (sub == o) code = run_oracle(orc, common, man);
        else if (sub == f) code = run_faithfulness(fa, common, man);
        else if (sub == gd) code = run_gap(gap, common, man);
        else code = run_export(ex, common, man);
        if (code != 0) man.status = "check failed";
    } catch (const ParameterError& err) {
        std::cerr << "error: " << err.what() << "\n";
        man.status = err.what();
        code = 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        man.status = err.what();
        code = 1;
    }
    man.exit_code = code;
    man.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    try {
        write_text_file(common.manifest.empty() ? "spannerforge.manifest.json" : common.manifest,
                        dump(man.to_json()));
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return code;
}
