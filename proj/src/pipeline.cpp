#include "spannerforge/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "spannerforge/errors.hpp"
#include "spannerforge/random.hpp"

namespace spannerforge {
namespace {

std::vector<Edge> unspanned(const Graph& g, const std::vector<Edge>& h, const std::vector<Edge>& demands) {
    return is_two_spanner(g, h, demands).unspanned;
}

}  // namespace

IterationResult round_relaxation(const Graph& g, const std::vector<Edge>& h, const std::vector<Edge>& demands,
                                 const Ld2sLp& lp, const std::vector<double>& x, const PipelineConfig& cfg,
                                 std::uint64_t seed) {
    IterationResult out;
    out.feasible = true;
    IterationReport& rep = out.report;
    rep.lambda = lp.lambda;
    rep.demands_before = demands.size();
    const int n = g.num_vertices();

    std::set<Edge> have(h.begin(), h.end());
    std::set<Edge> ex_new, round_new;
    for (std::size_t i = 0; i < g.num_edges(); ++i)
        if (x[lp.x_var[i]] >= kEdgeThreshold - 1e-9) {
            ++rep.ex_size;
            if (!have.count(g.edges()[i])) ex_new.insert(g.edges()[i]);
        }

    for (std::size_t b = 0; b < lp.blocks.size(); ++b) {
        const Ld2sBlock& blk = lp.blocks[b];
        BlockOutcome bo;
        bo.u = blk.u;
        bo.tuple_index = blk.tuple_index;
        bo.tau = blk.tau;
        bo.z_empty = x[blk.smes.z_empty];
        Rng coin(derive_seed(seed, b, 0));
        bo.fired = bo.z_empty > 1e-12 && coin.uniform() < bo.z_empty;
        if (bo.fired) {
            try {
                const BlockValues values(blk.smes.y, x);
                const BipartiteGraph& host = blk.smes.y.host();
                const BipartiteSmesRounder rounder(host, blk.smes.y.tau(), lp.q, values, cfg.constants);
                const RoundingOutcome r = rounder.round(derive_seed(seed, b, 1));
                bo.route = route_name(r.route);
                bo.factor = rounder.factor();
                const RoundedSubgraph folded = fold_cover(blk.local.graph, host, r.sub);
                bo.vertices = static_cast<int>(folded.vertices.size());
                for (Vertex v : folded.vertices) {
                    const Edge e = make_edge(blk.u, blk.local.labels[v]);
                    if (have.count(e) || ex_new.count(e)) continue;
                    if (round_new.insert(e).second) ++bo.bought;
                }
            } catch (const DomainError& e) {
                bo.error = e.what();
            }
        }
        rep.blocks.push_back(std::move(bo));
    }

    rep.ex_new = ex_new.size();
    rep.rounding_new = round_new.size();
    std::vector<int> dex(n, 0), dround(n, 0);
    for (const Edge& e : ex_new) ++dex[e.u], ++dex[e.v];
    for (const Edge& e : round_new) ++dround[e.u], ++dround[e.v];
    rep.degree_added.assign(n, 0);
    for (int v = 0; v < n; ++v) {
        rep.degree_added[v] = dex[v] + dround[v];
        rep.max_degree_ex = std::max(rep.max_degree_ex, dex[v]);
        rep.max_degree_rounding = std::max(rep.max_degree_rounding, dround[v]);
        rep.max_degree_added = std::max(rep.max_degree_added, rep.degree_added[v]);
    }

    out.new_edges.assign(ex_new.begin(), ex_new.end());
    out.new_edges.insert(out.new_edges.end(), round_new.begin(), round_new.end());
    std::sort(out.new_edges.begin(), out.new_edges.end());
    std::vector<Edge> all(have.begin(), have.end());
    all.insert(all.end(), out.new_edges.begin(), out.new_edges.end());
    all = normalize_edges(std::move(all));
    out.remaining = unspanned(g, all, demands);
    std::set_difference(demands.begin(), demands.end(), out.remaining.begin(), out.remaining.end(),
                        std::back_inserter(out.satisfied));
    rep.demands_after = out.remaining.size();
    return out;
}

IterationResult run_iteration(const Graph& g, const std::vector<Edge>& h, const std::vector<Edge>& demands, int lambda,
                              const std::vector<ParamTuple>& multiset, const PipelineConfig& cfg, std::uint64_t seed) {
    const Ld2sLp lp = build_ld2s_lp(g, demands, lambda, cfg.q, multiset);
    const LPSolution sol = solve(lp.lp, cfg.solver);
    if (!sol.has_point()) {
        IterationResult out;
        out.remaining = normalize_edges(demands);
        out.report.lambda = lambda;
        out.report.demands_before = out.report.demands_after = out.remaining.size();
        out.report.lp_iterations = sol.iterations;
        return out;
    }
    IterationResult out = round_relaxation(g, h, normalize_edges(demands), lp, sol.values, cfg, seed);
    out.report.lp_iterations = sol.iterations;
    return out;
}

std::vector<Edge> greedy_spanner(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<int> deg(n, 0);
    std::set<Edge> h;
    auto in_h = [&](Vertex a, Vertex b) { return h.count(make_edge(a, b)) > 0; };
    for (const Edge& e : g.edges()) {
        if (in_h(e.u, e.v)) continue;
        bool spanned = false;
        for (Vertex w : g.neighbors(e.u))
            if (w != e.v && g.has_edge(w, e.v) && in_h(e.u, w) && in_h(w, e.v)) {
                spanned = true;
                break;
            }
        if (spanned) continue;
        // Cost of an option: the largest resulting degree among touched vertices, then edges added.
        int best_w = -1;
        std::pair<int, int> best{std::max(deg[e.u], deg[e.v]) + 1, 1};
        for (Vertex w : g.neighbors(e.u)) {
            if (w == e.v || !g.has_edge(w, e.v)) continue;
            const int au = in_h(e.u, w) ? 0 : 1, av = in_h(w, e.v) ? 0 : 1;
            const std::pair<int, int> c{std::max({deg[e.u] + au, deg[e.v] + av, deg[w] + au + av}), au + av};
            if (c < best) {
                best = c;
                best_w = w;
            }
        }
        auto add = [&](Vertex a, Vertex b) {
            if (h.insert(make_edge(a, b)).second) ++deg[a], ++deg[b];
        };
        if (best_w < 0) {
            add(e.u, e.v);
        } else {
            add(e.u, best_w);
            add(best_w, e.v);
        }
    }
    return {h.begin(), h.end()};
}

std::vector<ParamTuple> spanner_multiset(const Graph& g, const std::vector<Edge>& h, std::uint64_t seed) {
    const int lambda = std::max(1, spanner_cost(h));
    std::vector<CenterPieces> pieces;
    try {
        for (const auto& [w, local] : spanner_center_graphs(g, g.edges(), h))
            pieces.push_back({w, decompose(local.graph, lambda, derive_seed(seed, static_cast<std::uint64_t>(w)))});
    } catch (const ContractError&) {
        return {};
    }
    return multiset_from_pieces(pieces);
}

namespace {

struct RunResult {
    LambdaRun run;
    std::vector<Edge> spanner;
    std::vector<IterationReport> iterations;
};

RunResult run_lambda(const Graph& g, int lambda, const std::vector<ParamTuple>& multiset, const PipelineConfig& cfg,
                     const Ld2sLp* first_lp, const std::vector<double>* first_x) {
    RunResult out;
    out.run.lambda = lambda;
    const std::uint64_t lseed = derive_seed(cfg.seed, static_cast<std::uint64_t>(lambda));
    std::vector<Edge> h;
    std::vector<Edge> demands = g.edges();
    for (int it = 1; it <= cfg.max_iterations && !demands.empty(); ++it) {
        const std::uint64_t iseed = derive_seed(lseed, static_cast<std::uint64_t>(it));
        IterationResult r;
        if (it == 1 && first_lp) {
            r = round_relaxation(g, h, demands, *first_lp, *first_x, cfg, iseed);
            r.report.lp_reused = true;
        } else {
            r = run_iteration(g, h, demands, lambda, multiset, cfg, iseed);
        }
        r.report.iteration = it;
        out.run.iterations = it;
        if (!r.feasible) {
            out.run.status = "infeasible";
            out.iterations.push_back(std::move(r.report));
            break;
        }
        h.insert(h.end(), r.new_edges.begin(), r.new_edges.end());
        h = normalize_edges(std::move(h));
        demands = std::move(r.remaining);
        out.iterations.push_back(std::move(r.report));
    }
    if (out.run.status.empty()) out.run.status = demands.empty() ? "complete" : "incomplete";
    // Unfinished demands are bought directly so the output is always a spanner.
    out.run.patched = demands.size();
    h.insert(h.end(), demands.begin(), demands.end());
    out.spanner = normalize_edges(std::move(h));
    out.run.cost = spanner_cost(out.spanner);
    return out;
}

}  // namespace

Ld2sReport approximate_ld2s(const Graph& g, const PipelineConfig& cfg) {
    if (cfg.max_iterations < 1) throw ParameterError("maxIterations must be at least 1");
    if (cfg.q < 2) throw ParameterError("q must be at least 2");
    Ld2sReport rep;
    if (g.num_edges() == 0) {
        rep.status = "complete";
        return rep;
    }
    const int delta = g.max_degree();
    const std::vector<Edge> heuristic = greedy_spanner(g);
    rep.heuristic_cost = spanner_cost(heuristic);
    rep.multiset = spanner_multiset(g, heuristic, derive_seed(cfg.seed, 0x5eed));

    // Feasibility is monotone in lambda, so the first feasible value found scanning up is the lowest.
    // Its point also satisfies the relaxation at every larger lambda.
    Ld2sLp lp0;
    LPSolution s0;
    for (int l = 1; l <= delta; ++l) {
        lp0 = build_ld2s_lp(g, g.edges(), l, cfg.q, rep.multiset);
        s0 = solve(lp0.lp, cfg.solver);
        rep.lp_iterations += s0.iterations;
        if (s0.has_point()) {
            rep.lambda_low = l;
            break;
        }
    }
    if (rep.lambda_low == 0) throw ContractError("LD2S relaxation infeasible at every lambda");

    std::vector<int> candidates;
    if (cfg.lambda_search == LambdaSearch::All) {
        for (int l = rep.lambda_low; l <= delta; ++l) candidates.push_back(l);
    } else {
        int l = 1;
        while (l < rep.lambda_low) l *= 2;
        for (; l < delta; l *= 2) candidates.push_back(l);
        candidates.push_back(delta);
    }

    std::optional<RunResult> best;
    for (int l : candidates) {
        // A guess above a degree already achieved cannot be the optimum's value.
        if (best && l >= best->run.cost) {
            rep.runs.push_back({l, "skipped", 0, -1, 0});
            continue;
        }
        lp0.lambda = l;
        RunResult r = run_lambda(g, l, rep.multiset, cfg, &lp0, &s0.values);
        rep.runs.push_back(r.run);
        if (r.run.status == "infeasible" && r.run.iterations <= 1) continue;
        if (!best || r.run.cost < best->run.cost) best = std::move(r);
    }

    if (!best) {
        rep.status = "fallback";
        rep.spanner = g.edges();
        rep.best_lambda = delta;
    } else {
        rep.status = best->run.status == "complete" ? "complete" : "incomplete";
        rep.spanner = std::move(best->spanner);
        rep.iterations = std::move(best->iterations);
        rep.best_lambda = best->run.lambda;
    }
    if (!is_two_spanner(g, rep.spanner, g.edges()).ok) throw ContractError("pipeline produced an invalid spanner");
    rep.cost = spanner_cost(rep.spanner);
    return rep;
}

}  // namespace spannerforge
