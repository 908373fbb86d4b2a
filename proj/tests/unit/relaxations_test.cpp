#include <gtest/gtest.h>

#include <random>

#include "spannerforge/errors.hpp"
#include "spannerforge/relaxations.hpp"
#include "support/graphs.hpp"
#include "support/vertex_enum.hpp"

using namespace spannerforge;
using namespace spannerforge::testing;

namespace {

SolverOptions embedded() {
    SolverOptions o;
    o.allow_external = false;
    return o;
}

BipartiteGraph bipartite_complete(int a, int b) {
    std::vector<Vertex> s0, s1;
    std::vector<Edge> e;
    for (int i = 0; i < a; ++i) s0.push_back(i);
    for (int j = 0; j < b; ++j) s1.push_back(a + j);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.push_back({i, a + j});
    return BipartiteGraph(a + b, s0, s1, e);
}

std::size_t closed_form(int items, int q) {
    std::size_t s = 0;
    for (int i = 0; i <= q; ++i) s += SubsetIndex::binomial(items, i);
    return s;
}

// Fixes y_empty = 1 so the all-zero point is excluded.
void force_nonempty(LinearProgram& lp, const SetVariableBlock& b) { lp.set_bounds(b.empty_var(), 1.0, 1.0); }

}  // namespace

TEST(SubsetIndex, RankUnrankRoundTrip) {
    const SubsetIndex idx(9, 4);
    EXPECT_EQ(idx.size(), closed_form(9, 4));
    for (std::size_t id = 0; id < idx.size(); ++id) {
        const auto t = idx.unrank(id);
        EXPECT_EQ(idx.rank(t), id);
    }
    EXPECT_EQ(idx.rank(std::vector<int>{}), 0u);
    EXPECT_THROW(idx.rank(std::vector<int>{0, 1, 2, 3, 4}), ContractError);
    EXPECT_THROW(idx.rank(std::vector<int>{2, 1}), ContractError);
}

TEST(BipartiteSmesLp, VariableCountAtQ2) {
    const auto host = bipartite_complete(2, 2);
    const auto lp = build_bipartite_smes_lp(host, {2, 2, 2, 2}, 2);
    const int items = 4 + 4;
    EXPECT_EQ(lp.lp.num_variables(), 1 + items + items * (items - 1) / 2);
}

TEST(BipartiteSmesLp, SizesMatchClosedForm) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int a = 1 + static_cast<int>(rng() % 3), b = 1 + static_cast<int>(rng() % 3);
        std::vector<Vertex> s0, s1;
        for (int i = 0; i < a; ++i) s0.push_back(i);
        for (int j = 0; j < b; ++j) s1.push_back(a + j);
        std::vector<Edge> e;
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j)
                if (rng() % 2) e.push_back({i, a + j});
        const BipartiteGraph host(a + b, s0, s1, e);
        for (int q = 2; q <= 3; ++q) {
            const auto lp = build_bipartite_smes_lp(host, {1, 1, 1, 1}, q);
            EXPECT_EQ(static_cast<std::size_t>(lp.lp.num_variables()),
                      closed_form(a + b + static_cast<int>(e.size()), q));
        }
    }
}

TEST(BipartiteSmesLp, RejectsSmallArity) {
    EXPECT_THROW(build_bipartite_smes_lp(bipartite_complete(2, 2), {1, 1, 1, 1}, 1), ParameterError);
}

TEST(BipartiteSmesLp, FullLiftOfK22IsFeasible) {
    const auto host = bipartite_complete(2, 2);
    for (int q : {2, 3}) {
        const auto lp = build_bipartite_smes_lp(host, {2, 2, 2, 2}, q);
        const auto x = integral_lift(lp, host.vertices(), host.edges());
        for (double v : x) EXPECT_EQ(v, 1.0);
        EXPECT_LE(max_violation(lp.lp, x), 1e-12);
    }
}

TEST(BipartiteSmesLp, DegreeFloorDecidesFeasibility) {
    // On K_{2,2} every degree is 2, so (2,2,d,d) is feasible exactly while slack * d <= 2.
    const auto host = bipartite_complete(2, 2);
    const double slack = nearly_regular_slack(4);
    for (int d = 2; d <= 20; ++d) {
        auto lp = build_bipartite_smes_lp(host, {2, 2, d, d}, 2);
        const bool expect = slack * d <= 2.0;
        const auto x = integral_lift(lp, host.vertices(), host.edges());
        EXPECT_EQ(max_violation(lp.lp, x) <= kLpTolerance, expect) << d;
        force_nonempty(lp.lp, lp.block);
        EXPECT_EQ(solve(lp.lp, embedded()).has_point(), expect) << d;
    }
}

TEST(BipartiteSmesLp, EmptyLiftOnlyWorksWithZeroWeight) {
    const auto host = bipartite_complete(2, 2);
    const auto lp = build_bipartite_smes_lp(host, {2, 2, 2, 2}, 2);
    auto x = integral_lift(lp, {}, {});
    EXPECT_EQ(x[lp.block.empty_var()], 1.0);
    EXPECT_GT(max_violation(lp.lp, x), 0.5);
    x[lp.block.empty_var()] = 0.0;
    EXPECT_LE(max_violation(lp.lp, x), 1e-12);
}

TEST(BipartiteSmesLp, MissingEdgeBreaksDegreeBound) {
    const BipartiteGraph host(4, {0, 1}, {2, 3}, {{0, 2}, {1, 3}});
    const auto lp = build_bipartite_smes_lp(host, {2, 2, 1, 1}, 2);
    auto edges = host.edges();
    EXPECT_LE(max_violation(lp.lp, integral_lift(lp, host.vertices(), edges)), 1e-12);
    edges.pop_back();
    EXPECT_GT(max_violation(lp.lp, integral_lift(lp, host.vertices(), edges)), 0.05);
}

// Lift feasible exactly when the subgraph passes the checker.
TEST(BipartiteSmesLp, LiftAgreesWithCheckerOnAllSubgraphs) {
    const auto host = bipartite_complete(2, 3);
    const std::vector<ParamTuple> taus = {{1, 1, 1, 1}, {2, 3, 3, 2}, {2, 2, 2, 2}, {1, 2, 2, 1}, {2, 1, 1, 2},
                                          {2, 3, 2, 1}, {1, 3, 3, 1}, {2, 2, 1, 1}};
    const int nv = host.num_vertices();
    const int ne = static_cast<int>(host.num_edges());
    int feasible = 0, checked = 0;
    for (const auto& tau : taus) {
        const auto lp = build_bipartite_smes_lp(host, tau, 2);
        for (int vm = 0; vm < (1 << nv); ++vm)
            for (int em = 0; em < (1 << ne); ++em) {
                std::vector<Vertex> vs, s[2];
                for (int i = 0; i < nv; ++i)
                    if (vm >> i & 1) {
                        vs.push_back(i);
                        s[host.side_of(i)].push_back(i);
                    }
                std::vector<Edge> es;
                bool ok = true;
                for (int j = 0; j < ne; ++j)
                    if (em >> j & 1) {
                        const Edge& e = host.edges()[j];
                        if (!(vm >> e.u & 1) || !(vm >> e.v & 1)) ok = false;
                        es.push_back(e);
                    }
                if (!ok) continue;
                const BipartiteGraph piece(host.universe(), s[0], s[1], es);
                const bool lift_ok = max_violation(lp.lp, integral_lift(lp, vs, es)) <= kLpTolerance;
                EXPECT_EQ(lift_ok, is_nearly_regular(piece, tau, nv)) << tau.str() << " " << vm << " " << em;
                feasible += lift_ok;
                ++checked;
            }
    }
    EXPECT_GT(feasible, 10);
    EXPECT_GT(checked, 1000);
}

TEST(BipartiteSmesLp, SolvedPointIsMonotone) {
    const auto host = bipartite_complete(2, 3);
    auto lp = build_bipartite_smes_lp(host, {2, 2, 2, 2}, 3);
    lp.lp.set_objective(Sense::Maximize, {{lp.block.empty_var(), 1.0}});
    const auto sol = solve(lp.lp, embedded());
    ASSERT_EQ(sol.status, LPStatus::Optimal);
    EXPECT_NEAR(sol.objective, 1.0, 1e-7);
    const auto& idx = lp.block.index();
    for (std::size_t id = 1; id < idx.size(); ++id) {
        const auto t = idx.unrank(id);
        for (std::size_t i = 0; i < t.size(); ++i) {
            auto sub = t;
            sub.erase(sub.begin() + static_cast<long>(i));
            EXPECT_LE(sol.values[lp.block.first_var() + id], sol.values[lp.block.var_of_items(sub)] + 1e-7);
        }
    }
}

TEST(BipartiteSmesLp, PruningKeepsFeasibility) {
    // K_{2,2} plus a pendant vertex below the side-1 degree floor.
    const BipartiteGraph host(5, {0, 1}, {2, 3, 4}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {1, 4}});
    SetBlockOptions opts;
    opts.prune = true;
    auto pruned = build_bipartite_smes_lp(host, {2, 2, 2, 10}, 2, opts);
    auto full = build_bipartite_smes_lp(host, {2, 2, 2, 10}, 2);
    ASSERT_TRUE(pruned.block.active());
    EXPECT_LT(pruned.lp.num_variables(), full.lp.num_variables());
    EXPECT_EQ(pruned.block.items().vertex_item(4), -1);
    for (auto* p : {&pruned, &full}) {
        force_nonempty(p->lp, p->block);
        EXPECT_TRUE(solve(p->lp, embedded()).has_point());
    }
    auto dead = build_bipartite_smes_lp(host, {3, 3, 2, 2}, 2, opts);
    EXPECT_FALSE(dead.block.active());
    EXPECT_EQ(dead.lp.num_variables(), 0);
}

TEST(SmesLp, SingleEdgeLift) {
    const Graph g = path(2);
    auto lp = build_smes_lp(g, {1, 1, 1, 1}, 2);
    std::vector<double> x(lp.lp.num_variables(), 0.0);
    const BipartiteGraph piece(2, {0}, {1}, {{0, 1}});
    lift_smes_into(lp.block, g, piece, x);
    EXPECT_EQ(x[lp.block.z_empty], 1.0);
    EXPECT_EQ(x[lp.block.z_vertex[0]], 1.0);
    EXPECT_EQ(x[lp.block.z_vertex[1]], 1.0);
    EXPECT_EQ(x[lp.block.z_edge[0]], 1.0);
    EXPECT_LE(max_violation(lp.lp, x), 1e-12);
}

TEST(SmesLp, TriangleTwoPathLift) {
    const Graph g = cycle(3);
    const auto lp = build_smes_lp(g, {2, 1, 1, 2}, 2);
    std::vector<double> x(lp.lp.num_variables(), 0.0);
    // Path 0-1-2 with the middle vertex on side 1.
    const BipartiteGraph piece(3, {0, 2}, {1}, {{0, 1}, {2, 1}});
    lift_smes_into(lp.block, g, piece, x);
    EXPECT_LE(max_violation(lp.lp, x), 1e-12);
}

TEST(SmesLp, EdgeValuesBelowEndpoints) {
    const Graph g = complete(4);
    auto lp = build_smes_lp(g, {2, 2, 1, 1}, 2);
    std::vector<Term> obj;
    for (int z : lp.block.z_edge) obj.push_back({z, 1.0});
    lp.lp.set_objective(Sense::Maximize, obj);
    const auto sol = solve(lp.lp, embedded());
    ASSERT_EQ(sol.status, LPStatus::Optimal);
    EXPECT_GT(sol.objective, 0.5);
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
        const Edge& e = g.edges()[i];
        const double ze = sol.values[lp.block.z_edge[i]];
        EXPECT_LE(ze, std::min(sol.values[lp.block.z_vertex[e.u]], sol.values[lp.block.z_vertex[e.v]]) + 1e-7);
        EXPECT_LE(sol.values[lp.block.z_vertex[e.u]], sol.values[lp.block.z_empty] + 1e-7);
    }
}

TEST(KpLp, CliqueUniformPointHasUnitDegree) {
    const int delta = 4;
    const Graph g = complete(delta + 1);
    const auto kp = build_kp_lp(g);
    std::vector<double> x(kp.lp.num_variables(), 1.0 / delta);
    x[kp.lambda_var] = 1.0;
    EXPECT_LE(max_violation(kp.lp, x), 1e-12);
    const auto sol = solve(kp.lp, embedded());
    ASSERT_EQ(sol.status, LPStatus::Optimal);
    EXPECT_LE(sol.objective, 1.0 + kLpTolerance);
}

TEST(KpLp, SingleEdgeNeedsTheEdge) {
    const auto kp = build_kp_lp(path(2));
    const auto sol = solve(kp.lp, embedded());
    ASSERT_EQ(sol.status, LPStatus::Optimal);
    EXPECT_NEAR(sol.objective, 1.0, 1e-9);
    EXPECT_NEAR(sol.values[kp.x_var[0]], 1.0, 1e-9);
}

TEST(KpLp, TriangleMatchesVertexEnumeration) {
    const auto kp = build_kp_lp(cycle(3));
    EXPECT_EQ(kp.lp.num_variables(), 7);
    const auto sol = solve(kp.lp, embedded());
    ASSERT_EQ(sol.status, LPStatus::Optimal);
    const auto best = VertexEnumeration(kp.lp).solve();
    ASSERT_TRUE(best.has_value());
    EXPECT_NEAR(sol.objective, *best, 1e-7);
}

TEST(Ld2sLp, SingleEdge) {
    const Graph g = path(2);
    const std::vector<ParamTuple> L = {{1, 1, 1, 1}};
    const auto one = build_ld2s_lp(g, g.edges(), 1, 2, L);
    const auto s1 = solve(one.lp, embedded());
    ASSERT_TRUE(s1.has_point());
    EXPECT_NEAR(s1.values[one.x_var[0]], 1.0, 1e-9);
    const auto zero = build_ld2s_lp(g, g.edges(), 0, 2, L);
    EXPECT_EQ(solve(zero.lp, embedded()).status, LPStatus::Infeasible);
}

TEST(Ld2sLp, EmptyDemandsGiveBoundsOnly) {
    const auto lp = build_ld2s_lp(complete(4), {}, 1, 2, {{1, 1, 1, 1}});
    EXPECT_EQ(lp.lp.num_rows(), 0);
    EXPECT_EQ(lp.lp.num_variables(), 6);
    EXPECT_TRUE(solve(lp.lp, embedded()).has_point());
}

TEST(Ld2sLp, RejectsForeignDemands) {
    EXPECT_THROW(build_ld2s_lp(path(3), {{0, 2}}, 1, 2, {}), InputError);
}

TEST(Ld2sLp, StarSpannerOfCliqueLifts) {
    const Graph g = complete(5);
    std::vector<Edge> h;
    for (int v = 1; v < 5; ++v) h.push_back({0, v});
    const auto centers = spanner_center_graphs(g, g.edges(), h);
    ASSERT_EQ(centers.size(), 1u);
    EXPECT_EQ(centers[0].first, 0);
    std::vector<CenterPieces> pieces;
    for (const auto& [w, local] : centers) pieces.push_back({w, decompose(local.graph, 4, 11)});
    const auto L = multiset_from_pieces(pieces);
    for (bool prune : {false, true}) {
        Ld2sOptions opts;
        opts.prune_blocks = prune;
        const auto lp = build_ld2s_lp(g, g.edges(), 4, 2, L, opts);
        const auto x = lift_ld2s_solution(lp, g, h, pieces);
        EXPECT_LE(max_violation(lp.lp, x), kLpTolerance);
        EXPECT_TRUE(solve(lp.lp, embedded()).has_point());
    }
}

TEST(Ld2sLp, SpannerWithoutCenterIsRejected) {
    const Graph g = complete(4);
    EXPECT_THROW(spanner_center_graphs(g, g.edges(), {{0, 1}}), InputError);
}

TEST(BlockValues, ScalesByEmptySet) {
    const auto host = bipartite_complete(2, 2);
    const auto lp = build_bipartite_smes_lp(host, {2, 2, 2, 2}, 2);
    auto x = integral_lift(lp, host.vertices(), host.edges());
    for (double& v : x) v *= 0.5;
    const BlockValues y(lp.block, x);
    EXPECT_DOUBLE_EQ(y.scale(), 2.0);
    EXPECT_DOUBLE_EQ(y.vertex(0), 1.0);
    const Vertex vs[] = {0};
    const std::size_t es[] = {0};
    EXPECT_DOUBLE_EQ(y.value(vs, es), 1.0);
    EXPECT_THROW(y.value(std::vector<Vertex>{0, 1, 2}, {}), ContractError);
}

TEST(MixtureValues, AveragesComponents) {
    const auto host = bipartite_complete(2, 2);
    const MixtureValues y(host, {{1.0, {0, 2}, {0}}, {3.0, {1, 3}, {3}}}, 2);
    EXPECT_DOUBLE_EQ(y.vertex(0), 0.25);
    EXPECT_DOUBLE_EQ(y.vertex(1), 0.75);
    const Vertex both[] = {0, 1};
    EXPECT_DOUBLE_EQ(y.value(both, {}), 0.0);
    EXPECT_DOUBLE_EQ(y.edge(3), 0.75);
}
