#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spannerforge/errors.hpp"
#include "spannerforge/random.hpp"
#include "spannerforge/rounding.hpp"
#include "support/graphs.hpp"
#include "support/planted.hpp"

using namespace spannerforge;
using namespace spannerforge::testing;

namespace {

class ZeroValues : public LiftedValues {
public:
    double value(std::span<const Vertex> v, std::span<const std::size_t> e) const override {
        return v.empty() && e.empty() ? 1.0 : 0.0;
    }
    int arity() const override { return 4; }
};

int count_side(const BipartiteGraph& g, const std::vector<Vertex>& vs, int b) {
    return static_cast<int>(std::count_if(vs.begin(), vs.end(), [&](Vertex v) { return g.side_of(v) == b; }));
}

bool endpoints_listed(const BipartiteGraph& g, const RoundedSubgraph& r) {
    for (std::size_t e : r.edges) {
        const Edge& ed = g.edges()[e];
        if (!std::binary_search(r.vertices.begin(), r.vertices.end(), ed.u)) return false;
        if (!std::binary_search(r.vertices.begin(), r.vertices.end(), ed.v)) return false;
    }
    return true;
}

RoundedSubgraph whole(const BipartiteGraph& g) {
    RoundedSubgraph r{g.vertices(), {}};
    r.edges.resize(g.num_edges());
    std::iota(r.edges.begin(), r.edges.end(), std::size_t{0});
    return r;
}

}  // namespace

TEST(DeriveParams, ZeroGammaCollapsesToOne) {
    const DerivedParams p = derive_params(40, {6, 4, 4, 6}, 3);
    EXPECT_DOUBLE_EQ(p.gamma, 0.0);
    EXPECT_DOUBLE_EQ(p.alpha, 1.0);
    EXPECT_EQ(p.r, 1);
    EXPECT_EQ(p.s, 1);
    EXPECT_DOUBLE_EQ(p.f, 1.0);
    EXPECT_FALSE(p.small_degree_mode);
}

TEST(DeriveParams, HalfGammaWithQFour) {
    // gamma = ln 4 / ln 16 = 1/2.
    const DerivedParams p = derive_params(16, {4, 4, 1, 1}, 4);
    EXPECT_NEAR(p.gamma, 0.5, 1e-12);
    EXPECT_DOUBLE_EQ(p.alpha, 0.25);
    EXPECT_EQ(p.r, 1);
    EXPECT_EQ(p.s, 4);
    EXPECT_LE(std::abs(p.f - std::pow(4.0 * p.f / 1.0, p.alpha)), 1e-9 * p.f);
    EXPECT_NEAR(p.D, 16.0 * 1 / (4 * p.f * p.f), 1e-12);
    EXPECT_TRUE(p.small_degree_mode);  // f = 4^(1/3) > d0 = 1
}

TEST(DeriveParams, FullGammaIsDegenerate) {
    EXPECT_THROW(derive_params(8, {8, 8, 1, 1}, 4), DegenerateParameters);
}

TEST(DeriveParams, AlphaOneWithPositiveGammaHasNoFixedPoint) {
    const DerivedParams p = derive_params(1000, {10, 10, 9, 9}, 3);
    EXPECT_DOUBLE_EQ(p.alpha, 1.0);
    EXPECT_TRUE(std::isinf(p.f));
    EXPECT_TRUE(p.small_degree_mode);
}

TEST(DeriveParams, RejectsBadInputs) {
    EXPECT_THROW(derive_params(10, {2, 3, 1, 1}, 3), ParameterError);
    EXPECT_THROW(derive_params(10, {3, 2, 3, 1}, 3), ParameterError);
    EXPECT_THROW(derive_params(10, {3, 2, 1, 1}, 1), ParameterError);
    EXPECT_THROW(derive_params(2, {3, 2, 1, 1}, 2), ParameterError);
}

TEST(Caterpillar, PathWhenRIsOne) {
    const CaterpillarTemplate k = build_caterpillar(1, 3);
    EXPECT_EQ(k.steps, (std::vector<StepKind>{StepKind::Backbone, StepKind::Backbone, StepKind::Backbone}));
    EXPECT_EQ(k.parent, (std::vector<int>{-1, 0, 1, 2}));
    EXPECT_EQ(k.side, (std::vector<int>{0, 1, 0, 1}));
}

TEST(Caterpillar, TwoThirds) {
    const CaterpillarTemplate k = build_caterpillar(2, 3);
    EXPECT_EQ(k.steps, (std::vector<StepKind>{StepKind::Backbone, StepKind::Hair, StepKind::Backbone}));
    // The hair hangs off vertex 1, and the backbone then continues from vertex 1.
    EXPECT_EQ(k.parent, (std::vector<int>{-1, 0, 1, 1}));
    EXPECT_EQ(k.rightmost, (std::vector<int>{0, 1, 1, 3}));
    EXPECT_EQ(k.edges_from_side(3, 0), 1);
    EXPECT_EQ(k.edges_from_side(3, 1), 2);
}

TEST(Caterpillar, HairCountForAllSmallTemplates) {
    for (int s = 1; s <= 7; ++s)
        for (int r = 1; r <= s; ++r) {
            if (std::gcd(r, s) != 1) {
                EXPECT_THROW(build_caterpillar(r, s), ParameterError);
                continue;
            }
            const CaterpillarTemplate k = build_caterpillar(r, s);
            EXPECT_EQ(static_cast<int>(k.steps.size()), s);
            EXPECT_EQ(k.hairs(), r - 1) << r << "/" << s;
            EXPECT_EQ(k.steps[0], StepKind::Backbone);
        }
    EXPECT_THROW(build_caterpillar(2, 4), ParameterError);
    EXPECT_THROW(build_caterpillar(3, 2), ParameterError);
}

TEST(SimplifiedConditions, Examples) {
    const ParamTuple tau{8, 4, 2, 4};
    const double f = 2.0;
    const double m = 8 * 2;
    EXPECT_TRUE(check_simplified_conditions(tau.k0 * f, tau.k1 * f, m * f, tau, f));
    EXPECT_FALSE(check_simplified_conditions(3, 3, 0, tau, f));
    // m'/k0' = d0/f exactly, the other two with room.
    EXPECT_TRUE(check_simplified_conditions(16, 2, 16, tau, f));
    EXPECT_FALSE(check_simplified_conditions(16, 2, 15.9, tau, f));
}

TEST(SkewedToFaithful, FirstCaseIdentity) {
    const PlantedBipartite p = planted_kdd(2, 2, 1, 0.0, 1);
    const RoundedSubgraph h = whole(p.host);
    const SkewedResult r = skewed_to_faithful(p.host, h, 2, 2, 4, {2, 2, 2, 2}, 1.0, 7);
    EXPECT_EQ(r.case_id, 1);
    EXPECT_EQ(r.sub.vertices, h.vertices);
    EXPECT_EQ(r.sub.edges, h.edges);
}

TEST(SkewedToFaithful, SecondCaseThinsTheOtherSide) {
    // Two side-0 vertices joined to six side-1 vertices.
    std::vector<Edge> e;
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 8; ++j) e.push_back({i, j});
    const BipartiteGraph g(8, {0, 1}, {2, 3, 4, 5, 6, 7}, e);
    const RoundedSubgraph h = whole(g);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SkewedResult r = skewed_to_faithful(g, h, 2, 6, 12, {4, 4, 2, 2}, 2.0, seed);
        EXPECT_EQ(r.case_id, 2);
        EXPECT_DOUBLE_EQ(r.phi, 0.25);
        EXPECT_EQ(count_side(g, r.sub.vertices, 0), 2);
        // floor((2 * 4 / (4 * 6)) * 6) = 2
        EXPECT_EQ(count_side(g, r.sub.vertices, 1), 2);
        EXPECT_EQ(r.sub.edges.size(), 4u);
        EXPECT_TRUE(endpoints_listed(g, r.sub));
    }
}

TEST(SkewedToFaithful, NeverExceedsSideCaps) {
    const PlantedBipartite p = planted_kdd(12, 12, 1, 0.0, 2);
    const RoundedSubgraph h = whole(p.host);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const SkewedResult a = skewed_to_faithful(p.host, h, 12, 12, 144, {3, 2, 2, 3}, 1.5, seed);
        const SkewedResult b = skewed_to_faithful(p.host, h, 3, 12, 144, {3, 2, 2, 3}, 1.5, seed);
        for (const SkewedResult* r : {&a, &b}) {
            EXPECT_LE(count_side(p.host, r->sub.vertices, 0), 4);
            EXPECT_LE(count_side(p.host, r->sub.vertices, 1), 3);
        }
    }
}

TEST(HighDegree, IntegralRegularKeepsAllInducedEdges) {
    const PlantedBipartite p = planted_kdd(3, 3, 1, 0.0, 3);
    const MixtureValues y = integral_values(p, 2);
    const LayerGraph layer{0, p.host.side(0), p.host.side(1), whole(p.host).edges};
    const HighDegreeResult r = high_degree_rounding(p.host, layer, {3, 3, 3, 3}, 1.0, y, 3.0, 5);
    EXPECT_EQ(r.sub.vertices, p.host.vertices());
    EXPECT_EQ(r.sub.edges.size(), 9u);
    EXPECT_EQ(r.clamped, 0u);
    EXPECT_THROW(high_degree_rounding(p.host, layer, {3, 3, 3, 3}, 1.0, y, 3.5, 5), ContractError);
}

TEST(HighDegree, SamplesCappedSides) {
    const PlantedBipartite p = planted_kdd(6, 6, 1, 0.0, 4);
    const MixtureValues y = integral_values(p, 2);
    const LayerGraph layer{1, p.host.side(1), p.host.side(0), whole(p.host).edges};
    const HighDegreeResult r = high_degree_rounding(p.host, layer, {2, 3, 2, 2}, 1.5, y, 1.0, 9);
    // S on side 1 gets ceil(k1 f) = 5, W on side 0 gets ceil(k0 f) = 3.
    EXPECT_EQ(count_side(p.host, r.sub.vertices, 1), 5);
    EXPECT_EQ(count_side(p.host, r.sub.vertices, 0), 3);
    EXPECT_TRUE(endpoints_listed(p.host, r.sub));
}

TEST(Amplify, SingleRunAndIdempotentUnion) {
    const RoundedSubgraph fixed{{1, 2}, {0}};
    int calls = 0;
    const RoundOnce once = [&](std::uint64_t) {
        ++calls;
        return fixed;
    };
    const RoundedSubgraph a = amplify_weakly_faithful(once, 1.0, 3);
    EXPECT_EQ(calls, 1);
    EXPECT_EQ(a.vertices, fixed.vertices);
    calls = 0;
    const RoundedSubgraph b = amplify_weakly_faithful(once, 1.0 / 3.0, 3);
    EXPECT_EQ(calls, 3);
    EXPECT_EQ(b.vertices, fixed.vertices);
    EXPECT_EQ(b.edges, fixed.edges);
    EXPECT_THROW(amplify_weakly_faithful(once, 0.0, 1), ParameterError);
}

TEST(Amplify, CoverageBound) {
    const double phi = 1.0 / 8.0, p = 0.05;
    const RoundOnce once = [&](std::uint64_t s) {
        Rng rng(s);
        RoundedSubgraph r;
        if (rng.bernoulli(p)) r.edges.push_back(0);
        return r;
    };
    const int trials = 10000;
    int hit = 0;
    for (int t = 0; t < trials; ++t) hit += !amplify_weakly_faithful(once, phi, derive_seed(11, t)).edges.empty();
    const double rate = static_cast<double>(hit) / trials;
    const double bound = (1.0 - std::exp(-1.0)) * p / phi;
    const double sigma = std::sqrt(bound * (1 - bound) / trials);
    EXPECT_GE(rate, bound - 2 * sigma);
}

TEST(SmallDegree, IntegralRegularStaysInside) {
    const PlantedBipartite p = planted_kdd(10, 3, 2, 0.3, 5);
    const MixtureValues y = integral_values(p, 2);
    const ParamTuple tau{6, 6, 3, 3};
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const RoundedSubgraph r = small_degree_rounding(p.host, tau, y, seed);
        EXPECT_LE(count_side(p.host, r.vertices, 1), tau.k1);
        EXPECT_LE(r.edges.size(), static_cast<std::size_t>(tau.k0 * tau.d0));
        EXPECT_FALSE(r.edges.empty());
        for (std::size_t e : r.edges)
            EXPECT_TRUE(std::binary_search(p.plant_edges.begin(), p.plant_edges.end(), e));
        EXPECT_TRUE(endpoints_listed(p.host, r));
    }
}

TEST(SmallDegree, ZeroEdgeValuesGiveNothing) {
    const PlantedBipartite p = planted_kdd(4, 2, 1, 0.5, 6);
    const ZeroValues y;
    const SmallDegreeRounder r(p.host, {2, 2, 2, 2}, y);
    EXPECT_TRUE(r.empty());
    EXPECT_FALSE(r.diagnostic().empty());
    EXPECT_TRUE(r.round(1).edges.empty());
}

TEST(SmallDegree, VertexRatesOnK22) {
    const PlantedBipartite p = planted_kdd(2, 2, 1, 0.0, 7);
    // Uniform fractional values: half of the mass on K_{2,2}, half on nothing.
    const MixtureValues y(p.host, {{1.0, p.plant_vertices, p.plant_edges}, {1.0, {}, {}}}, 2);
    const ParamTuple tau{2, 2, 2, 2};
    const int trials = 10000;
    std::vector<int> hits(p.host.universe(), 0);
    for (int t = 0; t < trials; ++t)
        for (Vertex v : small_degree_rounding(p.host, tau, y, derive_seed(21, t)).vertices) ++hits[v];
    for (Vertex v : p.host.vertices()) {
        const double rate = static_cast<double>(hits[v]) / trials;
        EXPECT_LE(rate, tau.d0 * y.vertex(v) + 3 * std::sqrt(0.25 / trials));
    }
}

TEST(Bucketing, CompleteBipartiteCounts) {
    for (int d = 2; d <= 4; ++d) {
        const PlantedBipartite p = planted_kdd(d, d, 1, 0.0, 8);
        const MixtureValues y = integral_values(p, 2);
        const BucketingTrace tr = bucket_caterpillars(p.host, y, build_caterpillar(1, 2), {d, d, d, d});
        ASSERT_FALSE(tr.failed) << tr.dump();
        EXPECT_EQ(tr.initial, p.host.side(0));
        ASSERT_EQ(tr.steps.size(), 2u);
        EXPECT_EQ(tr.steps[0].bucket_after, static_cast<std::size_t>(d * d));
        EXPECT_EQ(tr.steps[1].bucket_after, static_cast<std::size_t>(d * d * d));
        for (const StepTrace& st : tr.steps)
            for (const BucketStage& sg : st.stages) {
                if (sg.name != "prune") EXPECT_EQ(sg.buckets, 1u) << sg.name;
                EXPECT_DOUBLE_EQ(sg.spread, 1.0);
            }
    }
}

TEST(Bucketing, WeightIdentityOnPlantedCopies) {
    for (int d = 1; d <= 4; ++d)
        for (int s = 1; s <= 3; ++s) {
            const PlantedBipartite p = planted_kdd(12, d, 2, 0.25, 9 + d);
            const MixtureValues y = integral_values(p, 3);
            const ParamTuple tau{2 * d, 2 * d, d, d};
            const CaterpillarTemplate k = build_caterpillar(1, s);
            const BucketingTrace tr = bucket_caterpillars(p.host, y, k, tau);
            ASSERT_FALSE(tr.failed) << tr.dump();
            for (const StepTrace& st : tr.steps) {
                const double expect = tau.k0 * std::pow(tau.d0, st.t0) * std::pow(tau.d1, st.t1);
                EXPECT_EQ(st.weight_after, expect) << "d=" << d << " t=" << st.t;
            }
        }
}

TEST(Bucketing, HairStepExtendsLeafTuples) {
    const PlantedBipartite p = planted_kdd(3, 3, 1, 0.0, 10);
    const MixtureValues y = integral_values(p, 3);
    const BucketingTrace tr = bucket_caterpillars(p.host, y, build_caterpillar(2, 3), {3, 3, 3, 3});
    ASSERT_FALSE(tr.failed) << tr.dump();
    ASSERT_EQ(tr.steps.size(), 3u);
    // Step 2 is a hair: step 3 sees tuples (root, hair leaf).
    EXPECT_EQ(tr.steps[1].leaf_tuples.front().size(), 1u);
    EXPECT_EQ(tr.steps[2].leaf_tuples.front().size(), 2u);
    EXPECT_EQ(tr.steps[2].layer.side, 1);
    EXPECT_EQ(tr.steps[2].weight_after, 3.0 * 3 * 3 * 3);
    EXPECT_NE(tr.dump().find("kind=hair"), std::string::npos);
}

TEST(Bucketing, ZeroValuesFailAtInitialization) {
    const PlantedBipartite p = planted_kdd(4, 2, 1, 0.5, 11);
    const ZeroValues y;
    const BucketingTrace tr = bucket_caterpillars(p.host, y, build_caterpillar(1, 2), {2, 2, 2, 2});
    EXPECT_TRUE(tr.failed);
    EXPECT_EQ(tr.failed_step, 0);
}

TEST(Bucketing, EmbeddingCap) {
    const PlantedBipartite p = planted_kdd(6, 6, 1, 0.0, 12);
    const MixtureValues y = integral_values(p, 3);
    RoundingConstants c;
    c.embedding_cap = 100;
    EXPECT_THROW(bucket_caterpillars(p.host, y, build_caterpillar(1, 3), {6, 6, 6, 6}, c), DomainError);
}

TEST(FaithfulSmes, ZeroValuesSignalFailure) {
    const PlantedBipartite p = planted_kdd(6, 3, 1, 0.5, 13);
    const ZeroValues y;
    const FaithfulSmes fs(p.host, {3, 3, 3, 3}, 2, y);
    EXPECT_EQ(fs.planned_route(), Route::Failure);
    EXPECT_TRUE(fs.trace().failed);
    EXPECT_EQ(fs.round(1).route, Route::Failure);
    EXPECT_TRUE(fs.round(1).sub.vertices.empty());
}

TEST(FaithfulSmes, PlantStaysInside) {
    for (int d : {4, 6}) {
        const PlantedBipartite p = planted_kdd(20, d, 1, 0.15, 14 + d);
        const MixtureValues y = integral_values(p, 3);
        const BipartiteSmesRounder r(p.host, {d, d, d, d}, 3, y);
        double edges = 0.0;
        const int trials = 200;
        for (int t = 0; t < trials; ++t) {
            const RoundingOutcome o = r.round(derive_seed(3, t));
            EXPECT_NE(o.route, Route::Failure);
            for (std::size_t e : o.sub.edges)
                EXPECT_TRUE(std::binary_search(p.plant_edges.begin(), p.plant_edges.end(), e));
            for (Vertex v : o.sub.vertices)
                EXPECT_TRUE(std::find(p.plant_vertices.begin(), p.plant_vertices.end(), v) != p.plant_vertices.end());
            edges += o.sub.edges.size();
        }
        const double polylog = RoundingConstants{}.polylog(p.host.num_vertices());
        EXPECT_GE(edges / trials, d * d / polylog);
    }
}

TEST(FaithfulSmes, HighDegreeStepFiresOnSparsePlant) {
    // A 4-regular plant on 12 + 12 vertices: gamma = ln 3 / ln 40 gives alpha = 1/2 at q = 2.
    std::vector<Vertex> s0, s1, pv;
    std::vector<Edge> e;
    for (int i = 0; i < 20; ++i) {
        s0.push_back(i);
        s1.push_back(20 + i);
    }
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 4; ++j) e.push_back({i, 20 + (i + j) % 12});
    const BipartiteGraph g(40, s0, s1, e);
    for (int i = 0; i < 12; ++i) {
        pv.push_back(i);
        pv.push_back(20 + i);
    }
    std::vector<std::size_t> pe(g.num_edges());
    std::iota(pe.begin(), pe.end(), std::size_t{0});
    const MixtureValues y(g, {{1.0, pv, pe}}, 2);
    const FaithfulSmes fs(g, {12, 12, 4, 4}, 2, y);
    EXPECT_DOUBLE_EQ(fs.params().alpha, 0.5);
    EXPECT_NEAR(fs.params().f, 3.0, 1e-12);
    EXPECT_EQ(fs.planned_route(), Route::HighDegree);
    EXPECT_EQ(fs.firing_step(), 1);
    EXPECT_LE(fs.degree_spread(), RoundingConstants{}.polylog(40));
    const RoundingOutcome o = fs.round(5);
    EXPECT_EQ(o.route, Route::HighDegree);
    EXPECT_EQ(o.sub.vertices.size(), 24u);
}

TEST(Dispatcher, SwapsSidesWhenNeeded) {
    const PlantedBipartite p = planted_kdd(8, 3, 1, 0.2, 15);
    const MixtureValues y = integral_values(p, 3);
    const BipartiteSmesRounder r(p.host, {3, 4, 4, 3}, 3, y);
    EXPECT_TRUE(r.swapped());
    for (std::uint64_t s = 0; s < 20; ++s) {
        const RoundingOutcome o = r.round(s);
        EXPECT_TRUE(endpoints_listed(p.host, o.sub));
        for (std::size_t e : o.sub.edges)
            EXPECT_TRUE(std::binary_search(p.plant_edges.begin(), p.plant_edges.end(), e));
    }
}

TEST(GeneralFromBipartite, FoldsCopies) {
    const Graph g = complete(3);
    const BipartiteGraph cover = double_cover(g);
    const std::size_t ce = *cover.edge_index(cover_id(0, 0), cover_id(1, 1));
    const RoundedSubgraph out = general_from_bipartite(
        g, cover, [&](std::uint64_t) { return RoundedSubgraph{{cover_id(0, 0), cover_id(1, 1)}, {ce}}; }, 1);
    EXPECT_EQ(out.vertices, (std::vector<Vertex>{0, 1}));
    EXPECT_EQ(out.edges, (std::vector<std::size_t>{*g.edge_index(0, 1)}));

    // Both copies of a vertex and both preimages of an edge fold to one each.
    const std::size_t ce2 = *cover.edge_index(cover_id(1, 0), cover_id(0, 1));
    const RoundedSubgraph twice =
        fold_cover(g, cover, {{cover_id(0, 0), cover_id(0, 1), cover_id(1, 0), cover_id(1, 1)}, {ce, ce2}});
    EXPECT_EQ(twice.vertices, (std::vector<Vertex>{0, 1}));
    EXPECT_EQ(twice.edges.size(), 1u);
}
