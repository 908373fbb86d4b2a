#ifndef SPANNERFORGE_ORACLES_HPP
#define SPANNERFORGE_ORACLES_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spannerforge/graph.hpp"
#include "spannerforge/lifted_values.hpp"
#include "spannerforge/regularity.hpp"
#include "spannerforge/rounding.hpp"

namespace spannerforge {

// Lowest max degree of a 2-spanner with full demands, bracketed by a branch and
// bound search. lower is always certified; exact when lower == upper.
struct Ld2sBounds {
    int lower = 0;
    int upper = 0;
    bool exact = false;
    std::vector<Edge> witness;  // a spanner of max degree `upper`
    std::size_t nodes = 0;
};

// budget caps search nodes per degree bound; 0 means unlimited. Requires n <= 64.
Ld2sBounds ld2s_bounds(const Graph& g, std::size_t node_budget = 0);

struct Ld2sOptimum {
    int degree = 0;
    std::vector<Edge> witness;
};

inline constexpr std::size_t kBruteLd2sEdgeCap = 24;

// Exact optimum. Refuses (DomainError) graphs with more than edge_cap edges.
Ld2sOptimum brute_ld2s(const Graph& g, std::size_t edge_cap = kBruteLd2sEdgeCap);

struct SmesOptimum {
    bool feasible = false;  // false when m > |E|
    int size = 0;
    std::vector<Vertex> witness;
};

// Fewest vertices inducing at least m edges. Requires n <= 20.
SmesOptimum brute_smes(const Graph& g, long m);

enum class GenMode { Random, Planted };

struct GeneratedGraph {
    Graph graph;
    GenMode mode = GenMode::Random;
    int n = 0;
    double alpha = 0.0;
    double p = 0.0;
    int k = 0;
    double beta = 0.0;
    std::uint64_t seed = 0;
    std::vector<Vertex> plant_vertices;
    std::vector<Edge> plant_edges;
    int plant_attempts = 0;  // configuration-model pairings tried
};

// Erdos-Renyi with p = n^(alpha-1); planted mode adds ceil(k^(1+beta)) edges on
// k random vertices. In random mode k and beta are ignored.
GeneratedGraph gen_dense_vs_random(int n, double alpha, int k, double beta, GenMode mode, std::uint64_t seed);

// Bipartite host on [0, 2 side) holding `copies` vertex-disjoint K_{d,d} plants at
// random positions plus noise edges with probability p. The components mix the
// plants with equal weight. Needs copies * d <= side.
struct PlantedSmesInstance {
    BipartiteGraph host;
    ParamTuple tau;
    std::vector<MixtureValues::Component> components;
};
PlantedSmesInstance gen_planted_smes(int side, int d, int copies, double p, std::uint64_t seed);

struct ItemRate {
    std::size_t hits = 0;
    double rate = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double lp = 0.0;  // zeta
};

struct FaithfulnessOptions {
    double z = 1.959963984540054;  // 95% two-sided
    double slack = 1.5;
    double phi = 1.0;
    double polylog_exponent = 2.0;
};

struct Verdict {
    bool pass = true;
    // Conditions 1-3: worst observed / allowed (pass when <= 1). Condition 4: observed / required.
    double margin = 0.0;
    std::string detail;
};

struct FaithfulnessReport {
    int trials = 0;
    std::uint64_t seed = 0;
    double f = 1.0;
    FaithfulnessOptions options;
    std::vector<Vertex> vertices;
    std::vector<ItemRate> vertex_rates;
    std::vector<ItemRate> edge_rates;  // per host edge index
    std::size_t max_vertices = 0;
    double mean_edges = 0.0;
    double vertex_mass = 0.0;
    double edge_mass = 0.0;
    std::array<Verdict, 4> verdicts;

    bool all_pass() const;
};

std::pair<double, double> wilson_interval(std::size_t hits, std::size_t trials, double z);

// Runs the rounder with derive_seed(seed, trial) for every trial.
FaithfulnessReport estimate_faithfulness(const RoundOnce& rounder, const BipartiteGraph& instance,
                                         const LiftedValues& values, double f, int trials, std::uint64_t seed,
                                         const FaithfulnessOptions& options = {});

// Independent rounding of two edges with marginal 1/2 each, against an LP that
// claims the pair also has value 1/2.
struct CorrelationDemo {
    int trials = 0;
    double rate_e = 0.0;
    double rate_f = 0.0;
    double joint_rate = 0.0;
    double lp_joint = 0.5;
};
CorrelationDemo correlation_demo(int trials, std::uint64_t seed);

// Largest ratio over steps t and u in S_t of Pr_lambda[u in U(H^lambda_t)]
// to E_lambda|U(H^lambda_t)| / |S_t|, lambda uniform over the surviving tuples.
struct VertexCapCheck {
    double worst_ratio = 0.0;
    int worst_step = 0;
    Vertex worst_vertex = -1;
    int steps = 0;
};
VertexCapCheck vertex_probability_cap(const BipartiteGraph& g, const BucketingTrace& trace);

}  // namespace spannerforge

#endif
