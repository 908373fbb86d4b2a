#ifndef SPANNERFORGE_PIPELINE_HPP
#define SPANNERFORGE_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spannerforge/graph.hpp"
#include "spannerforge/lp.hpp"
#include "spannerforge/regularity.hpp"
#include "spannerforge/relaxations.hpp"
#include "spannerforge/rounding.hpp"

namespace spannerforge {

enum class LambdaSearch { All, PowersOfTwo };

struct PipelineConfig {
    int q = 2;
    LambdaSearch lambda_search = LambdaSearch::All;
    int max_iterations = 64;
    std::uint64_t seed = 1;
    RoundingConstants constants;
    SolverOptions solver;
};

// Edges with x_e at or above this are bought outright.
inline constexpr double kEdgeThreshold = 0.25;

struct BlockOutcome {
    Vertex u = 0;
    int tuple_index = 0;
    ParamTuple tau;
    double z_empty = 0.0;
    bool fired = false;
    std::string route;   // empty when the coin did not fire
    double factor = 0.0;
    int vertices = 0;    // vertices of G_u returned by the rounding
    int bought = 0;      // new edges {u, v}
    std::string error;
};

struct IterationReport {
    int iteration = 0;
    int lambda = 0;
    std::size_t demands_before = 0;
    std::size_t demands_after = 0;
    std::size_t ex_size = 0;           // |E_x|
    std::size_t ex_new = 0;            // E_x edges not already bought
    std::size_t rounding_new = 0;      // rounding edges not in H or E_x
    int max_degree_ex = 0;             // largest per-vertex degree added by E_x
    int max_degree_rounding = 0;
    int max_degree_added = 0;
    std::vector<int> degree_added;     // per vertex
    long lp_iterations = 0;
    bool lp_reused = false;
    std::vector<BlockOutcome> blocks;
};

struct IterationResult {
    bool feasible = false;
    std::vector<Edge> new_edges;
    std::vector<Edge> satisfied;
    std::vector<Edge> remaining;
    IterationReport report;
};

// One pass: solve the LD2S relaxation for the current demands, buy E_x, round
// each block whose z_empty coin fires, and drop the demands H now spans.
IterationResult run_iteration(const Graph& g, const std::vector<Edge>& h, const std::vector<Edge>& demands, int lambda,
                              const std::vector<ParamTuple>& multiset, const PipelineConfig& cfg, std::uint64_t seed);

// The same pass on an already solved relaxation.
IterationResult round_relaxation(const Graph& g, const std::vector<Edge>& h, const std::vector<Edge>& demands,
                                 const Ld2sLp& lp, const std::vector<double>& x, const PipelineConfig& cfg,
                                 std::uint64_t seed);

// Greedy 2-spanner: each unspanned edge is covered by itself or a 2-path,
// whichever keeps the maximum degree lowest.
std::vector<Edge> greedy_spanner(const Graph& g);

// Multiset from the per-center decompositions of a spanner. Empty when a
// decomposition exceeds its piece cap.
std::vector<ParamTuple> spanner_multiset(const Graph& g, const std::vector<Edge>& h, std::uint64_t seed);

struct LambdaRun {
    int lambda = 0;
    std::string status;   // complete, incomplete, infeasible, skipped
    int iterations = 0;
    int cost = -1;
    std::size_t patched = 0;  // demands added as edges at the end
};

struct Ld2sReport {
    std::string status;       // complete, incomplete or fallback
    int lambda_low = 0;       // smallest integer lambda with a feasible relaxation
    long lp_iterations = 0;   // pivots spent locating lambda_low
    int best_lambda = 0;
    int cost = 0;
    int heuristic_cost = 0;
    std::vector<ParamTuple> multiset;
    std::vector<LambdaRun> runs;
    std::vector<IterationReport> iterations;  // of the best run
    std::vector<Edge> spanner;
};

Ld2sReport approximate_ld2s(const Graph& g, const PipelineConfig& cfg = {});

}  // namespace spannerforge

#endif
