#ifndef SPANNERFORGE_ROUNDING_HPP
#define SPANNERFORGE_ROUNDING_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spannerforge/graph.hpp"
#include "spannerforge/lifted_values.hpp"
#include "spannerforge/regularity.hpp"

namespace spannerforge {

// Every hidden constant of the rounding lives here.
struct RoundingConstants {
    double polylog_exponent = 2.0;    // polylog(n) = (1 + ln n)^exponent
    double degree_threshold = 1.0;    // high-degree trigger: max degree >= this * n d0 / (k1 f^2)
    double prune_constant = 1.0;      // keep a leaf tuple when its weight grows by >= this * d_b / polylog
    std::size_t embedding_cap = 10'000'000;

    double polylog(int n) const;
};

struct DerivedParams {
    int n = 0;
    int q = 0;
    ParamTuple tau;
    double gamma = 0.0;
    double alpha = 0.0;
    int r = 1;
    int s = 1;
    // Infinite when alpha = 1 but gamma > 0: the fixed point does not exist.
    double f = 1.0;
    double D = 0.0;
    bool small_degree_mode = false;
};

// Requires 1 <= k1 <= k0 <= n, d0 <= k1 and q >= 2 (ParameterError otherwise).
// Throws DegenerateParameters when alpha rounds to 0.
DerivedParams derive_params(int n, const ParamTuple& tau, int q);

enum class StepKind { Backbone, Hair };

// Template vertex 0 is the root on side 0; step t adds vertex t, attached to parent[t].
struct CaterpillarTemplate {
    int r = 1;
    int s = 1;
    std::vector<StepKind> steps;   // steps[t-1] is step t
    std::vector<int> parent;       // parent[0] = -1
    std::vector<int> side;         // side of each template vertex
    std::vector<int> rightmost;    // rightmost[t]: backbone end after t steps

    int hairs() const;
    // Edges of the t-step prefix leaving side b (edges directed away from the root).
    int edges_from_side(int t, int b) const;
};

// Throws ParameterError unless 1 <= r <= s and gcd(r, s) = 1.
CaterpillarTemplate build_caterpillar(int r, int s);
bool is_hair_step(int r, int s, int t);

// Subgraph output of a rounding, over the host's vertex ids and edge indices. Sorted.
struct RoundedSubgraph {
    std::vector<Vertex> vertices;
    std::vector<std::size_t> edges;
};

// One layer G_t = (S_t, W_t, E_t) of the bucketing; S_t lies on side `side`.
struct LayerGraph {
    int side = 0;
    std::vector<Vertex> S;
    std::vector<Vertex> W;
    std::vector<std::size_t> edges;
};

struct BucketStage {
    std::string name;
    std::size_t count = 0;
    double weight = 0.0;
    std::vector<int> key;       // chosen bucket (empty for the pruning stage)
    std::size_t buckets = 0;    // leaf tuples seen, for the pruning stage
    double spread = 1.0;        // largest max/min ratio of a bucketed quantity inside the bucket
};

struct StepTrace {
    int t = 0;
    StepKind kind = StepKind::Backbone;
    LayerGraph layer;
    std::size_t bucket_before = 0;   // |B_t|
    double weight_before = 0.0;      // sum of y over B_t
    double weight_extended = 0.0;    // sum of y over all one-edge extensions of B_t
    std::size_t bucket_after = 0;    // |B_{t+1}|
    double weight_after = 0.0;
    int t0 = 0, t1 = 0;              // edge counts of K_{t+1} per side
    std::vector<BucketStage> stages;
    std::vector<std::vector<Vertex>> leaf_tuples;          // surviving tuples, sorted
    std::vector<std::vector<std::size_t>> tuple_edges;     // E(H^lambda_t), parallel to leaf_tuples
    std::vector<std::size_t> tuple_count;                  // |T^lambda(B_{t+1})|
};

struct BucketingTrace {
    std::vector<Vertex> initial;     // B_1
    double initial_weight = 0.0;
    int initial_key = 0;
    double initial_spread = 1.0;
    std::vector<StepTrace> steps;
    bool failed = false;
    int failed_step = 0;             // 0 = initialization
    std::string failure;

    std::string dump() const;
};

// Runs the bucketing for every step of the template, stopping early on an empty
// bucket (failed = true). Throws DomainError past the embedding cap.
BucketingTrace bucket_caterpillars(const BipartiteGraph& g, const LiftedValues& y, const CaterpillarTemplate& k,
                                   const ParamTuple& tau, const RoundingConstants& c = {});

// m' / k0' >= d0 / f, m' / k1' >= d1 / f and m' (k0 f / k0') (k1 f / k1') >= k0 d0.
bool check_simplified_conditions(double k0p, double k1p, double mp, const ParamTuple& tau, double f);

struct SkewedResult {
    RoundedSubgraph sub;
    int case_id = 1;
    double phi = 1.0;  // weak-faithfulness scale; 1 in the first case
};

SkewedResult skewed_to_faithful(const BipartiteGraph& g, const RoundedSubgraph& h, double k0p, double k1p,
                                double mp, const ParamTuple& tau, double f, std::uint64_t seed);

struct HighDegreeResult {
    RoundedSubgraph sub;
    std::size_t clamped = 0;  // edges whose probability exceeded 1
};

// Throws ContractError when the layer's maximum degree is below threshold.
HighDegreeResult high_degree_rounding(const BipartiteGraph& g, const LayerGraph& layer, const ParamTuple& tau,
                                      double f, const LiftedValues& y, double threshold, std::uint64_t seed);

using RoundOnce = std::function<RoundedSubgraph(std::uint64_t)>;

// Union of ceil(1/phi) independent runs.
RoundedSubgraph amplify_weakly_faithful(const RoundOnce& round_once, double phi, std::uint64_t seed);

// The edge-bucket rounding for small degrees. Deterministic preparation happens
// once; round() draws.
class SmallDegreeRounder {
public:
    SmallDegreeRounder(const BipartiteGraph& g, const ParamTuple& tau, const LiftedValues& y);
    RoundedSubgraph round(std::uint64_t seed) const;
    bool empty() const { return bucket_.empty(); }
    const std::string& diagnostic() const { return diagnostic_; }
    double y_min() const { return y_min_; }

private:
    const BipartiteGraph* g_;
    ParamTuple tau_;
    std::vector<std::size_t> bucket_;
    std::vector<Vertex> u1_;
    double y_min_ = 0.0;
    std::string diagnostic_;
};

RoundedSubgraph small_degree_rounding(const BipartiteGraph& g, const ParamTuple& tau, const LiftedValues& y,
                                      std::uint64_t seed);

enum class Route { HighDegree, Skewed, SkewedAmplified, SmallDegree, Fallback, Failure };
std::string route_name(Route r);

struct RoundingOutcome {
    RoundedSubgraph sub;
    Route route = Route::Failure;
    int step = 0;
    double phi = 1.0;
    int runs = 1;
    std::size_t clamped = 0;
};

// The caterpillar rounding for f <= d0 and k0 >= k1. All deterministic work
// (parameters, bucketing, which step fires) is done by the constructor.
class FaithfulSmes {
public:
    FaithfulSmes(const BipartiteGraph& g, const ParamTuple& tau, int q, const LiftedValues& y,
                 const RoundingConstants& c = {});

    // route Failure when no step fires.
    RoundingOutcome round(std::uint64_t seed) const;

    const DerivedParams& params() const { return params_; }
    const CaterpillarTemplate& caterpillar() const { return template_; }
    const BucketingTrace& trace() const { return trace_; }
    Route planned_route() const { return route_; }
    int firing_step() const { return step_; }
    // Step-2 averages at the firing step (Skewed routes), in side-0/side-1 orientation.
    double k0p() const { return k0p_; }
    double k1p() const { return k1p_; }
    double mp() const { return mp_; }
    // max / average degree per side of G_t at the high-degree step.
    double degree_spread() const { return degree_spread_; }

private:
    const BipartiteGraph* g_;
    const LiftedValues* y_;
    ParamTuple tau_;
    RoundingConstants c_;
    DerivedParams params_;
    CaterpillarTemplate template_;
    BucketingTrace trace_;
    Route route_ = Route::Failure;
    int step_ = 0;
    double k0p_ = 0.0, k1p_ = 0.0, mp_ = 0.0;
    double degree_spread_ = 1.0;

    RoundedSubgraph skewed_once(std::uint64_t seed, SkewedResult* info) const;
};

RoundingOutcome faithful_smes(const BipartiteGraph& g, const ParamTuple& tau, int q, const LiftedValues& y,
                              std::uint64_t seed, const RoundingConstants& c = {});

// Full bipartite dispatcher: swaps sides when k0 < k1, picks the small-degree
// rounding when f > d0 (or the parameters degenerate), and falls back to it when
// the caterpillar rounding fails. Output is in the caller's orientation.
class BipartiteSmesRounder {
public:
    BipartiteSmesRounder(const BipartiteGraph& g, const ParamTuple& tau, int q, const LiftedValues& y,
                         const RoundingConstants& c = {});
    ~BipartiteSmesRounder();
    BipartiteSmesRounder(const BipartiteSmesRounder&) = delete;
    BipartiteSmesRounder& operator=(const BipartiteSmesRounder&) = delete;

    RoundingOutcome round(std::uint64_t seed) const;

    Route planned_route() const { return route_; }
    // The factor the route is faithful for: f, or d0 polylog(n) on the small-degree routes.
    double factor() const { return factor_; }
    bool swapped() const { return swapped_; }
    const std::optional<DerivedParams>& params() const { return params_; }
    const FaithfulSmes* caterpillar_rounding() const { return faithful_.get(); }
    const std::string& note() const { return note_; }

private:
    struct Swapped;
    const BipartiteGraph* g_;
    bool swapped_ = false;
    std::unique_ptr<Swapped> swap_;
    std::optional<DerivedParams> params_;
    std::unique_ptr<FaithfulSmes> faithful_;
    std::unique_ptr<SmallDegreeRounder> small_;
    Route route_ = Route::SmallDegree;
    double factor_ = 1.0;
    std::string note_;
};

// Fold of a rounding on B(G) back to G: v is chosen when either copy is, and
// each cover edge maps to its base edge. Edges are indices into g.edges().
RoundedSubgraph general_from_bipartite(const Graph& g, const BipartiteGraph& cover, const RoundOnce& rounder,
                                       std::uint64_t seed);
RoundedSubgraph fold_cover(const Graph& g, const BipartiteGraph& cover, const RoundedSubgraph& sub);

}  // namespace spannerforge

#endif
