#ifndef SPANNERFORGE_RELAXATIONS_HPP
#define SPANNERFORGE_RELAXATIONS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spannerforge/graph.hpp"
#include "spannerforge/lifted_values.hpp"
#include "spannerforge/lp.hpp"
#include "spannerforge/regularity.hpp"
#include "spannerforge/subset_index.hpp"

namespace spannerforge {

// Minimisation of the max degree over fractional 2-paths: x_e, x_{e;w} for
// triangles, and lambda.
struct KpLp {
    LinearProgram lp;
    int lambda_var = -1;
    std::vector<int> x_var;  // per edge of G
};
KpLp build_kp_lp(const Graph& g);

struct SetBlockOptions {
    // n entering the degree slack; 0 means the host's vertex count (the base
    // graph's for the SmES wrapper).
    int slack_n = 0;
    // Drop vertices that can never carry weight (degree below slack*d_b, iterated)
    // and skip the block when a side is then smaller than k_b. Exact: the feasible
    // set is unchanged once dropped items are read as zero.
    bool prune = false;
    std::string prefix = "y";
    std::string z_prefix = "z";  // used by the SmES wrapper
};

// The y_T variables of one set-relaxation system living inside a LinearProgram.
class SetVariableBlock {
public:
    SetVariableBlock() = default;
    SetVariableBlock(BipartiteGraph host, HostItems items, int q, int first_var, ParamTuple tau, double slack,
                     bool active);

    const BipartiteGraph& host() const { return host_; }
    const HostItems& items() const { return items_; }
    const SubsetIndex& index() const { return index_; }
    const ParamTuple& tau() const { return tau_; }
    int arity() const { return q_; }
    double slack() const { return slack_; }
    bool active() const { return active_; }
    int first_var() const { return first_var_; }
    int num_vars() const { return active_ ? static_cast<int>(index_.size()) : 0; }

    // Variable of the set with these host vertices and host edge indices; -1 when
    // some member was pruned or the block is inactive.
    int var(std::span<const Vertex> vertices, std::span<const std::size_t> edges) const;
    int var_of_items(std::vector<int> item_ids) const;
    int empty_var() const { return active_ ? first_var_ : -1; }

private:
    BipartiteGraph host_;
    HostItems items_;
    SubsetIndex index_;
    ParamTuple tau_;
    int q_ = 0;
    int first_var_ = -1;
    double slack_ = 0.0;
    bool active_ = false;
};

// Adds the set relaxation for (host, tau, q) to lp. Throws ParameterError for q < 2.
SetVariableBlock add_set_block(LinearProgram& lp, const BipartiteGraph& host, const ParamTuple& tau, int q,
                               const SetBlockOptions& options = {});

struct BipartiteSmesLp {
    LinearProgram lp;
    SetVariableBlock block;
};
BipartiteSmesLp build_bipartite_smes_lp(const BipartiteGraph& host, const ParamTuple& tau, int q,
                                        const SetBlockOptions& options = {});

// Set relaxation over B(G) plus the z variables that fold it back onto G.
struct SmesBlock {
    SetVariableBlock y;
    int z_empty = -1;             // aliases y_empty
    std::vector<int> z_vertex;    // per vertex of G, -1 when absent
    std::vector<int> z_edge;      // per edge of G, -1 when absent
    bool active() const { return y.active(); }
};
SmesBlock add_smes_block(LinearProgram& lp, const Graph& g, const ParamTuple& tau, int q,
                         const SetBlockOptions& options = {});

struct SmesLp {
    LinearProgram lp;
    SmesBlock block;
};
SmesLp build_smes_lp(const Graph& g, const ParamTuple& tau, int q, const SetBlockOptions& options = {});

// Right-hand side of the per-vertex and per-edge decomposition rows: 16 (1 + ln Δ)^3.
double decomposition_constant(int max_degree);

struct Ld2sBlock {
    Vertex u = 0;
    int tuple_index = 0;  // position in the multiset
    ParamTuple tau;
    LocalGraph local;     // G_u
    SmesBlock smes;
};

struct Ld2sLp {
    LinearProgram lp;
    std::vector<int> x_var;        // per edge of G
    std::vector<Ld2sBlock> blocks; // active blocks only
    int lambda = 0;
    int q = 0;
    double constant = 0.0;
    std::size_t pruned_blocks = 0;
};

struct Ld2sOptions {
    bool prune_blocks = true;
};

// One block per (u, multiset element); every element gets its own block.
Ld2sLp build_ld2s_lp(const Graph& g, const std::vector<Edge>& demands, int lambda, int q,
                     const std::vector<ParamTuple>& multiset, const Ld2sOptions& options = {});

// 0/1 values for one block: y_T = 1 exactly when every member of T is in the subgraph.
void lift_into(const SetVariableBlock& block, const std::vector<Vertex>& vertices,
               const std::vector<std::size_t>& edges, std::vector<double>& x);

// Lift of a bipartite subgraph of g (side 0 onto copy 0, side 1 onto copy 1), z included.
void lift_smes_into(const SmesBlock& block, const Graph& g, const BipartiteGraph& piece, std::vector<double>& x);

// Integral lift of a subgraph of the host into a standalone set relaxation.
std::vector<double> integral_lift(const BipartiteSmesLp& lp, const std::vector<Vertex>& vertices,
                                  const std::vector<Edge>& edges);

// Per-center nearly-regular pieces of a spanner, in G_w's local ids.
struct CenterPieces {
    Vertex w = 0;
    std::vector<DecompositionPiece> pieces;
};

// The LP point built from a 2-spanner H and the decomposition of each H_w.
// Pieces are matched to blocks of equal tuple at the same center in order.
// Throws ContractError when the multiset lacks a needed block.
std::vector<double> lift_ld2s_solution(const Ld2sLp& lp, const Graph& g, const std::vector<Edge>& h,
                                       const std::vector<CenterPieces>& pieces);

// Tuple multiplicities: the largest count at any single center.
std::vector<ParamTuple> multiset_from_pieces(const std::vector<CenterPieces>& pieces);

// Per demand not in H, the smallest common H-neighbor; grouped per center as graphs on G_w's local ids.
std::vector<std::pair<Vertex, LocalGraph>> spanner_center_graphs(const Graph& g, const std::vector<Edge>& demands,
                                                                 const std::vector<Edge>& h);

// LP values of one block, rescaled by 1 / y_empty.
class BlockValues : public LiftedValues {
public:
    BlockValues(const SetVariableBlock& block, std::span<const double> solution);
    double value(std::span<const Vertex> vertices, std::span<const std::size_t> edges) const override;
    int arity() const override { return block_->arity(); }
    double scale() const { return scale_; }

private:
    const SetVariableBlock* block_;
    std::span<const double> x_;
    double scale_ = 1.0;
};

}  // namespace spannerforge

#endif
