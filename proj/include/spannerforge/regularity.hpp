#ifndef SPANNERFORGE_REGULARITY_HPP
#define SPANNERFORGE_REGULARITY_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "spannerforge/graph.hpp"

namespace spannerforge {

// (k0, k1, d0, d1): side sizes and side degree caps.
struct ParamTuple {
    int k0 = 1;
    int k1 = 1;
    int d0 = 1;
    int d1 = 1;
    auto operator<=>(const ParamTuple&) const = default;
    int max_entry() const;
    std::string str() const;
};

// Degree slack below the caps: 1 / (6 max(1, ln n)).
double nearly_regular_slack(int n);

// Absolute tolerance shared with the LP constraint check, so that a graph
// passes the checker exactly when its integral lift satisfies the LP rows.
inline constexpr double kRegularityTolerance = 1e-7;

struct NearlyRegularWitness {
    std::vector<Vertex> U0;
    std::vector<Vertex> U1;
    ParamTuple tau;
    int n = 0;           // the n entering the slack
    double slack = 0.0;  // nearly_regular_slack(n)
};

// |U_b| = k_b and slack(n) d_b <= deg(v) <= d_b for every v in U_b.
bool is_nearly_regular(const BipartiteGraph& piece, const ParamTuple& tau, int n);

struct RegularizeResult {
    NearlyRegularWitness witness;
    BipartiteGraph piece;  // induced on (U0, U1) over H's vertex ids
};

// Finds a large nearly-regular bipartite induced subgraph. Throws DomainError on
// an edgeless graph.
RegularizeResult regularize(const Graph& h, std::uint64_t seed);

struct DecompositionPiece {
    ParamTuple tau;
    BipartiteGraph piece;
};

// Minimum retained fraction asserted for regularize: kRetentionConstant / max(1, ln n)^2.
inline constexpr double kRetentionConstant = 1.0 / 16.0;
// Piece cap for decompose: kPieceCapConstant * max(1, ln n)^3.
inline constexpr double kPieceCapConstant = 16.0;

int decomposition_piece_cap(int n);

// Repeatedly peels regularize pieces off H until no edge is left. Throws
// DomainError when a piece has a parameter above lambda and ContractError when
// the piece cap is exceeded.
std::vector<DecompositionPiece> decompose(const Graph& h, int lambda, std::uint64_t seed);

}  // namespace spannerforge

#endif
