#ifndef SPANNERFORGE_GRAPH_HPP
#define SPANNERFORGE_GRAPH_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

namespace spannerforge {

using Vertex = int;

// Undirected edge. Graph stores edges with u < v; BipartiteGraph stores
// (side-0 endpoint, side-1 endpoint).
struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    // Throws InputError on self-loops, duplicates or out-of-range endpoints.
    Graph(int n, std::vector<Edge> edges);

    int num_vertices() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const;
    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
    int max_degree() const { return max_degree_; }
    bool has_edge(Vertex a, Vertex b) const { return edge_index(a, b).has_value(); }
    std::optional<std::size_t> edge_index(Vertex a, Vertex b) const;
    bool contains(Vertex v) const { return v >= 0 && v < n_; }

private:
    int n_ = 0;
    int max_degree_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
};

// Bipartite graph over a universe of ids [0, universe). Only ids placed on a
// side are vertices of the graph.
class BipartiteGraph {
public:
    BipartiteGraph() = default;
    // Edges may be given in either orientation; they are stored as (side0, side1).
    BipartiteGraph(int universe, std::vector<Vertex> side0, std::vector<Vertex> side1,
                   std::vector<Edge> edges);

    int universe() const { return universe_; }
    const std::vector<Vertex>& side(int b) const { return sides_[b]; }
    // -1 when v is not a vertex of the graph.
    int side_of(Vertex v) const;
    int num_vertices() const { return static_cast<int>(sides_[0].size() + sides_[1].size()); }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const;
    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
    int max_degree() const;
    std::optional<std::size_t> edge_index(Vertex a, Vertex b) const;
    // All vertices, ascending.
    std::vector<Vertex> vertices() const;

private:
    int universe_ = 0;
    std::vector<Vertex> sides_[2];
    std::vector<signed char> side_of_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
};

// Subgraph with local ids 0..k-1; labels[i] is the id of local vertex i in the source graph.
struct LocalGraph {
    Graph graph;
    std::vector<Vertex> labels;

    // Local id of a source vertex, or -1.
    int local_id(Vertex v) const;
};

// G_u: vertices are Γ_G(u) (ascending), edges are demand edges inside Γ_G(u).
LocalGraph neighborhood_subgraph(const Graph& g, const std::vector<Edge>& demands, Vertex u);

// B(G): vertex (v, s) has id 2v+s; every edge {u,v} yields (2u,2v+1) and (2v,2u+1).
BipartiteGraph double_cover(const Graph& g);
inline Vertex cover_id(Vertex v, int side) { return 2 * v + side; }

struct SpannerCheck {
    bool ok = true;
    std::vector<Edge> unspanned;
};

// Every demand must be an H edge or have a common H-neighbor. Throws InputError
// when H or the demands are not subsets of E(G).
SpannerCheck is_two_spanner(const Graph& g, const std::vector<Edge>& h,
                            const std::vector<Edge>& demands);

// Max degree of the edge set.
int spanner_cost(const std::vector<Edge>& h);

// Sorted, normalized copy with duplicates removed.
std::vector<Edge> normalize_edges(std::vector<Edge> edges);

}  // namespace spannerforge

#endif
