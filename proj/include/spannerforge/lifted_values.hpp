#ifndef SPANNERFORGE_LIFTED_VALUES_HPP
#define SPANNERFORGE_LIFTED_VALUES_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "spannerforge/graph.hpp"

namespace spannerforge {

// Read access to y_T over a bipartite host, where T mixes host vertices and
// host edges (edges by index into host.edges()). Values are normalized so
// that the empty set has value 1.
class LiftedValues {
public:
    virtual ~LiftedValues() = default;
    // vertices and edges may be unsorted and may repeat; the set is what counts.
    // Throws ContractError when the set exceeds arity().
    virtual double value(std::span<const Vertex> vertices, std::span<const std::size_t> edges) const = 0;
    virtual int arity() const = 0;

    double vertex(Vertex v) const;
    double edge(std::size_t e) const;
};

// Convex combination of integral lifts: y_T = sum of weights of the subgraphs
// containing every member of T. Feasible for the set relaxation whenever each
// subgraph is nearly regular for the same parameters.
class MixtureValues : public LiftedValues {
public:
    struct Component {
        double weight = 0.0;
        std::vector<Vertex> vertices;
        std::vector<std::size_t> edges;  // host edge indices
    };

    MixtureValues(const BipartiteGraph& host, std::vector<Component> components, int arity);
    double value(std::span<const Vertex> vertices, std::span<const std::size_t> edges) const override;
    int arity() const override { return arity_; }

private:
    std::vector<double> weight_;
    std::vector<std::vector<char>> has_vertex_;
    std::vector<std::vector<char>> has_edge_;
    int arity_;
};

}  // namespace spannerforge

#endif
