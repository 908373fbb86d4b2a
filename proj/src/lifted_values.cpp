#include "spannerforge/lifted_values.hpp"

#include <algorithm>

#include "spannerforge/errors.hpp"

namespace spannerforge {

double LiftedValues::vertex(Vertex v) const {
    const Vertex vs[] = {v};
    return value(vs, {});
}

double LiftedValues::edge(std::size_t e) const {
    const std::size_t es[] = {e};
    return value({}, es);
}

MixtureValues::MixtureValues(const BipartiteGraph& host, std::vector<Component> components, int arity)
    : arity_(arity) {
    double total = 0.0;
    for (const auto& c : components) {
        if (c.weight < 0.0) throw ParameterError("MixtureValues: negative weight");
        total += c.weight;
        std::vector<char> hv(host.universe(), 0), he(host.num_edges(), 0);
        for (Vertex v : c.vertices) {
            if (host.side_of(v) < 0) throw InputError("MixtureValues: vertex not in host");
            hv[v] = 1;
        }
        for (std::size_t e : c.edges) {
            if (e >= host.num_edges()) throw InputError("MixtureValues: edge index out of range");
            he[e] = 1;
        }
        weight_.push_back(c.weight);
        has_vertex_.push_back(std::move(hv));
        has_edge_.push_back(std::move(he));
    }
    if (total <= 0.0) throw ParameterError("MixtureValues: weights must have a positive sum");
    for (double& w : weight_) w /= total;
}

double MixtureValues::value(std::span<const Vertex> vertices, std::span<const std::size_t> edges) const {
    if (static_cast<int>(vertices.size() + edges.size()) > arity_) {
        // Repeats are allowed, so only reject genuinely large sets.
        std::vector<Vertex> vs(vertices.begin(), vertices.end());
        std::vector<std::size_t> es(edges.begin(), edges.end());
        std::sort(vs.begin(), vs.end());
        std::sort(es.begin(), es.end());
        const auto nv = std::unique(vs.begin(), vs.end()) - vs.begin();
        const auto ne = std::unique(es.begin(), es.end()) - es.begin();
        if (nv + ne > arity_) throw ContractError("MixtureValues: set exceeds the arity");
    }
    double s = 0.0;
    for (std::size_t c = 0; c < weight_.size(); ++c) {
        bool all = true;
        for (Vertex v : vertices)
            if (v < 0 || v >= static_cast<int>(has_vertex_[c].size()) || !has_vertex_[c][v]) { all = false; break; }
        if (all)
            for (std::size_t e : edges)
                if (e >= has_edge_[c].size() || !has_edge_[c][e]) { all = false; break; }
        if (all) s += weight_[c];
    }
    return s;
}

}  // namespace spannerforge
