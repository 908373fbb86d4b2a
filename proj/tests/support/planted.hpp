#ifndef SPANNERFORGE_TESTS_PLANTED_HPP
#define SPANNERFORGE_TESTS_PLANTED_HPP

#include <cstdint>
#include <random>

#include "spannerforge/graph.hpp"
#include "spannerforge/lifted_values.hpp"

namespace spannerforge::testing {

// Bipartite host on [0, 2 side): copies of K_{d,d} on the first copies*d vertices
// of each side, plus independent noise edges with probability p elsewhere.
struct PlantedBipartite {
    BipartiteGraph host;
    std::vector<Vertex> plant_vertices;
    std::vector<std::size_t> plant_edges;
};

inline PlantedBipartite planted_kdd(int side, int d, int copies, double p, std::uint64_t seed) {
    std::mt19937_64 rng(seed * 6151 + 3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vertex> s0, s1;
    for (int i = 0; i < side; ++i) {
        s0.push_back(i);
        s1.push_back(side + i);
    }
    auto in_plant = [&](int i, int j) { return i < copies * d && j < copies * d && i / d == j / d; };
    std::vector<Edge> e;
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) {
            const bool noise_ok = i >= copies * d || j >= copies * d;
            if (in_plant(i, j) || (noise_ok && u(rng) < p)) e.push_back({i, side + j});
        }
    PlantedBipartite out{BipartiteGraph(2 * side, s0, s1, e), {}, {}};
    for (int i = 0; i < copies * d; ++i) {
        out.plant_vertices.push_back(i);
        out.plant_vertices.push_back(side + i);
    }
    for (std::size_t k = 0; k < out.host.num_edges(); ++k) {
        const Edge& ed = out.host.edges()[k];
        if (in_plant(ed.u, ed.v - side)) out.plant_edges.push_back(k);
    }
    return out;
}

inline MixtureValues integral_values(const PlantedBipartite& p, int arity) {
    return MixtureValues(p.host, {{1.0, p.plant_vertices, p.plant_edges}}, arity);
}

}  // namespace spannerforge::testing

#endif
