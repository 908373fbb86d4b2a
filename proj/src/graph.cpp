#include "spannerforge/graph.hpp"

#include <algorithm>
#include <string>

#include "spannerforge/errors.hpp"

namespace spannerforge {

namespace {

std::string edge_str(Vertex a, Vertex b) {
    return "{" + std::to_string(a) + "," + std::to_string(b) + "}";
}

}  // namespace

Graph::Graph(int n) : n_(n), adj_(n) {
    if (n < 0) throw InputError("vertex count must be non-negative");
}

Graph::Graph(int n, std::vector<Edge> edges) : Graph(n) {
    for (Edge& e : edges) {
        if (!contains(e.u) || !contains(e.v))
            throw InputError("edge " + edge_str(e.u, e.v) + " has an endpoint outside [0," +
                             std::to_string(n) + ")");
        if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
        e = make_edge(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            throw InputError("duplicate edge " + edge_str(edges[i].u, edges[i].v));
    edges_ = std::move(edges);
    for (const Edge& e : edges_) {
        adj_[e.u].push_back(e.v);
        adj_[e.v].push_back(e.u);
    }
    for (auto& a : adj_) {
        std::sort(a.begin(), a.end());
        max_degree_ = std::max(max_degree_, static_cast<int>(a.size()));
    }
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
    if (!contains(v)) throw InputError("unknown vertex id " + std::to_string(v));
    return adj_[v];
}

std::optional<std::size_t> Graph::edge_index(Vertex a, Vertex b) const {
    if (!contains(a) || !contains(b) || a == b) return std::nullopt;
    const Edge key = make_edge(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
}

BipartiteGraph::BipartiteGraph(int universe, std::vector<Vertex> side0, std::vector<Vertex> side1,
                               std::vector<Edge> edges)
    : universe_(universe), side_of_(universe > 0 ? universe : 0, -1), adj_(universe > 0 ? universe : 0) {
    if (universe < 0) throw InputError("universe must be non-negative");
    std::vector<Vertex>* sides[2] = {&side0, &side1};
    for (int b = 0; b < 2; ++b) {
        for (Vertex v : *sides[b]) {
            if (v < 0 || v >= universe)
                throw InputError("bipartite vertex " + std::to_string(v) + " outside universe");
            if (side_of_[v] != -1)
                throw InputError("vertex " + std::to_string(v) + " listed twice");
            side_of_[v] = static_cast<signed char>(b);
        }
        std::sort(sides[b]->begin(), sides[b]->end());
        sides_[b] = std::move(*sides[b]);
    }
    for (Edge& e : edges) {
        const int su = side_of(e.u), sv = side_of(e.v);
        if (su < 0 || sv < 0 || su == sv)
            throw InputError("edge " + edge_str(e.u, e.v) + " does not cross the sides");
        if (su == 1) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            throw InputError("duplicate edge " + edge_str(edges[i].u, edges[i].v));
    edges_ = std::move(edges);
    for (const Edge& e : edges_) {
        adj_[e.u].push_back(e.v);
        adj_[e.v].push_back(e.u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
}

int BipartiteGraph::side_of(Vertex v) const {
    if (v < 0 || v >= universe_) return -1;
    return side_of_[v];
}

const std::vector<Vertex>& BipartiteGraph::neighbors(Vertex v) const {
    if (side_of(v) < 0) throw InputError("unknown bipartite vertex " + std::to_string(v));
    return adj_[v];
}

int BipartiteGraph::max_degree() const {
    int best = 0;
    for (const auto& a : adj_) best = std::max(best, static_cast<int>(a.size()));
    return best;
}

std::optional<std::size_t> BipartiteGraph::edge_index(Vertex a, Vertex b) const {
    const int sa = side_of(a), sb = side_of(b);
    if (sa < 0 || sb < 0 || sa == sb) return std::nullopt;
    const Edge key = sa == 0 ? Edge{a, b} : Edge{b, a};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
}

std::vector<Vertex> BipartiteGraph::vertices() const {
    std::vector<Vertex> all(sides_[0]);
    all.insert(all.end(), sides_[1].begin(), sides_[1].end());
    std::sort(all.begin(), all.end());
    return all;
}

int LocalGraph::local_id(Vertex v) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), v);
    if (it == labels.end() || *it != v) return -1;
    return static_cast<int>(it - labels.begin());
}

LocalGraph neighborhood_subgraph(const Graph& g, const std::vector<Edge>& demands, Vertex u) {
    if (!g.contains(u)) throw InputError("unknown vertex id " + std::to_string(u));
    LocalGraph out;
    out.labels = g.neighbors(u);
    std::vector<Edge> local;
    for (const Edge& d : demands) {
        if (!g.has_edge(d.u, d.v))
            throw InputError("demand " + edge_str(d.u, d.v) + " is not an edge of G");
        const int a = out.local_id(d.u), b = out.local_id(d.v);
        if (a >= 0 && b >= 0) local.push_back(make_edge(a, b));
    }
    out.graph = Graph(static_cast<int>(out.labels.size()), normalize_edges(std::move(local)));
    return out;
}

BipartiteGraph double_cover(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<Vertex> s0(n), s1(n);
    for (int v = 0; v < n; ++v) {
        s0[v] = cover_id(v, 0);
        s1[v] = cover_id(v, 1);
    }
    std::vector<Edge> edges;
    edges.reserve(2 * g.num_edges());
    for (const Edge& e : g.edges()) {
        edges.push_back({cover_id(e.u, 0), cover_id(e.v, 1)});
        edges.push_back({cover_id(e.v, 0), cover_id(e.u, 1)});
    }
    return BipartiteGraph(2 * n, std::move(s0), std::move(s1), std::move(edges));
}

SpannerCheck is_two_spanner(const Graph& g, const std::vector<Edge>& h,
                            const std::vector<Edge>& demands) {
    const int n = g.num_vertices();
    std::vector<std::vector<Vertex>> adj(n);
    for (const Edge& e : normalize_edges(h)) {
        if (!g.has_edge(e.u, e.v))
            throw InputError("spanner edge " + edge_str(e.u, e.v) + " is not an edge of G");
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    SpannerCheck out;
    for (const Edge& d : demands) {
        if (!g.has_edge(d.u, d.v))
            throw InputError("demand " + edge_str(d.u, d.v) + " is not an edge of G");
        const auto& a = adj[d.u];
        const auto& b = adj[d.v];
        bool spanned = std::binary_search(a.begin(), a.end(), d.v);
        for (std::size_t i = 0, j = 0; !spanned && i < a.size() && j < b.size();) {
            if (a[i] == b[j]) spanned = true;
            else if (a[i] < b[j]) ++i;
            else ++j;
        }
        if (!spanned) {
            out.ok = false;
            out.unspanned.push_back(make_edge(d.u, d.v));
        }
    }
    return out;
}

int spanner_cost(const std::vector<Edge>& h) {
    std::vector<int> deg;
    for (const Edge& e : h) {
        const int top = std::max(e.u, e.v);
        if (top >= static_cast<int>(deg.size())) deg.resize(top + 1, 0);
        ++deg[e.u];
        ++deg[e.v];
    }
    int best = 0;
    for (int d : deg) best = std::max(best, d);
    return best;
}

std::vector<Edge> normalize_edges(std::vector<Edge> edges) {
    for (Edge& e : edges) e = make_edge(e.u, e.v);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

}  // namespace spannerforge
