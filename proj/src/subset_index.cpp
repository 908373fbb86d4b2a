#include "spannerforge/subset_index.hpp"

#include <algorithm>

#include "spannerforge/errors.hpp"

namespace spannerforge {

std::uint64_t SubsetIndex::binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

SubsetIndex::SubsetIndex(int items, int arity) : items_(items), arity_(arity) {
    if (items < 0 || arity < 0) throw ParameterError("SubsetIndex: negative size");
    offset_.assign(1, 0);
    for (int k = 0; k <= arity; ++k) offset_.push_back(offset_.back() + binomial(items, k));
}

std::size_t SubsetIndex::rank(std::span<const int> members) const {
    const int k = static_cast<int>(members.size());
    if (k > arity_) throw ContractError("SubsetIndex::rank: set larger than the arity");
    std::size_t r = offset_[k];
    for (int i = 0; i < k; ++i) {
        if (members[i] < 0 || members[i] >= items_ || (i > 0 && members[i] <= members[i - 1]))
            throw ContractError("SubsetIndex::rank: members must be increasing item ids");
        r += binomial(members[i], i + 1);
    }
    return r;
}

std::vector<int> SubsetIndex::unrank(std::size_t id) const {
    if (id >= size()) throw ContractError("SubsetIndex::unrank: id out of range");
    int k = 0;
    while (id >= offset_[k + 1]) ++k;
    std::uint64_t r = id - offset_[k];
    std::vector<int> out(k);
    int c = items_ - 1;
    for (int i = k; i >= 1; --i) {
        while (binomial(c, i) > r) --c;
        out[i - 1] = c;
        r -= binomial(c, i);
        --c;
    }
    return out;
}

HostItems::HostItems(const BipartiteGraph& g) { build(g, nullptr); }

HostItems::HostItems(const BipartiteGraph& g, const std::vector<char>& keep_vertex) { build(g, &keep_vertex); }

void HostItems::build(const BipartiteGraph& g, const std::vector<char>* keep) {
    vertex_to_item_.assign(g.universe(), -1);
    edge_to_item_.assign(g.num_edges(), -1);
    for (Vertex v : g.vertices()) {
        if (keep && !(*keep)[v]) continue;
        vertex_to_item_[v] = size();
        item_vertex_.push_back(v);
        item_edge_.push_back(-1);
    }
    num_vertices_ = size();
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const Edge& ed = g.edges()[e];
        if (vertex_to_item_[ed.u] < 0 || vertex_to_item_[ed.v] < 0) continue;
        edge_to_item_[e] = size();
        item_vertex_.push_back(-1);
        item_edge_.push_back(static_cast<long>(e));
    }
}

int HostItems::vertex_item(Vertex v) const {
    if (v < 0 || v >= static_cast<int>(vertex_to_item_.size())) return -1;
    return vertex_to_item_[v];
}

int HostItems::edge_item(std::size_t host_edge) const {
    if (host_edge >= edge_to_item_.size()) return -1;
    return edge_to_item_[host_edge];
}

std::string HostItems::name(const BipartiteGraph& g, int item) const {
    if (is_vertex(item)) return "v" + std::to_string(vertex_of(item));
    const Edge& e = g.edges()[edge_of(item)];
    return "e" + std::to_string(e.u) + "_" + std::to_string(e.v);
}

}  // namespace spannerforge
