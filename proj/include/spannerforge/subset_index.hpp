#ifndef SPANNERFORGE_SUBSET_INDEX_HPP
#define SPANNERFORGE_SUBSET_INDEX_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spannerforge/graph.hpp"

namespace spannerforge {

// Dense ids for all subsets of {0..M-1} of size <= q. Subsets of equal size are
// numbered in colexicographic order (combinatorial number system); smaller sizes
// come first, so the empty set has id 0.
class SubsetIndex {
public:
    SubsetIndex() = default;
    SubsetIndex(int items, int arity);

    int items() const { return items_; }
    int arity() const { return arity_; }
    std::size_t size() const { return offset_.back(); }
    // Number of subsets of size exactly k.
    std::size_t count(int k) const { return offset_[k + 1] - offset_[k]; }
    std::size_t first_of_size(int k) const { return offset_[k]; }

    // members must be strictly increasing; throws ContractError when |members| > q.
    std::size_t rank(std::span<const int> members) const;
    std::vector<int> unrank(std::size_t id) const;

    static std::uint64_t binomial(int n, int k);

private:
    int items_ = 0;
    int arity_ = 0;
    std::vector<std::size_t> offset_{0};
};

// The item universe of a bipartite host: its vertices (ascending), then its edges
// (host order). A predicate can drop items; dropped items have no index.
class HostItems {
public:
    HostItems() = default;
    explicit HostItems(const BipartiteGraph& g);
    HostItems(const BipartiteGraph& g, const std::vector<char>& keep_vertex);

    int size() const { return static_cast<int>(item_vertex_.size()); }
    int vertex_item(Vertex v) const;
    int edge_item(std::size_t host_edge) const;
    bool is_vertex(int item) const { return item_vertex_[item] >= 0; }
    Vertex vertex_of(int item) const { return item_vertex_[item]; }
    std::size_t edge_of(int item) const { return static_cast<std::size_t>(item_edge_[item]); }
    int num_vertices() const { return num_vertices_; }
    std::string name(const BipartiteGraph& g, int item) const;

private:
    void build(const BipartiteGraph& g, const std::vector<char>* keep);

    std::vector<int> vertex_to_item_;
    std::vector<int> edge_to_item_;
    std::vector<Vertex> item_vertex_;
    std::vector<long> item_edge_;
    int num_vertices_ = 0;
};

}  // namespace spannerforge

#endif
