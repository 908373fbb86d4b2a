#include <gtest/gtest.h>

#include <sstream>

#include "spannerforge/errors.hpp"
#include "spannerforge/graph.hpp"
#include "spannerforge/graph_io.hpp"
#include "support/graphs.hpp"

using namespace spannerforge;
using namespace spannerforge::testing;

TEST(Graph, RejectsSelfLoopsDuplicatesAndRange) {
    EXPECT_THROW(Graph(3, {{1, 1}}), InputError);
    EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), InputError);
    EXPECT_THROW(Graph(3, {{0, 3}}), InputError);
}

TEST(Graph, AdjacencyAndMaxDegree) {
    Graph g = star(3);
    EXPECT_EQ(g.max_degree(), 3);
    EXPECT_EQ(g.degree(1), 1);
    EXPECT_TRUE(g.has_edge(2, 0));
    EXPECT_FALSE(g.has_edge(1, 2));
    EXPECT_THROW(g.neighbors(9), InputError);
}

TEST(Neighborhood, CliqueNeighborhoodIsClique) {
    Graph k4 = complete(4);
    LocalGraph g = neighborhood_subgraph(k4, k4.edges(), 0);
    EXPECT_EQ(g.labels, (std::vector<Vertex>{1, 2, 3}));
    EXPECT_EQ(g.graph.num_edges(), 3u);
}

TEST(Neighborhood, StarCenterSeesIsolatedLeaves) {
    Graph s = star(3);
    LocalGraph g = neighborhood_subgraph(s, s.edges(), 0);
    EXPECT_EQ(g.graph.num_vertices(), 3);
    EXPECT_EQ(g.graph.num_edges(), 0u);
}

TEST(Neighborhood, FiveCycle) {
    Graph c = cycle(5);
    for (Vertex u = 0; u < 5; ++u) {
        LocalGraph g = neighborhood_subgraph(c, c.edges(), u);
        EXPECT_EQ(g.graph.num_vertices(), 2);
        EXPECT_EQ(g.graph.num_edges(), 0u);
    }
}

TEST(Neighborhood, OnlyDemandEdgesAndUnknownVertex) {
    Graph k4 = complete(4);
    LocalGraph g = neighborhood_subgraph(k4, {{1, 2}}, 0);
    ASSERT_EQ(g.graph.num_edges(), 1u);
    EXPECT_EQ(g.labels[g.graph.edges()[0].u], 1);
    EXPECT_EQ(g.labels[g.graph.edges()[0].v], 2);
    EXPECT_THROW(neighborhood_subgraph(k4, k4.edges(), 7), InputError);
}

TEST(DoubleCover, SingleEdge) {
    BipartiteGraph b = double_cover(Graph(2, {{0, 1}}));
    EXPECT_EQ(b.num_vertices(), 4);
    ASSERT_EQ(b.num_edges(), 2u);
    EXPECT_TRUE(b.edge_index(cover_id(0, 0), cover_id(1, 1)).has_value());
    EXPECT_TRUE(b.edge_index(cover_id(0, 1), cover_id(1, 0)).has_value());
}

TEST(DoubleCover, TriangleBecomesSixCycle) {
    BipartiteGraph b = double_cover(complete(3));
    EXPECT_EQ(b.num_vertices(), 6);
    EXPECT_EQ(b.num_edges(), 6u);
    for (Vertex v : b.vertices()) EXPECT_EQ(b.degree(v), 2);
    // Connected: walk from 0.
    std::vector<char> seen(6, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : b.neighbors(v))
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    EXPECT_EQ(count, 6);
}

TEST(DoubleCover, SizesOnRandomGraphs) {
    for (int seed = 0; seed < 30; ++seed) {
        Graph g = random_graph(2 + seed % 9, 0.4, seed);
        BipartiteGraph b = double_cover(g);
        EXPECT_EQ(b.num_vertices(), 2 * g.num_vertices());
        EXPECT_EQ(b.num_edges(), 2 * g.num_edges());
    }
    BipartiteGraph empty = double_cover(Graph(3));
    EXPECT_EQ(empty.num_vertices(), 6);
    EXPECT_EQ(empty.num_edges(), 0u);
}

TEST(TwoSpanner, FourCycleSpansK4) {
    Graph k4 = complete(4);
    SpannerCheck c = is_two_spanner(k4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, k4.edges());
    EXPECT_TRUE(c.ok);
    EXPECT_TRUE(c.unspanned.empty());
}

TEST(TwoSpanner, MatchingFailsOnK4) {
    Graph k4 = complete(4);
    SpannerCheck c = is_two_spanner(k4, {{0, 1}, {2, 3}}, k4.edges());
    EXPECT_FALSE(c.ok);
    EXPECT_NE(std::find(c.unspanned.begin(), c.unspanned.end(), Edge{0, 2}), c.unspanned.end());
}

TEST(TwoSpanner, TrianglePath) {
    Graph k3 = complete(3);
    EXPECT_TRUE(is_two_spanner(k3, {{0, 1}, {1, 2}}, k3.edges()).ok);
}

TEST(TwoSpanner, WholeGraphAlwaysSpans) {
    for (int seed = 0; seed < 50; ++seed) {
        Graph g = random_graph(1 + seed % 12, 0.5, seed);
        EXPECT_TRUE(is_two_spanner(g, g.edges(), g.edges()).ok);
    }
}

TEST(TwoSpanner, RejectsForeignEdges) {
    Graph p = path(3);
    EXPECT_THROW(is_two_spanner(p, {{0, 2}}, p.edges()), InputError);
}

TEST(SpannerCost, Examples) {
    EXPECT_EQ(spanner_cost({{0, 1}, {1, 2}, {2, 3}, {0, 3}}), 2);
    EXPECT_EQ(spanner_cost({}), 0);
    EXPECT_EQ(spanner_cost(star(3).edges()), 3);
}

TEST(GraphIo, RoundTrip) {
    Graph g = random_graph(9, 0.5, 3);
    std::stringstream ss;
    write_graph(ss, g);
    Graph back = read_graph(ss);
    EXPECT_EQ(back.num_vertices(), g.num_vertices());
    EXPECT_EQ(back.edges(), g.edges());
    std::stringstream again;
    write_graph(again, back);
    std::stringstream first;
    write_graph(first, g);
    EXPECT_EQ(again.str(), first.str());
}

TEST(GraphIo, DiagnosticsCarryLineNumbers) {
    std::stringstream bad("3 2\n0 1\n1 x\n");
    try {
        read_graph(bad);
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    std::stringstream loop("2 1\n1 1\n");
    EXPECT_THROW(read_graph(loop), InputError);
    std::stringstream short_file("3 2\n0 1\n");
    EXPECT_THROW(read_graph(short_file), InputError);
}
