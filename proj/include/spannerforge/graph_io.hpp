#ifndef SPANNERFORGE_GRAPH_IO_HPP
#define SPANNERFORGE_GRAPH_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "spannerforge/graph.hpp"

namespace spannerforge {

// Text format: first line "n m", then m lines "u v" with 0-based ids.
// Blank lines and lines starting with '#' are ignored. Errors carry line numbers.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

// Same line format for an edge list over an existing graph (spanner output).
void write_edge_list(std::ostream& out, int n, const std::vector<Edge>& edges);

}  // namespace spannerforge

#endif
