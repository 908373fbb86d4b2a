#include "spannerforge/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "spannerforge/errors.hpp"

namespace spannerforge {

namespace {

// Next non-blank, non-comment line; false at end of input.
bool next_line(std::istream& in, std::string& line, int& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        return true;
    }
    return false;
}

long long parse_two(const std::string& line, int lineno, long long& second) {
    std::istringstream ss(line);
    long long a, b;
    std::string extra;
    if (!(ss >> a >> b) || (ss >> extra))
        throw InputError("line " + std::to_string(lineno) + ": expected two integers, got '" + line + "'");
    second = b;
    return a;
}

}  // namespace

Graph read_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    if (!next_line(in, line, lineno)) throw InputError("empty graph file: missing 'n m' header");
    long long m;
    const long long n = parse_two(line, lineno, m);
    if (n < 0 || m < 0 || n > 100000000)
        throw InputError("line " + std::to_string(lineno) + ": invalid header '" + line + "'");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!next_line(in, line, lineno))
            throw InputError("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
        long long v;
        const long long u = parse_two(line, lineno, v);
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw InputError("line " + std::to_string(lineno) + ": endpoint outside [0," +
                             std::to_string(n) + ")");
        if (u == v) throw InputError("line " + std::to_string(lineno) + ": self-loop");
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    if (next_line(in, line, lineno))
        throw InputError("line " + std::to_string(lineno) + ": trailing content after " +
                         std::to_string(m) + " edges");
    try {
        return Graph(static_cast<int>(n), std::move(edges));
    } catch (const InputError& e) {
        throw InputError(std::string("graph file: ") + e.what());
    }
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path + "'");
    try {
        return read_graph(in);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_edge_list(std::ostream& out, int n, const std::vector<Edge>& edges) {
    out << n << ' ' << edges.size() << '\n';
    for (const Edge& e : edges) out << e.u << ' ' << e.v << '\n';
}

void write_graph(std::ostream& out, const Graph& g) {
    write_edge_list(out, g.num_vertices(), g.edges());
}

void write_graph_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    write_graph(out, g);
    if (!out) throw InputError("write failed for '" + path + "'");
}

}  // namespace spannerforge
