#ifndef ssbcc_graph_io_hpp
#define ssbcc_graph_io_hpp

#include <filesystem>
#include <string>
#include <string_view>

#include "ssbcc/graph.hpp"

namespace ssbcc {

// Edge-list document:
//
//   n m
//   u v            (m lines, 1-based)
//   ports i: j1 j2 ... jd     (optional; neighbors of i in port order)
//
// '#' starts a comment. Throws GraphError carrying the offending line.
Graph parse_graph(std::string_view text);

Graph load_graph(const std::filesystem::path& path);

// Canonical form: edges sorted by (u, v) followed by one ports line per
// node of positive degree, so that parse_graph(render_graph(g)) == g.
std::string render_graph(const Graph& graph);

}

#endif /* ssbcc_graph_io_hpp */
