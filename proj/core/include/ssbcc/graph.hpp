#ifndef ssbcc_graph_hpp
#define ssbcc_graph_hpp

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssbcc {

// 1-based node ids; node 1 is the root
using NodeId = std::uint32_t;
// 1-based edge index in a node's local port ordering
using Port = std::uint32_t;

inline constexpr NodeId kRoot = 1;

// undirected edge, always stored with u < v
struct Edge {
    NodeId u = 0;
    NodeId v = 0;

    static Edge canonical(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
public:
    enum class Kind {
        Syntax,
        NodeOutOfRange,
        SelfLoop,
        DuplicateEdge,
        BadPorts,
        Disconnected,
        Infeasible,
    };

    GraphError(Kind kind, const std::string& what, std::size_t line = 0);

    Kind kind() const { return kind_; }
    // 0 when the error does not come from a parsed document
    std::size_t line() const { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

const char* to_string(GraphError::Kind kind);

/*
 * Connected simple undirected graph with a port numbering at every node.
 * The neighbors of node i, listed in port order, define the bijection
 * alpha_i from incident edges to {1..degree(i)}.
 */
class Graph {
public:
    Graph() = default;

    // Validates the topology. `port_order` optionally fixes the neighbor
    // order of some nodes; unlisted nodes take edge-appearance order.
    static Graph build(std::size_t node_count, std::span<const Edge> edges,
                       const std::map<NodeId, std::vector<NodeId>>& port_order = {});

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    // sorted by (u, v)
    const std::vector<Edge>& edges() const { return edges_; }

    std::size_t degree(NodeId node) const { return adjacency_.at(node - 1).size(); }
    std::size_t max_degree() const;

    // neighbors in port order: neighbors(i)[p - 1] is the node behind port p
    std::span<const NodeId> neighbors(NodeId node) const { return adjacency_.at(node - 1); }
    NodeId neighbor(NodeId node, Port port) const { return adjacency_.at(node - 1).at(port - 1); }

    // alpha_node(other); throws std::out_of_range when not adjacent
    Port port_to(NodeId node, NodeId other) const;
    // alpha_{neighbor(node, port)}(node)
    Port back_port(NodeId node, Port port) const { return back_ports_.at(node - 1).at(port - 1); }

    bool adjacent(NodeId a, NodeId b) const;

    // eccentricity maximum over all nodes (0 for a single node)
    std::size_t diameter() const;

    // Same topology, neighbor order of every node replaced.
    Graph with_port_order(const std::map<NodeId, std::vector<NodeId>>& port_order) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<std::vector<Port>> back_ports_;
};

// Checks every Graph invariant; returns an empty string when valid.
std::string validate(const Graph& graph);

// 16-node fixture: five bridge-connected components joined by four bridges
Graph figure1();

}

#endif /* ssbcc_graph_hpp */
