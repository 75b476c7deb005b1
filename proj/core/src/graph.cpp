#include "ssbcc/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace ssbcc {

GraphError::GraphError(Kind kind, const std::string& what, std::size_t line)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
      kind_(kind),
      line_(line) {}

const char* to_string(GraphError::Kind kind) {
    switch (kind) {
    case GraphError::Kind::Syntax: return "syntax";
    case GraphError::Kind::NodeOutOfRange: return "node-out-of-range";
    case GraphError::Kind::SelfLoop: return "self-loop";
    case GraphError::Kind::DuplicateEdge: return "duplicate-edge";
    case GraphError::Kind::BadPorts: return "bad-ports";
    case GraphError::Kind::Disconnected: return "disconnected";
    case GraphError::Kind::Infeasible: return "infeasible";
    }
    return "unknown";
}

namespace {

std::vector<std::size_t> bfs_distances(const std::vector<std::vector<NodeId>>& adjacency, NodeId source) {
    std::vector<std::size_t> dist(adjacency.size(), SIZE_MAX);
    std::queue<NodeId> frontier;
    dist[source - 1] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        NodeId node = frontier.front();
        frontier.pop();
        for (NodeId next : adjacency[node - 1]) {
            if (dist[next - 1] == SIZE_MAX) {
                dist[next - 1] = dist[node - 1] + 1;
                frontier.push(next);
            }
        }
    }
    return dist;
}

}

Graph Graph::build(std::size_t node_count, std::span<const Edge> edges,
                   const std::map<NodeId, std::vector<NodeId>>& port_order) {
    using Kind = GraphError::Kind;
    if (node_count == 0) {
        throw GraphError(Kind::NodeOutOfRange, "graph needs at least one node");
    }

    Graph graph;
    graph.adjacency_.resize(node_count);
    std::set<Edge> seen;
    for (const Edge& raw : edges) {
        if (raw.u < 1 || raw.u > node_count || raw.v < 1 || raw.v > node_count) {
            throw GraphError(Kind::NodeOutOfRange, "edge (" + std::to_string(raw.u) + "," +
                             std::to_string(raw.v) + ") references a node outside [1," +
                             std::to_string(node_count) + "]");
        }
        if (raw.u == raw.v) {
            throw GraphError(Kind::SelfLoop, "self-loop at node " + std::to_string(raw.u));
        }
        Edge edge = Edge::canonical(raw.u, raw.v);
        if (!seen.insert(edge).second) {
            throw GraphError(Kind::DuplicateEdge, "duplicate edge (" + std::to_string(edge.u) + "," +
                             std::to_string(edge.v) + ")");
        }
        graph.adjacency_[raw.u - 1].push_back(raw.v);
        graph.adjacency_[raw.v - 1].push_back(raw.u);
    }
    graph.edges_.assign(seen.begin(), seen.end());

    for (const auto& [node, order] : port_order) {
        if (node < 1 || node > node_count) {
            throw GraphError(Kind::NodeOutOfRange, "port order for unknown node " + std::to_string(node));
        }
        auto expected = graph.adjacency_[node - 1];
        auto given = order;
        std::sort(expected.begin(), expected.end());
        std::sort(given.begin(), given.end());
        if (expected != given) {
            throw GraphError(Kind::BadPorts, "port order of node " + std::to_string(node) +
                             " is not a bijection onto its neighbors");
        }
        graph.adjacency_[node - 1] = order;
    }

    auto dist = bfs_distances(graph.adjacency_, kRoot);
    for (std::size_t i = 0; i < node_count; ++i) {
        if (dist[i] == SIZE_MAX) {
            throw GraphError(Kind::Disconnected, "node " + std::to_string(i + 1) + " is unreachable from the root");
        }
    }

    graph.back_ports_.resize(node_count);
    for (NodeId node = 1; node <= node_count; ++node) {
        for (NodeId other : graph.adjacency_[node - 1]) {
            graph.back_ports_[node - 1].push_back(graph.port_to(other, node));
        }
    }
    return graph;
}

std::size_t Graph::max_degree() const {
    std::size_t best = 0;
    for (const auto& list : adjacency_) {
        best = std::max(best, list.size());
    }
    return best;
}

Port Graph::port_to(NodeId node, NodeId other) const {
    const auto& list = adjacency_.at(node - 1);
    auto it = std::find(list.begin(), list.end(), other);
    if (it == list.end()) {
        throw std::out_of_range("node " + std::to_string(other) + " is not adjacent to " + std::to_string(node));
    }
    return static_cast<Port>(it - list.begin()) + 1;
}

bool Graph::adjacent(NodeId a, NodeId b) const {
    if (a < 1 || a > node_count()) {
        return false;
    }
    const auto& list = adjacency_[a - 1];
    return std::find(list.begin(), list.end(), b) != list.end();
}

std::size_t Graph::diameter() const {
    std::size_t best = 0;
    for (NodeId node = 1; node <= node_count(); ++node) {
        for (std::size_t d : bfs_distances(adjacency_, node)) {
            best = std::max(best, d);
        }
    }
    return best;
}

Graph Graph::with_port_order(const std::map<NodeId, std::vector<NodeId>>& port_order) const {
    return build(node_count(), edges_, port_order);
}

std::string validate(const Graph& graph) {
    const std::size_t n = graph.node_count();
    if (n == 0) {
        return "empty graph";
    }
    std::size_t degree_sum = 0;
    for (NodeId node = 1; node <= n; ++node) {
        auto list = graph.neighbors(node);
        degree_sum += list.size();
        std::set<NodeId> distinct(list.begin(), list.end());
        if (distinct.size() != list.size()) {
            return "node " + std::to_string(node) + " has a repeated neighbor";
        }
        for (Port port = 1; port <= list.size(); ++port) {
            NodeId other = list[port - 1];
            if (other == node || other < 1 || other > n) {
                return "node " + std::to_string(node) + " has an invalid neighbor";
            }
            if (!graph.adjacent(other, node)) {
                return "asymmetric adjacency between " + std::to_string(node) + " and " + std::to_string(other);
            }
            if (graph.neighbor(other, graph.back_port(node, port)) != node) {
                return "back port mismatch at node " + std::to_string(node);
            }
        }
    }
    if (degree_sum != 2 * graph.edge_count()) {
        return "edge list disagrees with adjacency";
    }
    std::vector<bool> seen(n, false);
    std::vector<NodeId> stack{kRoot};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        NodeId node = stack.back();
        stack.pop_back();
        for (NodeId next : graph.neighbors(node)) {
            if (!seen[next - 1]) {
                seen[next - 1] = true;
                ++reached;
                stack.push_back(next);
            }
        }
    }
    if (reached != n) {
        return "graph is disconnected";
    }
    return {};
}

Graph figure1() {
    static const std::vector<Edge> edges = {
        {1, 2}, {2, 3}, {3, 1},
        {4, 5}, {5, 10}, {10, 4},
        {6, 7}, {7, 8}, {8, 9}, {9, 6},
        {11, 12}, {12, 13}, {13, 11},
        {14, 15}, {15, 16}, {16, 14},
        {1, 4}, {5, 6}, {10, 11}, {11, 14},
    };
    return Graph::build(16, edges);
}

}
