#include "ssbcc/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ssbcc::oracle {

Partition canonical(Partition blocks) {
    for (auto& block : blocks) {
        std::sort(block.begin(), block.end());
    }
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

namespace {

// component id per node (0 for removed nodes) and the number of components
std::pair<std::vector<std::size_t>, std::size_t> components(const Graph& graph, const NodeSet& removed_nodes,
                                                            const EdgeSet& removed_edges) {
    const std::size_t n = graph.node_count();
    std::vector<std::size_t> label(n, 0);
    std::size_t count = 0;
    for (NodeId start = 1; start <= n; ++start) {
        if (label[start - 1] != 0 || removed_nodes.count(start)) {
            continue;
        }
        ++count;
        std::vector<NodeId> stack{start};
        label[start - 1] = count;
        while (!stack.empty()) {
            NodeId node = stack.back();
            stack.pop_back();
            for (NodeId next : graph.neighbors(node)) {
                if (label[next - 1] != 0 || removed_nodes.count(next) ||
                    removed_edges.count(Edge::canonical(node, next))) {
                    continue;
                }
                label[next - 1] = count;
                stack.push_back(next);
            }
        }
    }
    return {label, count};
}

bool is_ancestor_or_self(const std::vector<PathValue>& paths, NodeId a, NodeId b) {
    return paths[a - 1].is_prefix_of(paths[b - 1]);
}

}

bool is_connected(const Graph& graph, const NodeSet& removed_nodes, const EdgeSet& removed_edges) {
    return components(graph, removed_nodes, removed_edges).second <= 1;
}

EdgeSet brute_bridges(const Graph& graph) {
    EdgeSet bridges;
    for (const Edge& edge : graph.edges()) {
        if (!is_connected(graph, {}, {edge})) {
            bridges.insert(edge);
        }
    }
    return bridges;
}

NodeSet brute_articulation_points(const Graph& graph) {
    NodeSet points;
    for (NodeId node = 1; node <= graph.node_count(); ++node) {
        if (!is_connected(graph, {node}, {})) {
            points.insert(node);
        }
    }
    return points;
}

Partition brute_bcc_partition(const Graph& graph) {
    auto [label, count] = components(graph, {}, brute_bridges(graph));
    Partition blocks(count);
    for (NodeId node = 1; node <= graph.node_count(); ++node) {
        blocks[label[node - 1] - 1].push_back(node);
    }
    return canonical(std::move(blocks));
}

std::vector<PathValue> first_dfs_paths(const Graph& graph) {
    const std::size_t n = graph.node_count();
    std::vector<PathValue> paths(n);
    std::vector<bool> visited(n, false);
    // (node, next port to try)
    std::vector<std::pair<NodeId, Port>> stack{{kRoot, 1}};
    paths[0] = PathValue::root();
    visited[0] = true;
    while (!stack.empty()) {
        auto& [node, port] = stack.back();
        if (port > graph.degree(node)) {
            stack.pop_back();
            continue;
        }
        Port taken = port++;
        NodeId next = graph.neighbor(node, taken);
        if (!visited[next - 1]) {
            visited[next - 1] = true;
            paths[next - 1] = paths[node - 1].extended(taken);
            stack.emplace_back(next, 1);
        }
    }
    return paths;
}

Tree tree_from_paths(const Graph& graph, const std::vector<PathValue>& paths) {
    const std::size_t n = graph.node_count();
    Tree tree;
    tree.parent.assign(n, 0);
    tree.children.assign(n, {});
    for (NodeId node = 1; node <= n; ++node) {
        for (Port port = 1; port <= graph.degree(node); ++port) {
            NodeId other = graph.neighbor(node, port);
            if (paths[other - 1] == paths[node - 1].extended(port)) {
                tree.parent[other - 1] = node;
                tree.children[node - 1].push_back(other);
            }
        }
    }
    return tree;
}

namespace {

// calls visit(descendant, ancestor) for every non-tree edge
template <class Visit>
void for_each_back_edge(const Graph& graph, const std::vector<PathValue>& paths, const Tree& tree, Visit visit) {
    for (const Edge& edge : graph.edges()) {
        if (tree.parent[edge.u - 1] == edge.v || tree.parent[edge.v - 1] == edge.u) {
            continue;
        }
        if (is_ancestor_or_self(paths, edge.u, edge.v)) {
            visit(edge.v, edge.u);
        } else {
            visit(edge.u, edge.v);
        }
    }
}

std::int64_t bypass_count(const Graph& graph, const std::vector<PathValue>& paths, const Tree& tree, NodeId v) {
    if (v == kRoot) {
        throw std::invalid_argument("the root has no parent link");
    }
    NodeId parent = tree.parent[v - 1];
    std::int64_t count = 0;
    for_each_back_edge(graph, paths, tree, [&](NodeId low, NodeId high) {
        if (is_ancestor_or_self(paths, v, low) && is_ancestor_or_self(paths, high, parent)) {
            ++count;
        }
    });
    return count;
}

}

std::int64_t bypass_count(const Graph& graph, const std::vector<PathValue>& paths, NodeId v) {
    return bypass_count(graph, paths, tree_from_paths(graph, paths), v);
}

std::int64_t incoming_split(const Graph& graph, const std::vector<PathValue>& paths, NodeId parent, NodeId child) {
    Tree tree = tree_from_paths(graph, paths);
    if (child < 1 || child > graph.node_count() || tree.parent[child - 1] != parent) {
        throw std::invalid_argument("node " + std::to_string(child) + " is not a child of " + std::to_string(parent));
    }
    std::int64_t count = 0;
    for_each_back_edge(graph, paths, tree, [&](NodeId low, NodeId high) {
        if (high == parent && is_ancestor_or_self(paths, child, low)) {
            ++count;
        }
    });
    return count;
}

std::int64_t incoming_total(const Graph& graph, const std::vector<PathValue>& paths, NodeId v) {
    Tree tree = tree_from_paths(graph, paths);
    std::int64_t count = 0;
    for_each_back_edge(graph, paths, tree, [&](NodeId, NodeId high) { count += high == v; });
    return count;
}

std::int64_t outgoing_total(const Graph& graph, const std::vector<PathValue>& paths, NodeId v) {
    Tree tree = tree_from_paths(graph, paths);
    std::int64_t count = 0;
    for_each_back_edge(graph, paths, tree, [&](NodeId low, NodeId) { count += low == v; });
    return count;
}

std::vector<Register> GroundTruth::registers() const {
    std::vector<Register> regs(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        regs[i] = {paths[i], counts[i], bcc_labels[i]};
    }
    return regs;
}

Partition GroundTruth::partition() const {
    std::map<NodeId, std::vector<NodeId>> blocks;
    for (std::size_t i = 0; i < representative.size(); ++i) {
        blocks[representative[i]].push_back(static_cast<NodeId>(i + 1));
    }
    Partition out;
    for (auto& [rep, members] : blocks) {
        out.push_back(std::move(members));
    }
    return canonical(std::move(out));
}

GroundTruth ground_truth(const Graph& graph) {
    const std::size_t n = graph.node_count();
    GroundTruth truth;
    truth.paths = first_dfs_paths(graph);
    truth.tree = tree_from_paths(graph, truth.paths);
    truth.counts.assign(n, 0);
    for (NodeId v = 2; v <= n; ++v) {
        truth.counts[v - 1] = bypass_count(graph, truth.paths, truth.tree, v);
    }

    // parents precede children in path order
    std::vector<NodeId> order(n);
    for (NodeId v = 1; v <= n; ++v) {
        order[v - 1] = v;
    }
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return truth.paths[a - 1].size() < truth.paths[b - 1].size();
    });
    truth.representative.assign(n, kRoot);
    truth.bcc_labels.assign(n, PathValue::root());
    for (NodeId v : order) {
        if (v == kRoot || truth.counts[v - 1] == 0) {
            truth.representative[v - 1] = v;
        } else {
            truth.representative[v - 1] = truth.representative[truth.tree.parent[v - 1] - 1];
        }
        truth.bcc_labels[v - 1] = truth.paths[truth.representative[v - 1] - 1];
    }

    for (NodeId v = 2; v <= n; ++v) {
        NodeId parent = truth.tree.parent[v - 1];
        if (truth.counts[v - 1] == 0) {
            truth.bridges.insert(Edge::canonical(parent, v));
        }
        if (parent != kRoot && truth.counts[v - 1] == incoming_split(graph, truth.paths, parent, v)) {
            truth.articulation_points.insert(parent);
        }
    }
    if (truth.tree.children[0].size() >= 2) {
        truth.articulation_points.insert(kRoot);
    }
    return truth;
}

}
