#include "ssbcc/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace ssbcc {

namespace {

// std::uniform_int_distribution is implementation-defined; this keeps
// generated instances identical across standard libraries.
std::size_t pick(std::mt19937_64& rng, std::size_t bound) {
    return static_cast<std::size_t>(rng() % bound);
}

template <class T>
void shuffle_in_place(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::swap(items[i - 1], items[pick(rng, i)]);
    }
}

std::map<NodeId, std::vector<NodeId>> shuffled_order(const Graph& graph, std::mt19937_64& rng) {
    std::map<NodeId, std::vector<NodeId>> order;
    for (NodeId node = 1; node <= graph.node_count(); ++node) {
        auto list = graph.neighbors(node);
        std::vector<NodeId> ports(list.begin(), list.end());
        shuffle_in_place(ports, rng);
        order.emplace(node, std::move(ports));
    }
    return order;
}

}

Graph generate_random_connected(std::size_t node_count, std::size_t extra_edges, std::uint64_t seed) {
    if (node_count == 0) {
        throw GraphError(GraphError::Kind::Infeasible, "node count must be positive");
    }
    const std::size_t max_edges = node_count * (node_count - 1) / 2;
    if (node_count - 1 + extra_edges > max_edges) {
        throw GraphError(GraphError::Kind::Infeasible,
                         std::to_string(node_count - 1 + extra_edges) + " edges do not fit in a simple graph on " +
                         std::to_string(node_count) + " nodes");
    }

    std::mt19937_64 rng(seed);
    std::vector<NodeId> order(node_count);
    std::iota(order.begin(), order.end(), NodeId{1});
    shuffle_in_place(order, rng);

    std::vector<Edge> edges;
    std::set<Edge> present;
    for (std::size_t i = 1; i < node_count; ++i) {
        Edge edge = Edge::canonical(order[i], order[pick(rng, i)]);
        edges.push_back(edge);
        present.insert(edge);
    }

    std::vector<Edge> chords;
    for (NodeId u = 1; u <= node_count; ++u) {
        for (NodeId v = u + 1; v <= node_count; ++v) {
            if (!present.count({u, v})) {
                chords.push_back({u, v});
            }
        }
    }
    shuffle_in_place(chords, rng);
    edges.insert(edges.end(), chords.begin(), chords.begin() + static_cast<std::ptrdiff_t>(extra_edges));

    Graph plain = Graph::build(node_count, edges);
    return plain.with_port_order(shuffled_order(plain, rng));
}

Graph generate_clustered(std::size_t clusters, std::size_t cluster_size, std::uint64_t seed) {
    if (clusters < 1 || cluster_size < 3) {
        throw GraphError(GraphError::Kind::Infeasible, "clustered graphs need k >= 1 and cluster size >= 3");
    }
    std::mt19937_64 rng(seed);
    auto member = [&](std::size_t cluster, std::size_t index) {
        return static_cast<NodeId>(cluster * cluster_size + index + 1);
    };

    std::vector<Edge> edges;
    for (std::size_t c = 0; c < clusters; ++c) {
        for (std::size_t i = 0; i < cluster_size; ++i) {
            edges.push_back({member(c, i), member(c, (i + 1) % cluster_size)});
        }
    }
    for (std::size_t c = 1; c < clusters; ++c) {
        std::size_t other = pick(rng, c);
        edges.push_back({member(other, pick(rng, cluster_size)), member(c, pick(rng, cluster_size))});
    }

    Graph plain = Graph::build(clusters * cluster_size, edges);
    return plain.with_port_order(shuffled_order(plain, rng));
}

Graph shuffle_ports(const Graph& graph, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return graph.with_port_order(shuffled_order(graph, rng));
}

}
