#ifndef ssbcc_generators_hpp
#define ssbcc_generators_hpp

#include <cstddef>
#include <cstdint>

#include "ssbcc/graph.hpp"

namespace ssbcc {

// Random spanning tree plus `extra_edges` distinct random chords, with the
// port order of every node shuffled. Pure function of the arguments.
// Throws GraphError(Infeasible) when the edge count exceeds n(n-1)/2.
Graph generate_random_connected(std::size_t node_count, std::size_t extra_edges, std::uint64_t seed);

// `clusters` cycles of `cluster_size` nodes each, joined into a random tree
// by clusters - 1 bridges between random members.
Graph generate_clustered(std::size_t clusters, std::size_t cluster_size, std::uint64_t seed);

// Same topology with every node's port order independently shuffled.
Graph shuffle_ports(const Graph& graph, std::uint64_t seed);

}

#endif /* ssbcc_generators_hpp */
