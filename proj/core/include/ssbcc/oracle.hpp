#ifndef ssbcc_oracle_hpp
#define ssbcc_oracle_hpp

#include <cstdint>
#include <set>
#include <vector>

#include "ssbcc/graph.hpp"
#include "ssbcc/path_value.hpp"
#include "ssbcc/protocol.hpp"

// Centralized ground truth. Nothing here shares code with the protocol's
// step machine; the brute_* functions do not even use a DFS tree.
namespace ssbcc::oracle {

using EdgeSet = std::set<Edge>;
using NodeSet = std::set<NodeId>;
// each block sorted, blocks sorted by their smallest member
using Partition = std::vector<std::vector<NodeId>>;

Partition canonical(Partition blocks);

// True iff the nodes that survive the removals form one connected component.
bool is_connected(const Graph& graph, const NodeSet& removed_nodes = {}, const EdgeSet& removed_edges = {});

EdgeSet brute_bridges(const Graph& graph);
NodeSet brute_articulation_points(const Graph& graph);
Partition brute_bcc_partition(const Graph& graph);

// Paths of the DFS from the root that always descends through the smallest
// unused port. Indexed by node id - 1.
std::vector<PathValue> first_dfs_paths(const Graph& graph);

struct Tree {
    std::vector<NodeId> parent;                 // 0 for the root
    std::vector<std::vector<NodeId>> children;  // in port order of the parent
};

// Recovers parent/child links from a consistent set of root paths.
Tree tree_from_paths(const Graph& graph, const std::vector<PathValue>& paths);

// Number of non-tree edges from v's subtree (v included) to a proper
// ancestor of v. Throws std::invalid_argument for the root.
std::int64_t bypass_count(const Graph& graph, const std::vector<PathValue>& paths, NodeId v);

// Number of non-tree edges (l, parent) with l in child's subtree. Throws
// std::invalid_argument when child is not a child of parent.
std::int64_t incoming_split(const Graph& graph, const std::vector<PathValue>& paths, NodeId parent, NodeId child);

// in_v and out_v: non-tree edges at v leading down and up the tree.
std::int64_t incoming_total(const Graph& graph, const std::vector<PathValue>& paths, NodeId v);
std::int64_t outgoing_total(const Graph& graph, const std::vector<PathValue>& paths, NodeId v);

struct GroundTruth {
    std::vector<PathValue> paths;
    Tree tree;
    std::vector<std::int64_t> counts;      // 0 at the root
    std::vector<NodeId> representative;
    std::vector<PathValue> bcc_labels;
    EdgeSet bridges;
    NodeSet articulation_points;

    // register contents of a legitimate configuration
    std::vector<Register> registers() const;
    Partition partition() const;
};

GroundTruth ground_truth(const Graph& graph);

}

#endif /* ssbcc_oracle_hpp */
