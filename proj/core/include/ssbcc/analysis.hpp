#ifndef ssbcc_analysis_hpp
#define ssbcc_analysis_hpp

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssbcc/graph.hpp"
#include "ssbcc/oracle.hpp"
#include "ssbcc/protocol.hpp"
#include "ssbcc/simulator.hpp"

namespace ssbcc {

struct DetectionResult {
    oracle::EdgeSet bridges;                 // (min, max) pairs
    oracle::NodeSet articulation_points;
    std::vector<PathValue> component_of;     // bcc label per node, indexed by id - 1

    oracle::EdgeSet tree_edges;              // parent links seen in the registers
    oracle::NodeSet bridge_endpoints;        // of degree >= 2

    // nodes grouped by label
    oracle::Partition partition() const;

    friend bool operator==(const DetectionResult&, const DetectionResult&) = default;
};

class NotLegitimateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reads bridges, articulation points and component labels off the
// registers, using only what each node sees of its own links: the paths
// and counts of itself and its neighbors.
DetectionResult detect_from_registers(const Graph& graph, std::span<const Register> registers);

// detect_from_registers on a configuration that must be legitimate;
// throws NotLegitimateError otherwise.
DetectionResult extract(const Network& network, const Configuration& config);

struct Certification {
    bool match = false;
    std::vector<std::string> mismatches;
};

// Compares against the brute-force oracles, naming each offending edge or
// node. Also fails when a bridge endpoint of degree >= 2 is missing from
// the articulation points.
Certification certify(const DetectionResult& result, const Graph& graph);

struct CertifiedRun {
    RunResult run;
    std::optional<DetectionResult> detection;  // only for a legitimate final configuration
    Certification certification;
};

CertifiedRun run_and_certify(const Network& network, Scheduler scheduler, Configuration init,
                             std::span<const FaultSpec> faults = {}, const RunOptions& options = {});

// Runs the whole pipeline under `shuffles` random port orderings. True iff
// every run stabilizes and all yield the same bridges, articulation points
// and partition.
bool alpha_independence(const Graph& graph, std::size_t shuffles, std::uint64_t seed);

}

#endif /* ssbcc_analysis_hpp */
