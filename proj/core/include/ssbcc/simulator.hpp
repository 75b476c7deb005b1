#ifndef ssbcc_simulator_hpp
#define ssbcc_simulator_hpp

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ssbcc/graph.hpp"
#include "ssbcc/oracle.hpp"
#include "ssbcc/protocol.hpp"
#include "ssbcc/scheduler.hpp"

namespace ssbcc {

// One state per processor, indexed by node id - 1.
struct Configuration {
    std::vector<ProcessorState> states;

    const ProcessorState& at(NodeId node) const { return states.at(node - 1); }
    ProcessorState& at(NodeId node) { return states.at(node - 1); }
    std::vector<Register> registers() const;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

/*
 * A graph compiled for simulation: per-node programs and port views, the
 * type bounds, and the oracle ground truth used to judge legitimacy.
 * Immutable after construction.
 */
class Network {
public:
    explicit Network(Graph graph);

    const Graph& graph() const { return graph_; }
    const Bounds& bounds() const { return bounds_; }
    const Program& program(NodeId node) const { return programs_.at(node - 1); }
    const NodeView& view(NodeId node) const { return views_.at(node - 1); }
    const oracle::GroundTruth& truth() const { return truth_; }

    // Activates `node` once; only states[node - 1] can change.
    StepOutcome step(Configuration& config, NodeId node) const;

    // every register equals the ground truth
    bool is_legitimate(const Configuration& config) const;

    // Ground-truth registers with locals as a completed loop leaves them and
    // every pc at 0.
    Configuration legitimate_configuration() const;

private:
    Graph graph_;
    Bounds bounds_;
    std::vector<Program> programs_;
    std::vector<NodeView> views_;
    oracle::GroundTruth truth_;
};

// Every register field, local variable and pc drawn independently within
// the type bounds. Deterministic per seed.
Configuration init_arbitrary(const Network& network, std::uint64_t seed);

enum class FaultField : std::uint8_t { Path, Count, Bcc, ProgramCounter, Locals };

const char* to_string(FaultField field);

struct FaultTarget {
    NodeId node = 0;
    FaultField field = FaultField::Path;

    friend bool operator==(const FaultTarget&, const FaultTarget&) = default;
};

using FaultValue = std::variant<PathValue, std::int64_t>;

struct FaultSpec {
    enum class Trigger { AtStep, PostStabilization };

    Trigger trigger = Trigger::PostStabilization;
    std::uint64_t step = 0;  // AtStep: fires before this (0-based) step

    std::vector<FaultTarget> targets;
    std::size_t random_fields = 0;  // plus this many random register fields
    bool all_registers = false;     // every register field of every node
    // explicit value for every target; random within bounds otherwise
    std::optional<FaultValue> value;

    std::string describe() const;
};

// Overwrites the targeted fields. Throws std::out_of_range for a node
// outside the graph or an explicit value that breaks the type bounds, and
// std::invalid_argument for a value of the wrong kind.
Configuration inject_fault(const Network& network, Configuration config, const FaultSpec& fault, std::uint64_t seed);

// 10 * d * n * Delta, each factor at least 1
std::size_t default_max_rounds(const Graph& graph);

struct RunOptions {
    std::size_t max_rounds = 0;       // per convergence phase; 0 = default_max_rounds
    std::size_t confirm_rounds = 2;   // W
    std::size_t closure_rounds = 0;   // observed after the final stabilization
    bool keep_round_snapshots = false;
    bool log_steps = false;
    std::uint64_t fault_seed = 0;
};

struct FaultEvent {
    std::string description;
    std::uint64_t step = 0;
    std::size_t round = 0;
    bool recovered = false;
    std::size_t recovery_rounds = 0;
    // re-stabilized registers equal the ones held before the fault
    bool registers_restored = false;
};

struct RunReport {
    bool stabilized = false;
    std::size_t stabilization_round = 0;  // first round of the confirmed legitimate suffix
    std::uint64_t total_steps = 0;
    std::size_t rounds = 0;
    std::size_t max_rounds = 0;
    std::vector<FaultEvent> fault_events;
    std::size_t closure_rounds = 0;
    std::uint64_t closure_changes = 0;    // register-changing writes during closure
    std::size_t max_register_bits = 0;    // over every configuration reached
    std::size_t max_path_length = 0;
    std::size_t register_bit_budget = 0;
    bool oracle_match = false;            // final registers equal the ground truth
};

struct Trace {
    std::vector<std::vector<Register>> round_snapshots;  // after each round
    std::vector<NodeId> schedule;                         // every activation
};

struct RunResult {
    RunReport report;
    Configuration final_config;
    Trace trace;
};

// Runs the daemon from `init`. Stabilization is declared once the
// registers equal the ground truth and stay unchanged for at least
// `confirm_rounds` rounds during which every processor also completed one
// full loop from its beginning. Post-stabilization faults then fire one at
// a time, each followed by a new convergence phase.
RunResult run(const Network& network, Scheduler scheduler, Configuration init, std::span<const FaultSpec> faults,
              const RunOptions& options = {});

}

#endif /* ssbcc_simulator_hpp */
