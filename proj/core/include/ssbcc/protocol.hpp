#ifndef ssbcc_protocol_hpp
#define ssbcc_protocol_hpp

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ssbcc/graph.hpp"
#include "ssbcc/path_value.hpp"

namespace ssbcc {

// The fields one processor exposes to its neighbors.
struct Register {
    PathValue path;
    std::int64_t count = 0;
    PathValue bcc;

    friend bool operator==(const Register&, const Register&) = default;
};

// Type bounds of every register and local variable.
struct Bounds {
    std::size_t path_bound = 1;    // N: maximal path length in symbols
    std::int64_t count_bound = 1;  // B: counts live in [-B, B]
    Symbol max_symbol = 0;         // largest edge index (max degree)

    // N = n, B = n^2, max symbol = max degree
    static Bounds for_graph(const Graph& graph);

    std::int64_t clamp_count(std::int64_t value) const;
};

enum class LinkClass : std::uint8_t {
    Parent,
    Child,
    OutgoingNonTree,
    IncomingNonTree,
    Unclassified,
};

const char* to_string(LinkClass link);

// Type of the link behind `my_port`, judged from the two endpoint paths.
// `their_port` is the neighbor's index for the same edge.
LinkClass classify_link(const PathValue& my_path, const PathValue& their_path, Port my_port, Port their_port);

// Phase-A choice: the minimum of (read_paths[j] ⊕ back_ports[j]) cut to
// `bound` symbols. A candidate whose uncut length exceeds the bound ranks
// after every candidate that fits.
PathValue select_path(std::span<const PathValue> read_paths, std::span<const Port> back_ports, std::size_t bound);

enum class Opcode : std::uint8_t {
    RootWritePath,
    RootWriteCount,
    RootWriteBcc,
    ReadNeighborPath,     // phase A
    WritePath,
    ReadOwnPathForCount,  // phase B
    VisitPortForCount,
    WriteCount,
    ReadOwnCount,         // phase C
    ReadOwnPathForBcc,
    WriteOwnPathToBcc,
    ReadParentBcc,
    WriteParentBcc,
};

struct Instruction {
    Opcode op;
    Port port = 0;  // for per-port instructions

    friend bool operator==(const Instruction&, const Instruction&) = default;
};

// One loop body of the processor. Conditional instructions whose guard is
// false fall through without consuming an activation.
using Program = std::vector<Instruction>;

Program root_program();
Program nonroot_program(std::size_t degree);

// Register accesses one loop iteration can perform with a single parent link.
inline std::size_t max_accesses_per_cycle(std::size_t degree) { return 2 * degree + 6; }

struct Locals {
    PathValue path;
    std::int64_t count = 0;
    std::int64_t in = 0;
    std::int64_t out = 0;
    std::vector<PathValue> read_path;
    std::vector<std::int64_t> read_count;
    std::vector<PathValue> read_bcc;

    friend bool operator==(const Locals&, const Locals&) = default;
};

struct ProcessorState {
    Register reg;
    Locals locals;
    std::size_t pc = 0;

    friend bool operator==(const ProcessorState&, const ProcessorState&) = default;
};

// What a processor knows about its own links: whether it is the root and,
// for each own port j, the neighbor's index of the same edge.
struct NodeView {
    bool is_root = false;
    std::vector<Port> back_ports;

    std::size_t degree() const { return back_ports.size(); }
};

class NeighborRegisters {
public:
    virtual ~NeighborRegisters() = default;
    virtual const Register& read(Port port) const = 0;
};

enum class Access : std::uint8_t { ReadNeighbor, ReadOwn, WriteOwn };
enum class Field : std::uint8_t { Path, Count, Bcc };

const char* to_string(Field field);

struct StepOutcome {
    Access access = Access::ReadOwn;
    Field field = Field::Path;
    Port port = 0;                  // neighbor port for ReadNeighbor
    bool register_changed = false;  // a write that altered the register
    bool cycle_completed = false;   // pc wrapped past the end of the program
};

// Executes exactly one register access (plus any local computation leading
// up to it) and advances the program counter. Defined for every state:
// out-of-range pc wraps and mis-sized local arrays are resized first.
StepOutcome execute_step(ProcessorState& state, const Program& program, const NodeView& view,
                         const Bounds& bounds, const NeighborRegisters& neighbors);

}

#endif /* ssbcc_protocol_hpp */
