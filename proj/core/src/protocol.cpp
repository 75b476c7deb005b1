#include "ssbcc/protocol.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace ssbcc {

Bounds Bounds::for_graph(const Graph& graph) {
    Bounds bounds;
    bounds.path_bound = graph.node_count();
    bounds.count_bound = static_cast<std::int64_t>(graph.node_count() * graph.node_count());
    bounds.max_symbol = static_cast<Symbol>(graph.max_degree());
    return bounds;
}

std::int64_t Bounds::clamp_count(std::int64_t value) const {
    return std::clamp(value, -count_bound, count_bound);
}

const char* to_string(LinkClass link) {
    switch (link) {
    case LinkClass::Parent: return "parent";
    case LinkClass::Child: return "child";
    case LinkClass::OutgoingNonTree: return "outgoing";
    case LinkClass::IncomingNonTree: return "incoming";
    case LinkClass::Unclassified: return "unclassified";
    }
    return "unknown";
}

const char* to_string(Field field) {
    switch (field) {
    case Field::Path: return "path";
    case Field::Count: return "count";
    case Field::Bcc: return "bcc";
    }
    return "unknown";
}

namespace {

// true iff longer = shorter ⊕ <port>
bool is_single_extension(const PathValue& shorter, const PathValue& longer, Port port) {
    return longer.size() == shorter.size() + 1 && longer[shorter.size()] == port && shorter.is_prefix_of(longer);
}

}

LinkClass classify_link(const PathValue& my_path, const PathValue& their_path, Port my_port, Port their_port) {
    if (is_single_extension(their_path, my_path, their_port)) {
        return LinkClass::Parent;
    }
    if (is_single_extension(my_path, their_path, my_port)) {
        return LinkClass::Child;
    }
    // the suffix differs from the single port symbol in both remaining rules
    if (their_path.is_proper_prefix_of(my_path)) {
        return LinkClass::OutgoingNonTree;
    }
    if (my_path.is_proper_prefix_of(their_path)) {
        return LinkClass::IncomingNonTree;
    }
    return LinkClass::Unclassified;
}

PathValue select_path(std::span<const PathValue> read_paths, std::span<const Port> back_ports, std::size_t bound) {
    std::optional<PathValue> best;
    bool best_overflows = true;
    for (std::size_t j = 0; j < read_paths.size() && j < back_ports.size(); ++j) {
        bool overflows = read_paths[j].size() + 1 > bound;
        PathValue candidate = concat_truncate(read_paths[j], back_ports[j], bound);
        if (!best || (best_overflows && !overflows) ||
            (best_overflows == overflows && lex_less(candidate, *best))) {
            best = std::move(candidate);
            best_overflows = overflows;
        }
    }
    return best ? *best : PathValue::root();
}

Program root_program() {
    return {{Opcode::RootWritePath}, {Opcode::RootWriteCount}, {Opcode::RootWriteBcc}};
}

Program nonroot_program(std::size_t degree) {
    Program program;
    for (Port j = 1; j <= degree; ++j) {
        program.push_back({Opcode::ReadNeighborPath, j});
    }
    program.push_back({Opcode::WritePath});
    program.push_back({Opcode::ReadOwnPathForCount});
    for (Port j = 1; j <= degree; ++j) {
        program.push_back({Opcode::VisitPortForCount, j});
    }
    program.push_back({Opcode::WriteCount});
    program.push_back({Opcode::ReadOwnCount});
    program.push_back({Opcode::ReadOwnPathForBcc});
    program.push_back({Opcode::WriteOwnPathToBcc});
    for (Port j = 1; j <= degree; ++j) {
        program.push_back({Opcode::ReadParentBcc, j});
        program.push_back({Opcode::WriteParentBcc, j});
    }
    return program;
}

namespace {

PathValue cut(const PathValue& path, std::size_t bound) {
    if (path.size() <= bound) {
        return path;
    }
    auto symbols = path.symbols();
    return PathValue(std::vector<Symbol>(symbols.begin(), symbols.begin() + static_cast<std::ptrdiff_t>(bound)));
}

class Executor {
public:
    Executor(ProcessorState& state, const NodeView& view, const Bounds& bounds, const NeighborRegisters& neighbors)
        : state_(state), locals_(state.locals), view_(view), bounds_(bounds), neighbors_(neighbors) {}

    // nullopt when the instruction's guard fails and no register is touched
    std::optional<StepOutcome> run(const Instruction& ins) {
        const std::size_t j = ins.port == 0 ? 0 : ins.port - 1;
        switch (ins.op) {
        case Opcode::RootWritePath: return write_path(PathValue::root());
        case Opcode::RootWriteCount: return write_count(0);
        case Opcode::RootWriteBcc: return write_bcc(PathValue::root());

        case Opcode::ReadNeighborPath:
            locals_.read_path[j] = neighbors_.read(ins.port).path;
            return read_neighbor(Field::Path, ins.port);
        case Opcode::WritePath:
            return write_path(select_path(locals_.read_path, view_.back_ports, bounds_.path_bound));

        case Opcode::ReadOwnPathForCount:
            locals_.path = state_.reg.path;
            locals_.in = locals_.out = locals_.count = 0;
            return read_own(Field::Path);
        case Opcode::VisitPortForCount:
            switch (link(j, ins.port)) {
            case LinkClass::Child:
                locals_.read_count[j] = neighbors_.read(ins.port).count;
                locals_.count += locals_.read_count[j];
                return read_neighbor(Field::Count, ins.port);
            case LinkClass::IncomingNonTree:
                locals_.count -= 1;
                locals_.in += 1;
                return std::nullopt;
            case LinkClass::OutgoingNonTree:
                locals_.count += 1;
                locals_.out += 1;
                return std::nullopt;
            default:
                return std::nullopt;
            }
        case Opcode::WriteCount: return write_count(locals_.count);

        case Opcode::ReadOwnCount:
            locals_.count = state_.reg.count;
            return read_own(Field::Count);
        case Opcode::ReadOwnPathForBcc:
            locals_.path = state_.reg.path;
            return read_own(Field::Path);
        case Opcode::WriteOwnPathToBcc:
            if (locals_.count != 0) {
                return std::nullopt;
            }
            return write_bcc(locals_.path);
        case Opcode::ReadParentBcc:
            if (locals_.count == 0 || link(j, ins.port) != LinkClass::Parent) {
                return std::nullopt;
            }
            locals_.read_bcc[j] = neighbors_.read(ins.port).bcc;
            return read_neighbor(Field::Bcc, ins.port);
        case Opcode::WriteParentBcc:
            if (locals_.count == 0 || link(j, ins.port) != LinkClass::Parent) {
                return std::nullopt;
            }
            return write_bcc(locals_.read_bcc[j]);
        }
        throw std::logic_error("unknown opcode");
    }

private:
    LinkClass link(std::size_t j, Port port) const {
        return classify_link(locals_.path, locals_.read_path[j], port, view_.back_ports[j]);
    }

    static StepOutcome read_neighbor(Field field, Port port) {
        return {Access::ReadNeighbor, field, port, false, false};
    }
    static StepOutcome read_own(Field field) { return {Access::ReadOwn, field, 0, false, false}; }

    StepOutcome write_path(PathValue value) {
        value = cut(value, bounds_.path_bound);
        bool changed = value != state_.reg.path;
        state_.reg.path = std::move(value);
        return {Access::WriteOwn, Field::Path, 0, changed, false};
    }
    StepOutcome write_count(std::int64_t value) {
        value = bounds_.clamp_count(value);
        bool changed = value != state_.reg.count;
        state_.reg.count = value;
        return {Access::WriteOwn, Field::Count, 0, changed, false};
    }
    StepOutcome write_bcc(PathValue value) {
        value = cut(value, bounds_.path_bound);
        bool changed = value != state_.reg.bcc;
        state_.reg.bcc = std::move(value);
        return {Access::WriteOwn, Field::Bcc, 0, changed, false};
    }

    ProcessorState& state_;
    Locals& locals_;
    const NodeView& view_;
    const Bounds& bounds_;
    const NeighborRegisters& neighbors_;
};

}

StepOutcome execute_step(ProcessorState& state, const Program& program, const NodeView& view,
                         const Bounds& bounds, const NeighborRegisters& neighbors) {
    if (program.empty()) {
        throw std::invalid_argument("empty program");
    }
    const std::size_t degree = view.degree();
    state.locals.read_path.resize(degree);
    state.locals.read_count.resize(degree);
    state.locals.read_bcc.resize(degree);
    state.pc %= program.size();

    Executor executor(state, view, bounds, neighbors);
    bool wrapped = false;
    // every program holds unconditional accesses, so one lap suffices
    for (std::size_t guard = 0; guard < program.size(); ++guard) {
        const Instruction& ins = program[state.pc];
        state.pc += 1;
        if (state.pc == program.size()) {
            state.pc = 0;
            wrapped = true;
        }
        if (auto outcome = executor.run(ins)) {
            outcome->cycle_completed = wrapped;
            return *outcome;
        }
    }
    throw std::logic_error("program performed no register access in a full lap");
}

}
