#include "ssbcc/simulator.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>

#include "ssbcc/register_codec.hpp"

namespace ssbcc {

std::vector<Register> Configuration::registers() const {
    std::vector<Register> regs;
    regs.reserve(states.size());
    for (const auto& state : states) {
        regs.push_back(state.reg);
    }
    return regs;
}

namespace {

class ConfigurationNeighbors final : public NeighborRegisters {
public:
    ConfigurationNeighbors(const Configuration& config, std::span<const NodeId> neighbors)
        : config_(config), neighbors_(neighbors) {}

    const Register& read(Port port) const override { return config_.states[neighbors_[port - 1] - 1].reg; }

private:
    const Configuration& config_;
    std::span<const NodeId> neighbors_;
};

// uniform in [lo, hi]; plain modulo keeps runs identical across standard libraries
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

PathValue random_path(std::mt19937_64& rng, const Bounds& bounds) {
    auto length = static_cast<std::size_t>(draw(rng, 1, static_cast<std::int64_t>(bounds.path_bound)));
    std::vector<Symbol> symbols(length);
    for (auto& s : symbols) {
        s = static_cast<Symbol>(draw(rng, 0, bounds.max_symbol));
    }
    return PathValue(std::move(symbols));
}

std::int64_t random_count(std::mt19937_64& rng, const Bounds& bounds) {
    return draw(rng, -bounds.count_bound, bounds.count_bound);
}

Locals random_locals(std::mt19937_64& rng, const Bounds& bounds, std::size_t degree) {
    Locals locals;
    locals.path = random_path(rng, bounds);
    locals.count = random_count(rng, bounds);
    locals.in = random_count(rng, bounds);
    locals.out = random_count(rng, bounds);
    for (std::size_t j = 0; j < degree; ++j) {
        locals.read_path.push_back(random_path(rng, bounds));
        locals.read_count.push_back(random_count(rng, bounds));
        locals.read_bcc.push_back(random_path(rng, bounds));
    }
    return locals;
}

void check_path_bounds(const PathValue& path, const Bounds& bounds) {
    if (path.empty() || path.size() > bounds.path_bound) {
        throw std::out_of_range("fault path length outside [1, N]");
    }
    for (Symbol s : path.symbols()) {
        if (s > bounds.max_symbol) {
            throw std::out_of_range("fault path symbol above the maximal edge index");
        }
    }
}

}

Network::Network(Graph graph)
    : graph_(std::move(graph)), bounds_(Bounds::for_graph(graph_)), truth_(oracle::ground_truth(graph_)) {
    for (NodeId node = 1; node <= graph_.node_count(); ++node) {
        NodeView view;
        view.is_root = node == kRoot;
        for (Port port = 1; port <= graph_.degree(node); ++port) {
            view.back_ports.push_back(graph_.back_port(node, port));
        }
        programs_.push_back(view.is_root ? root_program() : nonroot_program(view.degree()));
        views_.push_back(std::move(view));
    }
}

StepOutcome Network::step(Configuration& config, NodeId node) const {
    ConfigurationNeighbors neighbors(config, graph_.neighbors(node));
    return execute_step(config.states.at(node - 1), program(node), view(node), bounds_, neighbors);
}

bool Network::is_legitimate(const Configuration& config) const {
    if (config.states.size() != graph_.node_count()) {
        return false;
    }
    for (std::size_t i = 0; i < config.states.size(); ++i) {
        const Register& reg = config.states[i].reg;
        if (reg.count != truth_.counts[i] || reg.path != truth_.paths[i] || reg.bcc != truth_.bcc_labels[i]) {
            return false;
        }
    }
    return true;
}

Configuration Network::legitimate_configuration() const {
    Configuration config;
    auto regs = truth_.registers();
    for (NodeId node = 1; node <= graph_.node_count(); ++node) {
        ProcessorState state;
        state.reg = regs[node - 1];
        state.locals.path = state.reg.path;
        state.locals.count = state.reg.count;
        if (node != kRoot) {
            state.locals.in = oracle::incoming_total(graph_, truth_.paths, node);
            state.locals.out = oracle::outgoing_total(graph_, truth_.paths, node);
        }
        for (NodeId other : graph_.neighbors(node)) {
            state.locals.read_path.push_back(regs[other - 1].path);
            state.locals.read_count.push_back(regs[other - 1].count);
            state.locals.read_bcc.push_back(regs[other - 1].bcc);
        }
        config.states.push_back(std::move(state));
    }
    return config;
}

Configuration init_arbitrary(const Network& network, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Bounds& bounds = network.bounds();
    Configuration config;
    for (NodeId node = 1; node <= network.graph().node_count(); ++node) {
        ProcessorState state;
        state.reg.path = random_path(rng, bounds);
        state.reg.count = random_count(rng, bounds);
        state.reg.bcc = random_path(rng, bounds);
        state.locals = random_locals(rng, bounds, network.view(node).degree());
        state.pc = static_cast<std::size_t>(draw(rng, 0, static_cast<std::int64_t>(network.program(node).size()) - 1));
        config.states.push_back(std::move(state));
    }
    return config;
}

const char* to_string(FaultField field) {
    switch (field) {
    case FaultField::Path: return "path";
    case FaultField::Count: return "count";
    case FaultField::Bcc: return "bcc";
    case FaultField::ProgramCounter: return "pc";
    case FaultField::Locals: return "locals";
    }
    return "unknown";
}

std::string FaultSpec::describe() const {
    std::string out = trigger == Trigger::PostStabilization ? "post" : std::to_string(step);
    out += '@';
    std::vector<std::string> parts;
    if (all_registers) {
        parts.push_back("all");
    }
    if (random_fields > 0) {
        parts.push_back("random" + std::to_string(random_fields));
    }
    for (const auto& target : targets) {
        std::string part = std::to_string(target.node) + "." + to_string(target.field);
        if (value) {
            part += '=';
            if (auto* path = std::get_if<PathValue>(&*value)) {
                part += path->to_string();
            } else {
                part += std::to_string(std::get<std::int64_t>(*value));
            }
        }
        parts.push_back(std::move(part));
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out += (i > 0 ? "," : "") + parts[i];
    }
    return out;
}

Configuration inject_fault(const Network& network, Configuration config, const FaultSpec& fault, std::uint64_t seed) {
    const Graph& graph = network.graph();
    const Bounds& bounds = network.bounds();
    std::mt19937_64 rng(seed);

    std::vector<FaultTarget> targets = fault.targets;
    for (const auto& target : targets) {
        if (target.node < 1 || target.node > graph.node_count()) {
            throw std::out_of_range("fault target node " + std::to_string(target.node) + " outside the graph");
        }
    }
    if (fault.all_registers) {
        for (NodeId node = 1; node <= graph.node_count(); ++node) {
            for (auto field : {FaultField::Path, FaultField::Count, FaultField::Bcc}) {
                targets.push_back({node, field});
            }
        }
    }
    for (std::size_t k = 0; k < fault.random_fields; ++k) {
        auto node = static_cast<NodeId>(draw(rng, 1, static_cast<std::int64_t>(graph.node_count())));
        auto field = static_cast<FaultField>(draw(rng, 0, 2));
        targets.push_back({node, field});
    }

    for (const auto& target : targets) {
        ProcessorState& state = config.at(target.node);
        const bool explicit_value = fault.value.has_value() && !fault.all_registers && fault.random_fields == 0;
        const PathValue* path_value = explicit_value ? std::get_if<PathValue>(&*fault.value) : nullptr;
        const std::int64_t* int_value = explicit_value ? std::get_if<std::int64_t>(&*fault.value) : nullptr;

        switch (target.field) {
        case FaultField::Path:
        case FaultField::Bcc: {
            PathValue value;
            if (explicit_value) {
                if (!path_value) {
                    throw std::invalid_argument("path fields need a path value");
                }
                check_path_bounds(*path_value, bounds);
                value = *path_value;
            } else {
                value = random_path(rng, bounds);
            }
            (target.field == FaultField::Path ? state.reg.path : state.reg.bcc) = std::move(value);
            break;
        }
        case FaultField::Count:
            if (explicit_value) {
                if (!int_value) {
                    throw std::invalid_argument("count needs an integer value");
                }
                if (*int_value < -bounds.count_bound || *int_value > bounds.count_bound) {
                    throw std::out_of_range("fault count outside [-B, B]");
                }
                state.reg.count = *int_value;
            } else {
                state.reg.count = random_count(rng, bounds);
            }
            break;
        case FaultField::ProgramCounter:
            if (explicit_value) {
                if (!int_value || *int_value < 0) {
                    throw std::invalid_argument("pc needs a non-negative integer value");
                }
                state.pc = static_cast<std::size_t>(*int_value);
            } else {
                state.pc = static_cast<std::size_t>(
                    draw(rng, 0, static_cast<std::int64_t>(network.program(target.node).size()) - 1));
            }
            break;
        case FaultField::Locals:
            if (explicit_value) {
                throw std::invalid_argument("locals only take random values");
            }
            state.locals = random_locals(rng, bounds, network.view(target.node).degree());
            break;
        }
    }
    return config;
}

std::size_t default_max_rounds(const Graph& graph) {
    std::size_t d = std::max<std::size_t>(graph.diameter(), 1);
    std::size_t delta = std::max<std::size_t>(graph.max_degree(), 1);
    return 10 * d * graph.node_count() * delta;
}

namespace {

enum class CycleProgress : std::uint8_t { WaitingForStart, InCycle, Done };

class Runner {
public:
    Runner(const Network& network, Scheduler scheduler, Configuration init, std::span<const FaultSpec> faults,
           const RunOptions& options)
        : network_(network),
          scheduler_(std::move(scheduler)),
          options_(options),
          tracker_(network.graph().node_count()) {
        result_.final_config = std::move(init);
        if (result_.final_config.states.size() != network.graph().node_count()) {
            throw std::invalid_argument("configuration size does not match the graph");
        }
        for (const auto& fault : faults) {
            (fault.trigger == FaultSpec::Trigger::AtStep ? step_faults_ : post_faults_).push_back(fault);
        }
        std::stable_sort(step_faults_.begin(), step_faults_.end(),
                         [](const FaultSpec& a, const FaultSpec& b) { return a.step < b.step; });
        max_rounds_ = options.max_rounds > 0 ? options.max_rounds : default_max_rounds(network.graph());
        result_.report.max_rounds = max_rounds_;
        result_.report.register_bit_budget = register_bit_budget(network.bounds());
        for (const auto& state : config().states) {
            note_register(state.reg);
        }
        scheduler_.reset(network.graph().node_count());
        progress_.assign(network.graph().node_count(), CycleProgress::WaitingForStart);
    }

    RunResult finish() {
        while (!done_) {
            fire_step_faults();
            NodeId node = scheduler_.next();
            StepOutcome outcome = network_.step(config(), node);
            ++report().total_steps;
            if (options_.log_steps) {
                result_.trace.schedule.push_back(node);
            }
            if (outcome.register_changed) {
                changed_this_round_ = true;
                note_register(config().at(node).reg);
                if (in_closure_) {
                    ++report().closure_changes;
                }
            }
            if (streak_active_ && outcome.cycle_completed) {
                auto& p = progress_[node - 1];
                p = p == CycleProgress::WaitingForStart ? CycleProgress::InCycle : CycleProgress::Done;
            }
            if (tracker_.observe(node)) {
                end_round();
            }
        }
        report().stabilized = stable_;
        report().oracle_match = network_.is_legitimate(config());
        return std::move(result_);
    }

private:
    Configuration& config() { return result_.final_config; }
    RunReport& report() { return result_.report; }

    void note_register(const Register& reg) {
        report().max_register_bits = std::max(report().max_register_bits, encoded_bits(reg, network_.bounds()));
        report().max_path_length = std::max({report().max_path_length, reg.path.size(), reg.bcc.size()});
    }

    void apply_fault(const FaultSpec& fault) {
        FaultEvent event;
        event.description = fault.describe();
        event.step = report().total_steps;
        event.round = report().rounds;
        pre_fault_registers_ = config().registers();
        const std::uint64_t seed = options_.fault_seed + 0x9e3779b97f4a7c15ULL * (report().fault_events.size() + 1);
        config() = inject_fault(network_, std::move(config()), fault, seed);
        for (const auto& state : config().states) {
            note_register(state.reg);
        }
        report().fault_events.push_back(std::move(event));
        awaiting_recovery_ = true;
        stable_ = false;
        streak_active_ = false;
        phase_start_round_ = report().rounds;
    }

    void fire_step_faults() {
        while (next_step_fault_ < step_faults_.size() && step_faults_[next_step_fault_].step <= report().total_steps) {
            apply_fault(step_faults_[next_step_fault_++]);
            in_closure_ = false;
        }
    }

    void start_streak() {
        streak_active_ = true;
        streak_start_round_ = report().rounds;
        streak_length_ = 0;
        for (std::size_t i = 0; i < progress_.size(); ++i) {
            progress_[i] = config().states[i].pc % network_.program(static_cast<NodeId>(i + 1)).size() == 0
                               ? CycleProgress::InCycle
                               : CycleProgress::WaitingForStart;
        }
    }

    bool streak_confirmed() const {
        return streak_length_ >= options_.confirm_rounds &&
               std::all_of(progress_.begin(), progress_.end(),
                           [](CycleProgress p) { return p == CycleProgress::Done; });
    }

    void end_round() {
        ++report().rounds;
        if (options_.keep_round_snapshots) {
            result_.trace.round_snapshots.push_back(config().registers());
        }
        const bool changed = changed_this_round_;
        changed_this_round_ = false;

        if (in_closure_) {
            if (++report().closure_rounds >= options_.closure_rounds) {
                done_ = true;
            }
            return;
        }
        if (stable_) {
            // idle until the next step-triggered fault
            return;
        }

        if (!network_.is_legitimate(config())) {
            streak_active_ = false;
        } else if (!streak_active_ || changed) {
            start_streak();
        } else {
            ++streak_length_;
        }

        if (streak_active_ && streak_confirmed()) {
            declare_stable();
        } else if (report().rounds - phase_start_round_ >= max_rounds_) {
            done_ = true;
        }
    }

    void declare_stable() {
        stable_ = true;
        streak_active_ = false;
        if (!ever_stable_) {
            ever_stable_ = true;
            report().stabilized = true;
            report().stabilization_round = streak_start_round_;
        }
        if (awaiting_recovery_) {
            auto& event = report().fault_events.back();
            event.recovered = true;
            event.recovery_rounds = streak_start_round_ - event.round;
            event.registers_restored = config().registers() == pre_fault_registers_;
            awaiting_recovery_ = false;
        }
        if (next_post_fault_ < post_faults_.size()) {
            apply_fault(post_faults_[next_post_fault_++]);
            return;
        }
        if (next_step_fault_ < step_faults_.size()) {
            return;
        }
        if (options_.closure_rounds > 0) {
            in_closure_ = true;
        } else {
            done_ = true;
        }
    }

    const Network& network_;
    Scheduler scheduler_;
    RunOptions options_;
    RoundTracker tracker_;
    RunResult result_;

    std::vector<FaultSpec> step_faults_;
    std::vector<FaultSpec> post_faults_;
    std::size_t next_step_fault_ = 0;
    std::size_t next_post_fault_ = 0;
    std::vector<Register> pre_fault_registers_;

    std::size_t max_rounds_ = 0;
    std::size_t phase_start_round_ = 0;
    bool changed_this_round_ = false;
    bool streak_active_ = false;
    std::size_t streak_start_round_ = 0;
    std::size_t streak_length_ = 0;
    std::vector<CycleProgress> progress_;
    bool stable_ = false;
    bool ever_stable_ = false;
    bool awaiting_recovery_ = false;
    bool in_closure_ = false;
    bool done_ = false;
};

}

RunResult run(const Network& network, Scheduler scheduler, Configuration init, std::span<const FaultSpec> faults,
              const RunOptions& options) {
    return Runner(network, std::move(scheduler), std::move(init), faults, options).finish();
}

}
