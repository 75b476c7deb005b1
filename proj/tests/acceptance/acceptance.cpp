// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ssbcc/analysis.hpp"
#include "ssbcc/generators.hpp"
#include "ssbcc/oracle.hpp"
#include "ssbcc/simulator.hpp"

using namespace ssbcc;
using Clock = std::chrono::steady_clock;

namespace {

// pinned thresholds
constexpr std::size_t kSweepGraphs = 200;
constexpr std::size_t kMaxRandomNodes = 40;
constexpr std::size_t kMaxClusters = 8;
constexpr std::size_t kMaxClusterSize = 5;
constexpr double kRoundRatioLimit = 10.0;
constexpr std::size_t kClosureRounds = 50;
constexpr std::size_t kFaultGraphs = 10;
constexpr std::size_t kFaultsPerGraph = 50;
constexpr std::size_t kAlphaGraphs = 20;
constexpr std::size_t kAlphaShuffles = 5;
constexpr double kFigure1Seconds = 1.0;

const char* const kSchedulers[] = {"round-robin", "random", "weighted"};

struct Criterion {
    bool pass = true;
    std::string detail;
    std::size_t failures = 0;

    void fail(const std::string& why) {
        if (failures++ < 3) {
            detail += (detail.empty() ? "" : "; ") + why;
        }
        pass = false;
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double scale_of(const Graph& g) {
    return static_cast<double>(std::max<std::size_t>(g.diameter(), 1) * g.node_count() *
                               std::max<std::size_t>(g.max_degree(), 1));
}

Graph sweep_graph(std::size_t index, std::mt19937_64& rng) {
    if (index % 2 == 0) {
        std::size_t n = 3 + rng() % (kMaxRandomNodes - 2);
        std::size_t max_extra = n * (n - 1) / 2 - (n - 1);
        std::size_t extra = std::min<std::size_t>(rng() % (n + 1), max_extra);
        return generate_random_connected(n, extra, rng());
    }
    std::size_t k = 1 + rng() % kMaxClusters;
    std::size_t size = 3 + rng() % (kMaxClusterSize - 2);
    return generate_clustered(k, size, rng());
}

std::string label(const Graph& g, std::size_t index, const char* scheduler) {
    return "graph#" + std::to_string(index) + "(n=" + std::to_string(g.node_count()) + ") " + scheduler;
}

// count = bypass count and = sum(children) - in + out, read off the registers
void check_counts(const Graph& g, const std::vector<Register>& regs, const std::string& where, Criterion& c) {
    std::vector<PathValue> paths;
    for (const auto& r : regs) {
        paths.push_back(r.path);
    }
    auto tree = oracle::tree_from_paths(g, paths);
    for (NodeId v = 2; v <= g.node_count(); ++v) {
        std::int64_t sum = 0;
        for (NodeId child : tree.children[v - 1]) {
            sum += regs[child - 1].count;
        }
        std::int64_t recursion = sum - oracle::incoming_total(g, paths, v) + oracle::outgoing_total(g, paths, v);
        if (regs[v - 1].count != oracle::bypass_count(g, paths, v) || regs[v - 1].count != recursion) {
            c.fail(where + " node " + std::to_string(v));
        }
    }
}

// zero counts exactly at the smallest-path node of each component and the root
void check_representatives(const Graph& g, const std::vector<Register>& regs, const std::string& where,
                           Criterion& c) {
    for (const auto& block : oracle::brute_bcc_partition(g)) {
        NodeId rep = block.front();
        for (NodeId v : block) {
            if (lex_less(regs[v - 1].path, regs[rep - 1].path)) {
                rep = v;
            }
        }
        for (NodeId v : block) {
            bool zero = regs[v - 1].count == 0;
            if (zero != (v == rep || v == kRoot)) {
                c.fail(where + " count at node " + std::to_string(v));
            }
            if (!(regs[v - 1].bcc == regs[rep - 1].path)) {
                c.fail(where + " bcc label at node " + std::to_string(v));
            }
        }
    }
}

// lines are printed in criterion order once everything has run
std::map<int, std::string> lines;

void report(int id, const char* title, const Criterion& c, const std::string& summary) {
    lines[id] = std::string(c.pass ? "PASS" : "FAIL") + " [" + std::to_string(id) + "] " + title + ": " + summary +
                (c.detail.empty() ? "" : " | " + c.detail);
}

}

int main() {
    bool all = true;
    Criterion space;
    std::size_t max_bits_seen = 0;
    auto note_space = [&](const RunReport& r, const Graph& g, const std::string& where) {
        max_bits_seen = std::max(max_bits_seen, r.max_register_bits);
        if (r.max_register_bits > r.register_bit_budget) {
            space.fail(where + " used " + std::to_string(r.max_register_bits) + " bits");
        }
        if (r.max_path_length > g.node_count()) {
            space.fail(where + " path length " + std::to_string(r.max_path_length));
        }
    };

    // 1
    {
        Criterion c;
        auto start = Clock::now();
        Graph g = figure1();
        Network net(g);
        for (const char* name : kSchedulers) {
            auto outcome = run_and_certify(net, Scheduler::from_name(name, 1), init_arbitrary(net, 1));
            note_space(outcome.run.report, g, std::string("figure1 ") + name);
            if (!outcome.detection) {
                c.fail(std::string(name) + " did not stabilize");
                continue;
            }
            const auto& d = *outcome.detection;
            if (d.bridges != oracle::EdgeSet{{1, 4}, {5, 6}, {10, 11}, {11, 14}}) {
                c.fail(std::string(name) + " bridges");
            }
            if (d.articulation_points != oracle::NodeSet{1, 4, 5, 6, 10, 11, 14}) {
                c.fail(std::string(name) + " articulation points");
            }
            if (d.partition() !=
                oracle::Partition{{1, 2, 3}, {4, 5, 10}, {6, 7, 8, 9}, {11, 12, 13}, {14, 15, 16}}) {
                c.fail(std::string(name) + " partition");
            }
            auto regs = outcome.run.final_config.registers();
            for (NodeId v : {4, 6, 11, 14}) {
                if (regs[v - 1].count != 0) {
                    c.fail(std::string(name) + " count at " + std::to_string(v));
                }
            }
        }
        double elapsed = seconds_since(start);
        if (elapsed >= kFigure1Seconds) {
            c.fail("took " + std::to_string(elapsed) + " s");
        }
        report(1, "figure1 reproduction", c, "3 schedulers, " + std::to_string(elapsed) + " s");
        all = all && c.pass;
    }

    // 2, 3, 4, 5, 7 share one sweep
    Criterion sweep, counts, reps, rounds, closure;
    double max_ratio = 0.0;
    std::size_t runs = 0;
    std::size_t stabilized = 0;
    auto sweep_start = Clock::now();
    {
        std::mt19937_64 rng(20240601);
        for (std::size_t i = 0; i < kSweepGraphs; ++i) {
            Graph g = sweep_graph(i, rng);
            Network net(g);
            const double scale = scale_of(g);
            for (const char* name : kSchedulers) {
                const std::uint64_t seed = rng();
                RunOptions opt;
                opt.closure_rounds = kClosureRounds;
                auto outcome = run_and_certify(net, Scheduler::from_name(name, seed), init_arbitrary(net, seed ^ i),
                                               {}, opt);
                const auto& r = outcome.run.report;
                const std::string where = label(g, i, name);
                ++runs;
                note_space(r, g, where);
                if (!r.stabilized) {
                    sweep.fail(where + " not stabilized");
                    rounds.fail(where + " not stabilized");
                    continue;
                }
                ++stabilized;
                if (!outcome.certification.match) {
                    sweep.fail(where + " " + outcome.certification.mismatches.front());
                }
                double ratio = static_cast<double>(r.stabilization_round) / scale;
                max_ratio = std::max(max_ratio, ratio);
                if (ratio > kRoundRatioLimit) {
                    rounds.fail(where + " ratio " + std::to_string(ratio));
                }
                if (r.closure_rounds != kClosureRounds || r.closure_changes != 0) {
                    closure.fail(where + " " + std::to_string(r.closure_changes) + " changes in " +
                                 std::to_string(r.closure_rounds) + " rounds");
                }
                auto regs = outcome.run.final_config.registers();
                check_counts(g, regs, where, counts);
                check_representatives(g, regs, where, reps);
            }
        }
    }
    const double sweep_seconds = seconds_since(sweep_start);
    const std::string sweep_size = std::to_string(runs) + " runs";

    report(2, "oracle equivalence sweep", sweep,
           std::to_string(stabilized) + "/" + sweep_size + " stabilized and certified, " +
               std::to_string(sweep_seconds) + " s");
    report(3, "count identity", counts, sweep_size);
    report(4, "representatives and labels", reps, sweep_size);
    report(5, "round bound", rounds,
           "max stabilization_round/(d*n*Delta) = " + std::to_string(max_ratio) + " (limit " +
               std::to_string(kRoundRatioLimit) + ")");
    all = all && sweep.pass && counts.pass && reps.pass && rounds.pass;

    // 8
    {
        Criterion c;
        std::mt19937_64 rng(777);
        std::size_t injected = 0;
        std::size_t restored = 0;
        auto start = Clock::now();
        for (std::size_t i = 0; i < kFaultGraphs; ++i) {
            Graph g = sweep_graph(i, rng);
            if (i == 0) {
                g = figure1();
            }
            Network net(g);
            std::vector<FaultSpec> faults;
            for (std::size_t k = 0; k < kFaultsPerGraph; ++k) {
                FaultSpec f;
                if (k % 5 == 4) {
                    f.all_registers = true;
                } else {
                    static const FaultField fields[] = {FaultField::Path, FaultField::Count, FaultField::Bcc,
                                                        FaultField::ProgramCounter, FaultField::Locals};
                    NodeId node = static_cast<NodeId>(1 + rng() % g.node_count());
                    f.targets = {{node, fields[k % 5]}};
                }
                faults.push_back(f);
            }
            const char* name = kSchedulers[i % 3];
            RunOptions opt;
            opt.fault_seed = rng();
            auto outcome = run_and_certify(net, Scheduler::from_name(name, i), init_arbitrary(net, i), faults, opt);
            const auto& r = outcome.run.report;
            const std::string where = label(g, i, name);
            note_space(r, g, where);
            if (r.fault_events.size() != kFaultsPerGraph) {
                c.fail(where + " only " + std::to_string(r.fault_events.size()) + " faults fired");
            }
            for (const auto& event : r.fault_events) {
                ++injected;
                if (event.recovered && event.registers_restored) {
                    ++restored;
                } else {
                    c.fail(where + " " + event.description);
                }
            }
            if (!r.stabilized || !outcome.certification.match) {
                c.fail(where + " final state not certified");
            }
        }
        report(8, "fault recovery", c,
               std::to_string(restored) + "/" + std::to_string(injected) + " injections restored, " +
                   std::to_string(seconds_since(start)) + " s");
        all = all && c.pass;
    }

    // 9
    {
        Criterion c;
        std::mt19937_64 rng(99);
        for (std::size_t i = 0; i < kAlphaGraphs; ++i) {
            Graph g = i == 0 ? figure1() : sweep_graph(i, rng);
            if (!alpha_independence(g, kAlphaShuffles, 1000 + i)) {
                c.fail("graph#" + std::to_string(i));
            }
        }
        report(9, "port-numbering independence", c,
               std::to_string(kAlphaGraphs) + " graphs x " + std::to_string(kAlphaShuffles) + " shuffles");
        all = all && c.pass;
    }

    report(6, "register space", space,
           "max " + std::to_string(max_bits_seen) + " bits over criteria 1, 2, 8; budget checked per run");
    report(7, "closure", closure, sweep_size + " x " + std::to_string(kClosureRounds) + " rounds");
    all = all && space.pass && closure.pass;

    for (const auto& [id, line] : lines) {
        std::printf("%s\n", line.c_str());
    }
    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return all ? 0 : 1;
}
