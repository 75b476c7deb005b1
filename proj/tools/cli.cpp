#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "ssbcc/generators.hpp"
#include "ssbcc/graph_io.hpp"

namespace ssbcc::cli {

namespace {

std::uint64_t to_uint(std::string_view text, std::string_view what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw UsageError("bad " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

std::int64_t to_int(std::string_view text, std::string_view what) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw UsageError("bad " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        auto next = text.find(sep, pos);
        parts.push_back(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) {
            return parts;
        }
        pos = next + 1;
    }
}

}

Graph resolve_graph(std::string_view spec, std::optional<std::uint64_t> default_seed) {
    const std::uint64_t fallback_seed = default_seed.value_or(1);
    if (spec == "figure1") {
        return figure1();
    }
    if (spec.starts_with("random:")) {
        auto args = split(spec.substr(7), ',');
        if (args.size() < 2 || args.size() > 3) {
            throw UsageError("expected random:n,m[,seed]");
        }
        auto n = to_uint(args[0], "node count");
        auto m = to_uint(args[1], "edge count");
        auto seed = args.size() == 3 ? to_uint(args[2], "seed") : fallback_seed;
        if (n == 0 || m + 1 < n) {
            throw UsageError("random graphs need n >= 1 and m >= n - 1");
        }
        return generate_random_connected(n, m - (n - 1), seed);
    }
    if (spec.starts_with("clustered:")) {
        auto args = split(spec.substr(10), ',');
        if (args.empty() || args.size() > 2) {
            throw UsageError("expected clustered:kxsize[,seed]");
        }
        auto shape = split(args[0], 'x');
        if (shape.size() != 2) {
            throw UsageError("expected clustered:kxsize[,seed]");
        }
        auto seed = args.size() == 2 ? to_uint(args[1], "seed") : fallback_seed;
        return generate_clustered(to_uint(shape[0], "cluster count"), to_uint(shape[1], "cluster size"), seed);
    }
    return load_graph(std::filesystem::path(std::string(spec)));
}

std::vector<FaultSpec> parse_faults(std::string_view text) {
    std::vector<FaultSpec> faults;
    if (text.empty()) {
        return faults;
    }
    for (auto item : split(text, ';')) {
        auto at = item.find('@');
        if (at == std::string_view::npos) {
            throw UsageError("fault '" + std::string(item) + "' lacks TRIGGER@TARGET");
        }
        FaultSpec fault;
        auto trigger = item.substr(0, at);
        if (trigger == "post") {
            fault.trigger = FaultSpec::Trigger::PostStabilization;
        } else {
            fault.trigger = FaultSpec::Trigger::AtStep;
            fault.step = to_uint(trigger, "fault step");
        }
        for (auto target : split(item.substr(at + 1), ',')) {
            if (target == "all") {
                fault.all_registers = true;
                continue;
            }
            if (target.starts_with("random")) {
                fault.random_fields += to_uint(target.substr(6), "random field count");
                continue;
            }
            auto eq = target.find('=');
            auto name = target.substr(0, eq);
            auto dot = name.find('.');
            if (dot == std::string_view::npos) {
                throw UsageError("fault target '" + std::string(target) + "' must be NODE.FIELD");
            }
            FaultTarget t;
            t.node = static_cast<NodeId>(to_uint(name.substr(0, dot), "fault node"));
            auto field = name.substr(dot + 1);
            static const std::map<std::string_view, FaultField> fields = {
                {"path", FaultField::Path}, {"count", FaultField::Count}, {"bcc", FaultField::Bcc},
                {"pc", FaultField::ProgramCounter}, {"locals", FaultField::Locals},
            };
            auto it = fields.find(field);
            if (it == fields.end()) {
                throw UsageError("unknown fault field '" + std::string(field) + "'");
            }
            t.field = it->second;
            if (eq != std::string_view::npos) {
                auto value = target.substr(eq + 1);
                if (t.field == FaultField::Path || t.field == FaultField::Bcc) {
                    try {
                        fault.value = PathValue::parse(value);
                    } catch (const std::invalid_argument& e) {
                        throw UsageError(e.what());
                    }
                } else {
                    fault.value = to_int(value, "fault value");
                }
            }
            fault.targets.push_back(t);
        }
        faults.push_back(std::move(fault));
    }
    return faults;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(std::string_view text) {
    auto dots = text.find("..");
    if (dots == std::string_view::npos) {
        auto single = to_uint(text, "seed range");
        return {single, single};
    }
    auto first = to_uint(text.substr(0, dots), "seed range start");
    auto last = to_uint(text.substr(dots + 2), "seed range end");
    if (last < first) {
        throw UsageError("empty seed range " + std::string(text));
    }
    return {first, last};
}

int exit_code(bool stabilized, bool certified) {
    if (!stabilized) {
        return kExitNotStabilized;
    }
    return certified ? kExitOk : kExitMismatch;
}

Json graph_json(const Graph& graph) {
    Json j;
    j["n"] = graph.node_count();
    j["m"] = graph.edge_count();
    j["d"] = graph.diameter();
    j["delta"] = graph.max_degree();
    return j;
}

Json detection_json(const DetectionResult& detection) {
    Json j;
    j["bridges"] = Json::array();
    for (const Edge& e : detection.bridges) {
        j["bridges"].push_back({e.u, e.v});
    }
    j["articulation_points"] = Json::array();
    for (NodeId v : detection.articulation_points) {
        j["articulation_points"].push_back(v);
    }
    j["components"] = Json::array();
    for (const auto& block : detection.partition()) {
        Json c;
        c["label"] = detection.component_of[block.front() - 1].to_string();
        c["nodes"] = block;
        j["components"].push_back(std::move(c));
    }
    return j;
}

Json report_json(const Graph& graph, const RunSettings& settings, const CertifiedRun& outcome) {
    const RunReport& report = outcome.run.report;
    Json j;
    j["graph"] = graph_json(graph);

    Json run;
    run["graph_spec"] = settings.graph_spec;
    run["scheduler"] = settings.scheduler;
    run["seeds"] = {{"scheduler", settings.seed}, {"init", settings.init_seed}};
    run["rounds"] = report.rounds;
    run["steps"] = report.total_steps;
    run["stabilization_round"] = report.stabilized || !report.fault_events.empty()
                                     ? Json(report.stabilization_round)
                                     : Json(nullptr);
    run["stabilized"] = report.stabilized;
    run["max_rounds"] = report.max_rounds;
    run["closure_rounds"] = report.closure_rounds;
    run["closure_changes"] = report.closure_changes;
    run["max_register_bits"] = report.max_register_bits;
    run["register_bit_budget"] = report.register_bit_budget;
    run["max_path_length"] = report.max_path_length;
    j["run"] = std::move(run);

    j["faults"] = Json::array();
    for (const auto& event : report.fault_events) {
        Json f;
        f["spec"] = event.description;
        f["step"] = event.step;
        f["round"] = event.round;
        f["recovered"] = event.recovered;
        f["recovery_rounds"] = event.recovery_rounds;
        f["registers_restored"] = event.registers_restored;
        j["faults"].push_back(std::move(f));
    }

    j["detection"] = outcome.detection ? detection_json(*outcome.detection) : Json(nullptr);
    j["certification"] = {{"match", outcome.certification.match},
                          {"mismatches", outcome.certification.mismatches}};
    return j;
}

std::string to_dot(const Graph& graph, const DetectionResult& detection) {
    auto blocks = detection.partition();
    std::vector<std::size_t> block_of(graph.node_count());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (NodeId v : blocks[b]) {
            block_of[v - 1] = b;
        }
    }

    std::ostringstream out;
    out << "graph ssbcc {\n";
    out << "  node [style=filled];\n";
    for (NodeId v = 1; v <= graph.node_count(); ++v) {
        double hue = static_cast<double>(block_of[v - 1]) / static_cast<double>(blocks.size());
        out << "  " << v << " [label=\"v" << v << "\", fillcolor=\"" << std::fixed << std::setprecision(3) << hue
            << " 0.350 1.000\"";
        if (detection.articulation_points.count(v)) {
            out << ", shape=doublecircle";
        } else {
            out << ", shape=circle";
        }
        out << "];\n";
    }
    for (const Edge& e : graph.edges()) {
        out << "  " << e.u << " -- " << e.v;
        if (detection.bridges.count(e)) {
            out << " [style=bold, color=red, penwidth=3];\n";
        } else if (detection.tree_edges.count(e)) {
            out << " [style=solid];\n";
        } else {
            out << " [style=dashed];\n";
        }
    }
    out << "}\n";
    return out.str();
}

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream file(path);
    if (!file) {
        throw UsageError("cannot write " + path);
    }
    file << text;
}

struct RunFlags {
    std::string graph;
    std::string generate;
    RunSettings settings;
    std::size_t max_rounds = 0;
    std::size_t closure_rounds = 0;
    std::size_t confirm_rounds = 2;
    std::string out;
    std::string dot;
};

std::string graph_spec_of(const std::string& graph, const std::string& generate) {
    if (graph.empty() == generate.empty()) {
        throw UsageError("give exactly one of --graph or --generate");
    }
    return graph.empty() ? generate : graph;
}

int cmd_run(RunFlags& flags, std::ostream& out) {
    flags.settings.graph_spec = graph_spec_of(flags.graph, flags.generate);
    Graph graph = resolve_graph(flags.settings.graph_spec);
    auto faults = parse_faults(flags.settings.faults);
    Scheduler scheduler = Scheduler::from_name(flags.settings.scheduler, flags.settings.seed);

    Network network(graph);
    RunOptions options;
    options.max_rounds = flags.max_rounds;
    options.closure_rounds = flags.closure_rounds;
    options.confirm_rounds = flags.confirm_rounds;
    options.fault_seed = flags.settings.seed;
    auto outcome = run_and_certify(network, scheduler, init_arbitrary(network, flags.settings.init_seed), faults,
                                   options);

    std::string text = report_json(graph, flags.settings, outcome).dump(2) + "\n";
    if (flags.out.empty()) {
        out << text;
    } else {
        write_text(flags.out, text);
    }
    if (!flags.dot.empty()) {
        if (!outcome.detection) {
            throw NotLegitimateError("cannot export DOT: run did not reach a legitimate configuration");
        }
        write_text(flags.dot, to_dot(graph, *outcome.detection));
    }
    return exit_code(outcome.run.report.stabilized, outcome.certification.match);
}

struct SweepFlags {
    std::string graphs;
    std::string seeds;
    std::vector<std::string> schedulers{"round-robin", "random", "weighted"};
    std::size_t max_rounds = 0;
    std::size_t closure_rounds = 0;
    std::string out;
};

int cmd_sweep(const SweepFlags& flags, std::ostream& out) {
    auto [first, last] = parse_seed_range(flags.seeds);
    auto specs = split(flags.graphs, ';');
    if (flags.graphs.empty() || specs.empty()) {
        throw UsageError("--graphs needs at least one graph spec");
    }
    for (const auto& name : flags.schedulers) {
        Scheduler::from_name(name, 0);
    }

    Json runs = Json::array();
    Json failures = Json::array();
    std::size_t stabilized = 0;
    std::size_t certified = 0;
    double max_ratio = 0.0;
    int worst = kExitOk;
    for (auto spec : specs) {
        for (std::uint64_t seed = first; seed <= last; ++seed) {
            Graph graph = resolve_graph(spec, seed);
            Network network(graph);
            const double scale = static_cast<double>(std::max<std::size_t>(graph.diameter(), 1) * graph.node_count() *
                                                     std::max<std::size_t>(graph.max_degree(), 1));
            for (const auto& name : flags.schedulers) {
                RunOptions options;
                options.max_rounds = flags.max_rounds;
                options.closure_rounds = flags.closure_rounds;
                auto outcome = run_and_certify(network, Scheduler::from_name(name, seed), init_arbitrary(network, seed),
                                               {}, options);
                const auto& report = outcome.run.report;
                bool ok_closure = report.closure_changes == 0;
                bool cert = outcome.certification.match && ok_closure;
                int code = exit_code(report.stabilized, cert);
                worst = std::max(worst, code);
                stabilized += report.stabilized;
                certified += report.stabilized && cert;
                double ratio = static_cast<double>(report.stabilization_round) / scale;
                if (report.stabilized) {
                    max_ratio = std::max(max_ratio, ratio);
                }

                Json row;
                row["graph"] = std::string(spec);
                row["seed"] = seed;
                row["scheduler"] = name;
                row["graph_info"] = graph_json(graph);
                row["stabilized"] = report.stabilized;
                row["certified"] = cert;
                row["stabilization_round"] = report.stabilization_round;
                row["ratio"] = ratio;
                row["closure_changes"] = report.closure_changes;
                runs.push_back(row);
                if (code != kExitOk) {
                    Json f;
                    f["graph"] = std::string(spec);
                    f["seed"] = seed;
                    f["scheduler"] = name;
                    f["exit"] = code;
                    f["mismatches"] = outcome.certification.mismatches;
                    failures.push_back(std::move(f));
                }
            }
        }
    }

    Json doc;
    doc["summary"] = {{"runs", runs.size()},       {"stabilized", stabilized}, {"certified", certified},
                      {"max_ratio", max_ratio},    {"ratio_limit", 10},        {"failures", failures}};
    doc["runs"] = std::move(runs);
    std::string text = doc.dump(2) + "\n";
    if (flags.out.empty()) {
        out << text;
    } else {
        write_text(flags.out, text);
    }
    return worst;
}

int cmd_export_dot(const std::string& graph_flag, const std::string& generate, const std::string& path,
                   std::ostream& out) {
    Graph graph = resolve_graph(graph_spec_of(graph_flag, generate));
    auto truth = oracle::ground_truth(graph);
    auto regs = truth.registers();
    std::string text = to_dot(graph, detect_from_registers(graph, regs));
    if (path.empty()) {
        out << text;
    } else {
        write_text(path, text);
    }
    return kExitOk;
}

}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Self-stabilizing bridge / articulation-point detection simulator"};
    app.require_subcommand(1);

    RunFlags run_flags;
    auto* run = app.add_subcommand("run", "Simulate one execution and certify the detected structure");
    run->add_option("--graph", run_flags.graph, "Graph file");
    run->add_option("--generate", run_flags.generate, "random:n,m[,seed] | clustered:kxsize[,seed] | figure1");
    run->add_option("--scheduler", run_flags.settings.scheduler, "round-robin | random | weighted")
        ->check(CLI::IsMember({"round-robin", "random", "weighted"}));
    run->add_option("--seed", run_flags.settings.seed, "Scheduler (and fault) seed");
    run->add_option("--init-seed", run_flags.settings.init_seed, "Seed of the arbitrary initial configuration");
    run->add_option("--max-rounds", run_flags.max_rounds, "Round budget per convergence phase (0: 10*d*n*Delta)");
    run->add_option("--faults", run_flags.settings.faults, "Fault list, e.g. 'post@3.count=7;post@random2'");
    run->add_option("--closure-rounds", run_flags.closure_rounds, "Rounds observed after stabilization");
    run->add_option("--confirm-rounds", run_flags.confirm_rounds, "Unchanged rounds required before declaring");
    run->add_option("--out", run_flags.out, "Write the JSON report here instead of stdout");
    run->add_option("--dot", run_flags.dot, "Also write a DOT rendering");

    SweepFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "Run a matrix of graphs x seeds x schedulers");
    sweep->add_option("--graphs", sweep_flags.graphs, "';'-separated graph specs; missing seeds take the sweep seed")
        ->required();
    sweep->add_option("--seeds", sweep_flags.seeds, "Inclusive range a..b")->required();
    sweep->add_option("--schedulers", sweep_flags.schedulers, "Subset of round-robin random weighted");
    sweep->add_option("--max-rounds", sweep_flags.max_rounds, "Round budget (0: 10*d*n*Delta)");
    sweep->add_option("--closure-rounds", sweep_flags.closure_rounds, "Rounds observed after stabilization");
    sweep->add_option("--out", sweep_flags.out, "Write the JSON summary here instead of stdout");

    std::string dot_graph, dot_generate, dot_out;
    auto* dot = app.add_subcommand("export-dot", "Render the ground-truth structure of a graph as DOT");
    dot->add_option("--graph", dot_graph, "Graph file");
    dot->add_option("--generate", dot_generate, "Generator spec");
    dot->add_option("--out", dot_out, "Output file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run->parsed()) {
            return cmd_run(run_flags, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_flags, out);
        }
        return cmd_export_dot(dot_graph, dot_generate, dot_out, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
    } catch (const GraphError& e) {
        err << "graph error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
    } catch (const std::out_of_range& e) {
        err << "usage error: " << e.what() << "\n";
    } catch (const NotLegitimateError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNotStabilized;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitUsage;
}

}
