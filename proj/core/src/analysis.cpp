#include "ssbcc/analysis.hpp"

#include <algorithm>
#include <map>

#include "ssbcc/generators.hpp"

namespace ssbcc {

oracle::Partition DetectionResult::partition() const {
    std::map<PathValue, std::vector<NodeId>, decltype(&lex_less)> blocks(&lex_less);
    for (std::size_t i = 0; i < component_of.size(); ++i) {
        blocks[component_of[i]].push_back(static_cast<NodeId>(i + 1));
    }
    oracle::Partition out;
    for (auto& [label, members] : blocks) {
        out.push_back(std::move(members));
    }
    return oracle::canonical(std::move(out));
}

DetectionResult detect_from_registers(const Graph& graph, std::span<const Register> registers) {
    const std::size_t n = graph.node_count();
    if (registers.size() != n) {
        throw std::invalid_argument("one register per node required");
    }
    DetectionResult result;
    result.component_of.reserve(n);
    for (const auto& reg : registers) {
        result.component_of.push_back(reg.bcc);
    }

    for (NodeId node = 1; node <= n; ++node) {
        const Register& mine = registers[node - 1];
        std::vector<NodeId> children;
        std::vector<NodeId> incoming_from;
        bool has_parent = false;
        for (Port port = 1; port <= graph.degree(node); ++port) {
            NodeId other = graph.neighbor(node, port);
            switch (classify_link(mine.path, registers[other - 1].path, port, graph.back_port(node, port))) {
            case LinkClass::Parent:
                has_parent = true;
                if (node != kRoot && mine.count == 0) {
                    result.bridges.insert(Edge::canonical(node, other));
                }
                break;
            case LinkClass::Child:
                children.push_back(other);
                result.tree_edges.insert(Edge::canonical(node, other));
                break;
            case LinkClass::IncomingNonTree:
                incoming_from.push_back(other);
                break;
            default:
                break;
            }
        }

        if (node == kRoot) {
            if (children.size() >= 2) {
                result.articulation_points.insert(node);
            }
            continue;
        }
        if (!has_parent) {
            continue;
        }
        for (NodeId child : children) {
            const PathValue& child_path = registers[child - 1].path;
            std::int64_t incoming = 0;
            for (NodeId low : incoming_from) {
                incoming += child_path.is_prefix_of(registers[low - 1].path);
            }
            if (registers[child - 1].count == incoming) {
                result.articulation_points.insert(node);
                break;
            }
        }
    }

    for (const Edge& bridge : result.bridges) {
        for (NodeId end : {bridge.u, bridge.v}) {
            if (graph.degree(end) >= 2) {
                result.bridge_endpoints.insert(end);
            }
        }
    }
    return result;
}

DetectionResult extract(const Network& network, const Configuration& config) {
    if (!network.is_legitimate(config)) {
        throw NotLegitimateError("configuration is not legitimate; refusing to extract");
    }
    return detect_from_registers(network.graph(), config.registers());
}

namespace {

std::string edge_name(const Edge& e) { return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")"; }

std::string block_name(const std::vector<NodeId>& block) {
    std::string out = "{";
    for (std::size_t i = 0; i < block.size(); ++i) {
        out += (i > 0 ? "," : "") + std::to_string(block[i]);
    }
    return out + "}";
}

}

Certification certify(const DetectionResult& result, const Graph& graph) {
    Certification cert;
    auto& out = cert.mismatches;

    auto bridges = oracle::brute_bridges(graph);
    for (const Edge& e : result.bridges) {
        if (!bridges.count(e)) {
            out.push_back("reported bridge " + edge_name(e) + " is not a bridge");
        }
    }
    for (const Edge& e : bridges) {
        if (!result.bridges.count(e)) {
            out.push_back("bridge " + edge_name(e) + " not reported");
        }
    }

    auto points = oracle::brute_articulation_points(graph);
    for (NodeId v : result.articulation_points) {
        if (!points.count(v)) {
            out.push_back("reported articulation point " + std::to_string(v) + " is not one");
        }
    }
    for (NodeId v : points) {
        if (!result.articulation_points.count(v)) {
            out.push_back("articulation point " + std::to_string(v) + " not reported");
        }
    }
    for (NodeId v : result.bridge_endpoints) {
        if (!result.articulation_points.count(v)) {
            out.push_back("bridge endpoint " + std::to_string(v) + " of degree >= 2 missing from articulation points");
        }
    }

    auto expected = oracle::brute_bcc_partition(graph);
    auto got = result.partition();
    if (got != expected) {
        for (const auto& block : got) {
            if (std::find(expected.begin(), expected.end(), block) == expected.end()) {
                out.push_back("component " + block_name(block) + " is not a bridge-connected component");
            }
        }
        for (const auto& block : expected) {
            if (std::find(got.begin(), got.end(), block) == got.end()) {
                out.push_back("component " + block_name(block) + " not reported");
            }
        }
    }
    cert.match = out.empty();
    return cert;
}

CertifiedRun run_and_certify(const Network& network, Scheduler scheduler, Configuration init,
                             std::span<const FaultSpec> faults, const RunOptions& options) {
    CertifiedRun out;
    out.run = run(network, std::move(scheduler), std::move(init), faults, options);
    if (network.is_legitimate(out.run.final_config)) {
        out.detection = extract(network, out.run.final_config);
        out.certification = certify(*out.detection, network.graph());
    } else {
        out.certification.mismatches.push_back("final configuration is not legitimate");
    }
    return out;
}

bool alpha_independence(const Graph& graph, std::size_t shuffles, std::uint64_t seed) {
    std::optional<DetectionResult> first;
    for (std::size_t k = 0; k < shuffles; ++k) {
        Network network(shuffle_ports(graph, seed + k));
        auto outcome = run_and_certify(network, Scheduler::uniform(seed + k), init_arbitrary(network, seed + k));
        if (!outcome.run.report.stabilized || !outcome.detection) {
            return false;
        }
        const auto& current = *outcome.detection;
        if (!first) {
            first = current;
            continue;
        }
        if (current.bridges != first->bridges || current.articulation_points != first->articulation_points ||
            current.partition() != first->partition()) {
            return false;
        }
    }
    return true;
}

}
