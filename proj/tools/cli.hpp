#ifndef ssbcc_tools_cli_hpp
#define ssbcc_tools_cli_hpp

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ssbcc/analysis.hpp"
#include "ssbcc/graph.hpp"
#include "ssbcc/simulator.hpp"

namespace ssbcc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotStabilized = 1;
inline constexpr int kExitMismatch = 2;
inline constexpr int kExitUsage = 64;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// "figure1", "random:n,m[,seed]" (m = total edges), "clustered:kxsize[,seed]",
// or a graph file path. A missing seed falls back to `default_seed`, then 1.
Graph resolve_graph(std::string_view spec, std::optional<std::uint64_t> default_seed = std::nullopt);

// TRIGGER@TARGET[,TARGET...] items separated by ';'
//   TRIGGER = post | <step>
//   TARGET  = all | random<k> | <node>.<path|count|bcc|pc|locals>[=value]
std::vector<FaultSpec> parse_faults(std::string_view text);

// "a..b" inclusive; throws UsageError when empty or malformed
std::pair<std::uint64_t, std::uint64_t> parse_seed_range(std::string_view text);

int exit_code(bool stabilized, bool certified);

using Json = nlohmann::ordered_json;

struct RunSettings {
    std::string graph_spec;
    std::string scheduler = "round-robin";
    std::uint64_t seed = 1;
    std::uint64_t init_seed = 1;
    std::string faults;
};

Json graph_json(const Graph& graph);
Json detection_json(const DetectionResult& detection);
Json report_json(const Graph& graph, const RunSettings& settings, const CertifiedRun& outcome);

// Tree links solid, non-tree links dashed, bridges bold red, articulation
// points double circles, one fill color per component.
std::string to_dot(const Graph& graph, const DetectionResult& detection);

// Entry point shared by the executable and the tests.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}

#endif /* ssbcc_tools_cli_hpp */
