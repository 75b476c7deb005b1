#include "ssbcc/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace ssbcc {

namespace {

using Kind = GraphError::Kind;

std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto begin = s.find_first_not_of(ws);
    if (begin == std::string_view::npos) {
        return {};
    }
    auto end = s.find_last_not_of(ws);
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string_view> split_words(std::string_view s) {
    std::vector<std::string_view> words;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) {
            ++pos;
        }
        std::size_t start = pos;
        while (pos < s.size() && s[pos] != ' ' && s[pos] != '\t') {
            ++pos;
        }
        if (pos > start) {
            words.push_back(s.substr(start, pos - start));
        }
    }
    return words;
}

std::uint64_t parse_number(std::string_view word, std::size_t line) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc() || ptr != word.data() + word.size()) {
        throw GraphError(Kind::Syntax, "expected a non-negative integer, got '" + std::string(word) + "'", line);
    }
    return value;
}

}

Graph parse_graph(std::string_view text) {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    std::map<NodeId, std::vector<NodeId>> port_order;
    std::size_t last_line = 0;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        last_line = line_no;

        if (line.starts_with("ports")) {
            auto colon = line.find(':');
            if (!have_header || colon == std::string_view::npos) {
                throw GraphError(Kind::Syntax, "malformed ports line", line_no);
            }
            auto head = split_words(line.substr(0, colon));
            if (head.size() != 2 || head[0] != "ports") {
                throw GraphError(Kind::Syntax, "malformed ports line", line_no);
            }
            auto node = parse_number(head[1], line_no);
            if (node < 1 || node > node_count) {
                throw GraphError(Kind::NodeOutOfRange, "ports line for node " + std::to_string(node), line_no);
            }
            std::vector<NodeId> order;
            for (auto word : split_words(line.substr(colon + 1))) {
                auto other = parse_number(word, line_no);
                if (other < 1 || other > node_count) {
                    throw GraphError(Kind::NodeOutOfRange, "port target " + std::to_string(other), line_no);
                }
                order.push_back(static_cast<NodeId>(other));
            }
            if (!port_order.emplace(static_cast<NodeId>(node), std::move(order)).second) {
                throw GraphError(Kind::BadPorts, "second ports line for node " + std::to_string(node), line_no);
            }
            continue;
        }

        auto words = split_words(line);
        if (words.size() != 2) {
            throw GraphError(Kind::Syntax, "expected two integers", line_no);
        }
        auto a = parse_number(words[0], line_no);
        auto b = parse_number(words[1], line_no);
        if (!have_header) {
            node_count = a;
            edge_count = b;
            have_header = true;
            if (node_count == 0) {
                throw GraphError(Kind::NodeOutOfRange, "node count must be positive", line_no);
            }
            continue;
        }
        if (!port_order.empty()) {
            throw GraphError(Kind::Syntax, "edge line after ports lines", line_no);
        }
        if (edges.size() == edge_count) {
            throw GraphError(Kind::Syntax, "more edges than declared", line_no);
        }
        try {
            // per-edge checks so the error carries this line
            if (a < 1 || a > node_count || b < 1 || b > node_count) {
                throw GraphError(Kind::NodeOutOfRange, "edge endpoint outside [1," + std::to_string(node_count) + "]");
            }
            if (a == b) {
                throw GraphError(Kind::SelfLoop, "self-loop at node " + std::to_string(a));
            }
            Edge edge = Edge::canonical(static_cast<NodeId>(a), static_cast<NodeId>(b));
            if (!seen.insert(edge).second) {
                throw GraphError(Kind::DuplicateEdge, "duplicate edge (" + std::to_string(edge.u) + "," +
                                 std::to_string(edge.v) + ")");
            }
        } catch (const GraphError& err) {
            throw GraphError(err.kind(), err.what(), line_no);
        }
        edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
    }

    if (!have_header) {
        throw GraphError(Kind::Syntax, "missing 'n m' header", 1);
    }
    if (edges.size() != edge_count) {
        throw GraphError(Kind::Syntax, "declared " + std::to_string(edge_count) + " edges, found " +
                         std::to_string(edges.size()), last_line);
    }
    try {
        return Graph::build(node_count, edges, port_order);
    } catch (const GraphError& err) {
        throw GraphError(err.kind(), err.what(), last_line);
    }
}

Graph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open graph file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_graph(buffer.str());
}

std::string render_graph(const Graph& graph) {
    std::ostringstream out;
    out << graph.node_count() << ' ' << graph.edge_count() << '\n';
    for (const Edge& edge : graph.edges()) {
        out << edge.u << ' ' << edge.v << '\n';
    }
    for (NodeId node = 1; node <= graph.node_count(); ++node) {
        auto list = graph.neighbors(node);
        if (list.empty()) {
            continue;
        }
        out << "ports " << node << ':';
        for (NodeId other : list) {
            out << ' ' << other;
        }
        out << '\n';
    }
    return out.str();
}

}
