#include "doctest.h"

#include <random>

#include "ssbcc/protocol.hpp"
#include "ssbcc/simulator.hpp"
#include "test_support.hpp"

using namespace ssbcc;

namespace {

PathValue P(const char* text) { return PathValue::parse(text); }

// Neighbor registers of one node that counts every read.
class CountingNeighbors : public NeighborRegisters {
public:
    CountingNeighbors(const Graph& g, const Configuration& c, NodeId node) : g_(g), c_(c), node_(node) {}
    const Register& read(Port port) const override {
        ++reads;
        last_port = port;
        return c_.at(g_.neighbor(node_, port)).reg;
    }
    mutable int reads = 0;
    mutable Port last_port = 0;

private:
    const Graph& g_;
    const Configuration& c_;
    NodeId node_;
};

}

TEST_CASE("link classification") {
    // node with path ⊥.3.1 whose parent reaches it through port 1
    PathValue me = P("⊥.3.1");
    CHECK(classify_link(me, P("⊥.3"), 1, 1) == LinkClass::Parent);
    CHECK(classify_link(me, P("⊥.3"), 1, 2) == LinkClass::OutgoingNonTree);
    CHECK(classify_link(me, P("⊥.3.1.2"), 2, 1) == LinkClass::Child);
    CHECK(classify_link(me, P("⊥.3.1.2"), 3, 1) == LinkClass::IncomingNonTree);
    CHECK(classify_link(me, P("⊥.3.1.2.3"), 2, 1) == LinkClass::IncomingNonTree);
    CHECK(classify_link(me, P("⊥"), 2, 2) == LinkClass::OutgoingNonTree);
    CHECK(classify_link(me, P("⊥.1"), 2, 2) == LinkClass::Unclassified);
    CHECK(classify_link(me, me, 2, 2) == LinkClass::Unclassified);
    CHECK(std::string(to_string(LinkClass::IncomingNonTree)) == "incoming");
}

TEST_CASE("classification on figure1 ground truth matches the tree") {
    Graph g = figure1();
    auto truth = oracle::ground_truth(g);
    for (NodeId v = 1; v <= g.node_count(); ++v) {
        for (Port p = 1; p <= g.degree(v); ++p) {
            NodeId w = g.neighbor(v, p);
            auto link = classify_link(truth.paths[v - 1], truth.paths[w - 1], p, g.back_port(v, p));
            if (truth.tree.parent[v - 1] == w) {
                CHECK(link == LinkClass::Parent);
            } else if (truth.tree.parent[w - 1] == v) {
                CHECK(link == LinkClass::Child);
            } else {
                CHECK((link == LinkClass::IncomingNonTree || link == LinkClass::OutgoingNonTree));
            }
        }
    }
    // node 4 sees the back edge from 10 as incoming, 10 sees it as outgoing
    CHECK(classify_link(truth.paths[3], truth.paths[9], 2, 2) == LinkClass::IncomingNonTree);
    CHECK(classify_link(truth.paths[9], truth.paths[3], 2, 2) == LinkClass::OutgoingNonTree);
}

TEST_CASE("path selection") {
    std::vector<PathValue> reads{P("⊥.2"), P("⊥")};
    std::vector<Port> back{1, 3};
    CHECK(select_path(reads, back, 8) == P("⊥.2.1"));
    back = {1, 1};
    CHECK(select_path(reads, back, 8) == P("⊥.1"));
    CHECK(select_path({}, {}, 8) == PathValue::root());

    // a candidate that would exceed N ranks behind every fitting one
    std::vector<PathValue> garbage{P("⊥.1.1.1"), P("⊥.1")};
    std::vector<Port> ports{1, 2};
    CHECK(select_path(garbage, ports, 4) == P("⊥.1.2"));
    // among overflowing candidates the cut minimum wins
    std::vector<PathValue> both{P("⊥.2.1.1"), P("⊥.1.1.1")};
    CHECK(select_path(both, ports, 4) == P("⊥.1.1.1"));
}

TEST_CASE("program shapes") {
    CHECK(root_program().size() == 3);
    for (std::size_t d = 1; d <= 6; ++d) {
        auto prog = nonroot_program(d);
        CHECK(prog.size() == 4 * d + 6);
        CHECK(max_accesses_per_cycle(d) == 2 * d + 6);
        CHECK(prog.front().op == Opcode::ReadNeighborPath);
        CHECK(prog[d].op == Opcode::WritePath);
        CHECK(prog[d + 1].op == Opcode::ReadOwnPathForCount);
        CHECK(prog[2 * d + 2].op == Opcode::WriteCount);
        CHECK(prog.back().op == Opcode::WriteParentBcc);
    }
}

TEST_CASE("count clamping") {
    Bounds b = Bounds::for_graph(figure1());
    CHECK(b.path_bound == 16);
    CHECK(b.count_bound == 256);
    CHECK(b.max_symbol == 4);
    CHECK(b.clamp_count(300) == 256);
    CHECK(b.clamp_count(-300) == -256);
    CHECK(b.clamp_count(-5) == -5);
}

TEST_CASE("every step performs exactly one register access") {
    for (const Graph& g : test::sample_graphs(12, 14, 41)) {
        Network net(g);
        Configuration config = init_arbitrary(net, g.node_count());
        std::mt19937_64 rng(g.edge_count());
        for (int i = 0; i < 3000; ++i) {
            NodeId v = static_cast<NodeId>(rng() % g.node_count() + 1);
            ProcessorState& state = config.at(v);
            Register before = state.reg;
            CountingNeighbors neighbors(g, config, v);
            Configuration snapshot = config;
            auto outcome = execute_step(state, net.program(v), net.view(v), net.bounds(), neighbors);

            CHECK(neighbors.reads == (outcome.access == Access::ReadNeighbor ? 1 : 0));
            if (outcome.access == Access::ReadNeighbor) {
                CHECK(neighbors.last_port == outcome.port);
            }
            CHECK(outcome.register_changed == !(state.reg == before));
            if (outcome.access != Access::WriteOwn) {
                CHECK(state.reg == before);
            }
            for (NodeId u = 1; u <= g.node_count(); ++u) {
                if (u != v) {
                    CHECK(config.at(u) == snapshot.at(u));
                }
            }
        }
    }
}

TEST_CASE("execute_step is total on corrupted states") {
    Graph g = figure1();
    Network net(g);
    std::mt19937_64 rng(7);
    CHECK_NOTHROW([&] {
        for (int trial = 0; trial < 500; ++trial) {
            Configuration config = init_arbitrary(net, trial);
            NodeId v = static_cast<NodeId>(rng() % 16 + 1);
            auto& st = config.at(v);
            st.pc = rng();
            st.locals.read_path.resize(rng() % 7);
            st.locals.read_count.resize(rng() % 7);
            st.locals.read_bcc.clear();
            st.locals.path = PathValue{};
            st.locals.count = static_cast<std::int64_t>(rng()) % 1000000;
            for (int k = 0; k < 40; ++k) {
                net.step(config, v);
            }
            CHECK(config.at(v).pc < net.program(v).size());
        }
    }());
}

TEST_CASE("cycle completion is flagged once per loop") {
    Network net(test::triangle());
    Configuration config = net.legitimate_configuration();
    std::vector<int> flagged_at;
    for (int i = 1; i <= 100; ++i) {
        if (net.step(config, 2).cycle_completed) {
            flagged_at.push_back(i);
        }
    }
    // node 2: two path reads and a write, own path, the child's count and a
    // write, own count and path, then the parent's bcc and a write. The wrap
    // is noticed by the first access of the next loop.
    REQUIRE(flagged_at.size() == 9);
    for (std::size_t k = 0; k < flagged_at.size(); ++k) {
        CHECK(flagged_at[k] == 11 + 10 * static_cast<int>(k));
    }
}
