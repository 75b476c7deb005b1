#include "doctest.h"

#include "ssbcc/register_codec.hpp"
#include "ssbcc/simulator.hpp"
#include "test_support.hpp"

using namespace ssbcc;

namespace {

PathValue P(const char* text) { return PathValue::parse(text); }

FaultSpec post(std::vector<FaultTarget> targets, std::optional<FaultValue> value = std::nullopt) {
    FaultSpec f;
    f.targets = std::move(targets);
    f.value = std::move(value);
    return f;
}

}

TEST_CASE("legitimate configuration is a fixpoint") {
    for (const Graph& g : test::sample_graphs(15, 16, 71)) {
        Network net(g);
        Configuration c = net.legitimate_configuration();
        CHECK(net.is_legitimate(c));
        Configuration start = c;
        Scheduler s = Scheduler::uniform(g.node_count());
        s.reset(g.node_count());
        for (int i = 0; i < 5000; ++i) {
            CHECK_FALSE(net.step(c, s.next()).register_changed);
        }
        CHECK(c.registers() == start.registers());
    }
}

TEST_CASE("init_arbitrary is deterministic and in bounds") {
    Network net(figure1());
    CHECK(init_arbitrary(net, 3) == init_arbitrary(net, 3));
    CHECK_FALSE(init_arbitrary(net, 3) == init_arbitrary(net, 4));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Configuration c = init_arbitrary(net, seed);
        for (NodeId v = 1; v <= 16; ++v) {
            const auto& st = c.at(v);
            CHECK(st.pc < net.program(v).size());
            CHECK(st.reg.path.size() >= 1);
            CHECK(st.reg.path.size() <= 16);
            CHECK(st.reg.count >= -256);
            CHECK(st.reg.count <= 256);
            CHECK_NOTHROW(encoded_bits(st.reg, net.bounds()));
        }
    }
}

TEST_CASE("default round budget") {
    CHECK(default_max_rounds(figure1()) == 10 * 7 * 16 * 4);
    CHECK(default_max_rounds(Graph::build(1, std::vector<Edge>{})) == 10);
}

TEST_CASE("figure1 stabilizes under every strategy") {
    Network net(figure1());
    for (const char* name : {"round-robin", "random", "weighted"}) {
        RunOptions opt;
        opt.closure_rounds = 20;
        auto result = run(net, Scheduler::from_name(name, 9), init_arbitrary(net, 9), {}, opt);
        const auto& r = result.report;
        CHECK(r.stabilized);
        CHECK(r.oracle_match);
        CHECK(r.closure_rounds == 20);
        CHECK(r.closure_changes == 0);
        CHECK(r.stabilization_round <= r.rounds);
        CHECK(r.max_register_bits <= r.register_bit_budget);
        CHECK(r.max_path_length <= 16);
        CHECK(net.is_legitimate(result.final_config));
        auto counts = result.final_config.registers();
        for (NodeId v : {4, 6, 11, 14}) {
            CHECK(counts[v - 1].count == 0);
        }
    }
}

TEST_CASE("runs are reproducible") {
    Network net(generate_random_connected(14, 8, 2));
    RunOptions opt;
    opt.keep_round_snapshots = true;
    opt.log_steps = true;
    auto a = run(net, Scheduler::weighted(4), init_arbitrary(net, 8), {}, opt);
    auto b = run(net, Scheduler::weighted(4), init_arbitrary(net, 8), {}, opt);
    CHECK(a.report.total_steps == b.report.total_steps);
    CHECK(a.final_config == b.final_config);
    CHECK(a.trace.schedule == b.trace.schedule);
    CHECK(a.trace.schedule.size() == a.report.total_steps);
    CHECK(a.trace.round_snapshots.size() == a.report.rounds);
    CHECK(round_boundaries(a.trace.schedule, 14).size() == a.report.rounds);
}

TEST_CASE("exhausted budget reports no stabilization") {
    Network net(figure1());
    RunOptions opt;
    opt.max_rounds = 2;
    auto result = run(net, Scheduler::round_robin(), init_arbitrary(net, 1), {}, opt);
    CHECK_FALSE(result.report.stabilized);
    CHECK(result.report.rounds <= 2);
}

TEST_CASE("garbage cycle of full-length paths is escaped") {
    // r - a, a - b, a - c, b - c; b and c start pointing at each other with
    // paths that already fill all N slots
    Graph g = Graph::build(4, std::vector<Edge>{{1, 2}, {2, 3}, {2, 4}, {3, 4}});
    Network net(g);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Configuration c = init_arbitrary(net, seed);
        for (NodeId v : {3, 4}) {
            c.at(v).reg.path = P("⊥.1.1.1");
            c.at(v).locals.read_path.assign(g.degree(v), P("⊥.1.1.1"));
        }
        c.at(2).reg.path = P("⊥.1.1.1");
        auto result = run(net, Scheduler::from_name(seed % 2 ? "random" : "round-robin", seed), c, {});
        CHECK(result.report.stabilized);
        CHECK(result.report.oracle_match);
    }
}

TEST_CASE("inject_fault") {
    Network net(figure1());
    Configuration good = net.legitimate_configuration();

    SUBCASE("explicit count at the root") {
        Configuration bad = inject_fault(net, good, post({{1, FaultField::Count}}, std::int64_t{7}), 0);
        CHECK(bad.at(1).reg.count == 7);
        CHECK_FALSE(net.is_legitimate(bad));
        for (NodeId v = 2; v <= 16; ++v) {
            CHECK(bad.at(v) == good.at(v));
        }
        FaultSpec f = post({{1, FaultField::Count}}, std::int64_t{7});
        auto result = run(net, Scheduler::round_robin(), bad, {});
        CHECK(result.report.stabilized);
        CHECK(result.final_config.registers() == good.registers());
        CHECK(f.describe() == "post@1.count=7");
    }
    SUBCASE("empty fault is the identity") {
        CHECK(inject_fault(net, good, FaultSpec{}, 5) == good);
    }
    SUBCASE("explicit paths") {
        auto bad = inject_fault(net, good, post({{5, FaultField::Bcc}}, P("⊥.2")), 0);
        CHECK(bad.at(5).reg.bcc == P("⊥.2"));
    }
    SUBCASE("random fields are deterministic") {
        FaultSpec f;
        f.random_fields = 3;
        CHECK(inject_fault(net, good, f, 11) == inject_fault(net, good, f, 11));
        CHECK(f.describe() == "post@random3");
    }
    SUBCASE("all registers") {
        FaultSpec f;
        f.all_registers = true;
        auto bad = inject_fault(net, good, f, 2);
        CHECK_FALSE(bad.registers() == good.registers());
        for (const auto& reg : bad.registers()) {
            CHECK_NOTHROW(encoded_bits(reg, net.bounds()));
        }
    }
    SUBCASE("invalid requests throw") {
        CHECK_THROWS_AS(inject_fault(net, good, post({{17, FaultField::Path}}), 0), std::out_of_range);
        CHECK_THROWS_AS(inject_fault(net, good, post({{0, FaultField::Path}}), 0), std::out_of_range);
        CHECK_THROWS_AS(inject_fault(net, good, post({{2, FaultField::Count}}, std::int64_t{257}), 0),
                        std::out_of_range);
        CHECK_THROWS_AS(inject_fault(net, good, post({{2, FaultField::Count}}, P("⊥")), 0), std::invalid_argument);
        CHECK_THROWS_AS(inject_fault(net, good, post({{2, FaultField::Path}}, std::int64_t{1}), 0),
                        std::invalid_argument);
        CHECK_THROWS_AS(inject_fault(net, good, post({{2, FaultField::Path}}, P("⊥.5")), 0), std::out_of_range);
    }
}

TEST_CASE("faults during a run") {
    Network net(figure1());
    std::vector<FaultSpec> faults(2);
    faults[0].targets = {{6, FaultField::Path}};
    faults[1].all_registers = true;
    FaultSpec early;
    early.trigger = FaultSpec::Trigger::AtStep;
    early.step = 50;
    early.random_fields = 2;
    faults.push_back(early);

    RunOptions opt;
    opt.fault_seed = 3;
    auto result = run(net, Scheduler::uniform(3), init_arbitrary(net, 3), faults, opt);
    REQUIRE(result.report.fault_events.size() == 3);
    CHECK(result.report.fault_events[0].step == 50);
    CHECK(result.report.fault_events[0].description == "50@random2");
    for (const auto& event : result.report.fault_events) {
        CHECK(event.recovered);
    }
    CHECK(result.report.fault_events[1].registers_restored);
    CHECK(result.report.fault_events[2].registers_restored);
    CHECK(result.report.stabilized);
}
