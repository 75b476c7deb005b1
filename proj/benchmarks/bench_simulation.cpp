#include <benchmark/benchmark.h>

#include "ssbcc/analysis.hpp"
#include "ssbcc/generators.hpp"
#include "ssbcc/oracle.hpp"
#include "ssbcc/register_codec.hpp"
#include "ssbcc/simulator.hpp"

namespace {

using namespace ssbcc;

void BM_StabilizeRandom(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Network network(generate_random_connected(n, n / 2, 7));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto result = run(network, Scheduler::uniform(seed), init_arbitrary(network, seed), {});
        benchmark::DoNotOptimize(result.report.stabilization_round);
        ++seed;
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StabilizeRandom)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_StabilizeClustered(benchmark::State& state) {
    Network network(generate_clustered(static_cast<std::size_t>(state.range(0)), 5, 3));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto result = run(network, Scheduler::round_robin(), init_arbitrary(network, seed++), {});
        benchmark::DoNotOptimize(result.report.rounds);
    }
}
BENCHMARK(BM_StabilizeClustered)->DenseRange(2, 8, 2);

void BM_Step(benchmark::State& state) {
    Network network(generate_random_connected(32, 16, 11));
    Configuration config = init_arbitrary(network, 1);
    Scheduler scheduler = Scheduler::uniform(5);
    scheduler.reset(network.graph().node_count());
    for (auto _ : state) {
        benchmark::DoNotOptimize(network.step(config, scheduler.next()));
    }
}
BENCHMARK(BM_Step);

void BM_GroundTruth(benchmark::State& state) {
    Graph graph = generate_random_connected(static_cast<std::size_t>(state.range(0)), 20, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::ground_truth(graph));
    }
}
BENCHMARK(BM_GroundTruth)->Arg(16)->Arg(64);

void BM_EncodeRegister(benchmark::State& state) {
    Network network(generate_random_connected(40, 20, 2));
    auto regs = network.truth().registers();
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(encode_register(regs[i++ % regs.size()], network.bounds()));
    }
}
BENCHMARK(BM_EncodeRegister);

}

BENCHMARK_MAIN();
