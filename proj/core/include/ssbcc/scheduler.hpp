#ifndef ssbcc_scheduler_hpp
#define ssbcc_scheduler_hpp

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssbcc/graph.hpp"

namespace ssbcc {

// The daemon: picks the single processor that takes the next atomic step.
// All strategies are fair (random ones with probability 1).
class Scheduler {
public:
    enum class Kind { RoundRobin, UniformRandom, WeightedRandom };

    static Scheduler round_robin();
    static Scheduler uniform(std::uint64_t seed);
    // Empty weights are drawn from the seed, uniformly in [1, 8].
    // Throws std::invalid_argument on a zero weight.
    static Scheduler weighted(std::uint64_t seed, std::vector<std::uint32_t> weights = {});

    // "round-robin", "random" or "weighted"
    static Scheduler from_name(std::string_view name, std::uint64_t seed);

    Kind kind() const { return kind_; }
    std::uint64_t seed() const { return seed_; }
    std::string name() const;

    // Restarts the strategy for a system of n processors.
    void reset(std::size_t node_count);
    NodeId next();

    // effective weights after reset (weighted strategy only)
    const std::vector<std::uint32_t>& weights() const { return weights_; }

private:
    Scheduler(Kind kind, std::uint64_t seed) : kind_(kind), seed_(seed) {}

    Kind kind_;
    std::uint64_t seed_ = 0;
    std::vector<std::uint32_t> requested_weights_;
    std::vector<std::uint32_t> weights_;
    std::vector<std::uint64_t> cumulative_;
    std::size_t node_count_ = 0;
    std::size_t position_ = 0;
    std::mt19937_64 rng_;
};

// Greedy round segmentation: a round ends at the first step after which
// every processor has been activated since the previous boundary.
class RoundTracker {
public:
    explicit RoundTracker(std::size_t node_count);

    // true when this activation closes a round
    bool observe(NodeId node);
    void reset();

private:
    std::vector<bool> seen_;
    std::size_t missing_;
};

// Step counts (1-based prefix lengths) at which rounds end.
std::vector<std::size_t> round_boundaries(std::span<const NodeId> schedule, std::size_t node_count);

}

#endif /* ssbcc_scheduler_hpp */
