#include "ssbcc/scheduler.hpp"

#include <stdexcept>

namespace ssbcc {

Scheduler Scheduler::round_robin() { return Scheduler(Kind::RoundRobin, 0); }

Scheduler Scheduler::uniform(std::uint64_t seed) { return Scheduler(Kind::UniformRandom, seed); }

Scheduler Scheduler::weighted(std::uint64_t seed, std::vector<std::uint32_t> weights) {
    for (auto w : weights) {
        if (w == 0) {
            throw std::invalid_argument("scheduler weights must be positive");
        }
    }
    Scheduler s(Kind::WeightedRandom, seed);
    s.requested_weights_ = std::move(weights);
    return s;
}

Scheduler Scheduler::from_name(std::string_view name, std::uint64_t seed) {
    if (name == "round-robin") {
        return round_robin();
    }
    if (name == "random") {
        return uniform(seed);
    }
    if (name == "weighted") {
        return weighted(seed);
    }
    throw std::invalid_argument("unknown scheduler '" + std::string(name) + "'");
}

std::string Scheduler::name() const {
    switch (kind_) {
    case Kind::RoundRobin: return "round-robin";
    case Kind::UniformRandom: return "random";
    case Kind::WeightedRandom: return "weighted";
    }
    return "unknown";
}

void Scheduler::reset(std::size_t node_count) {
    node_count_ = node_count;
    position_ = 0;
    rng_.seed(seed_);
    weights_.clear();
    cumulative_.clear();
    if (kind_ != Kind::WeightedRandom) {
        return;
    }
    if (!requested_weights_.empty()) {
        if (requested_weights_.size() != node_count) {
            throw std::invalid_argument("one scheduler weight per processor required");
        }
        weights_ = requested_weights_;
    } else {
        for (std::size_t i = 0; i < node_count; ++i) {
            weights_.push_back(static_cast<std::uint32_t>(rng_() % 8 + 1));
        }
    }
    std::uint64_t total = 0;
    for (auto w : weights_) {
        total += w;
        cumulative_.push_back(total);
    }
}

NodeId Scheduler::next() {
    if (node_count_ == 0) {
        throw std::logic_error("scheduler used before reset()");
    }
    switch (kind_) {
    case Kind::RoundRobin: {
        auto node = static_cast<NodeId>(position_ + 1);
        position_ = (position_ + 1) % node_count_;
        return node;
    }
    case Kind::UniformRandom:
        return static_cast<NodeId>(rng_() % node_count_ + 1);
    case Kind::WeightedRandom: {
        std::uint64_t ticket = rng_() % cumulative_.back();
        std::size_t lo = 0;
        std::size_t hi = cumulative_.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (cumulative_[mid] > ticket) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        return static_cast<NodeId>(lo + 1);
    }
    }
    throw std::logic_error("unknown scheduler kind");
}

RoundTracker::RoundTracker(std::size_t node_count) : seen_(node_count, false), missing_(node_count) {}

bool RoundTracker::observe(NodeId node) {
    if (!seen_.at(node - 1)) {
        seen_[node - 1] = true;
        --missing_;
    }
    if (missing_ == 0) {
        reset();
        return true;
    }
    return false;
}

void RoundTracker::reset() {
    seen_.assign(seen_.size(), false);
    missing_ = seen_.size();
}

std::vector<std::size_t> round_boundaries(std::span<const NodeId> schedule, std::size_t node_count) {
    RoundTracker tracker(node_count);
    std::vector<std::size_t> boundaries;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (tracker.observe(schedule[i])) {
            boundaries.push_back(i + 1);
        }
    }
    return boundaries;
}

}
