#pragma once

#include <random>

#include "swarmcap/metrics.hpp"

namespace swarmcap {

// One uniformly chosen UAV performs a uniformly random legal action
// (stay included).
SwarmState random_moving_step(const SwarmState& state, const FlightVolume& volume,
                              std::mt19937_64& rng);

// Random deployment baseline: positions never change.
SwarmState static_deployment(const SwarmState& state);

enum class ExhaustiveMode { joint, sequential };

struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Global-information baselines. joint enumerates all 7^M action profiles
// (gated to M <= 4) and picks the potential-maximizing one; sequential
// cycles UAVs (slot mod M), each taking its potential-maximizing legal
// action. Ties resolve to the first profile in action enumeration order,
// so stay wins ties and the potential never decreases.
SwarmState exhaustive_step(const SwarmState& state, ExhaustiveMode mode,
                           const FlightVolume& volume, CorrelationCache& cache,
                           long slot);

}  // namespace swarmcap
