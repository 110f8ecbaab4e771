#include "swarmcap/baselines.hpp"

#include "swarmcap/rng.hpp"

namespace swarmcap {

SwarmState random_moving_step(const SwarmState& state, const FlightVolume& volume,
                              std::mt19937_64& rng) {
  const int m = uniform_index(rng, state.size());
  const std::vector<Action> legal = restricted_actions(state, m, volume);
  const Action a = legal[uniform_index(rng, static_cast<int>(legal.size()))];
  return apply_action(state, m, a, volume);
}

SwarmState static_deployment(const SwarmState& state) {
  SwarmState next = state;
  next.iteration += 1;
  return next;
}

namespace {

SwarmState sequential_step(const SwarmState& state, const FlightVolume& volume,
                           CorrelationCache& cache, long slot) {
  const int m = static_cast<int>(slot % state.size());
  Action best = Action::stay;
  double best_phi = -std::numeric_limits<double>::infinity();
  for (Action a : restricted_actions(state, m, volume)) {
    const GridPoint target = state.positions[m] + action_delta(a);
    SwarmState probe = state;
    probe.positions[m] = target;
    const double phi = potential(probe, cache);
    if (phi > best_phi) {
      best_phi = phi;
      best = a;
    }
  }
  return apply_action(state, m, best, volume);
}

SwarmState joint_step(const SwarmState& state, const FlightVolume& volume,
                      CorrelationCache& cache) {
  const int m = state.size();
  if (m > 4) {
    throw InfeasibleError("exhaustive-joint: refusing to enumerate 7^M profiles for M > 4");
  }
  std::vector<int> profile(m, 0);
  std::vector<int> best_profile;
  double best_phi = -std::numeric_limits<double>::infinity();
  SwarmState probe = state;
  while (true) {
    bool legal = true;
    for (int i = 0; i < m && legal; ++i) {
      const GridPoint target = state.positions[i] + action_delta(kAllActions[profile[i]]);
      if (!volume.contains(target)) legal = false;
      probe.positions[i] = target;
    }
    if (legal) {
      for (int i = 0; i < m && legal; ++i) {
        for (int j = i + 1; j < m && legal; ++j) {
          if (probe.positions[i] == probe.positions[j]) legal = false;
        }
      }
    }
    if (legal) {
      const double phi = potential(probe, cache);
      if (phi > best_phi) {
        best_phi = phi;
        best_profile = profile;
      }
    }
    int k = m - 1;
    while (k >= 0 && profile[k] == 6) {
      profile[k] = 0;
      --k;
    }
    if (k < 0) break;
    ++profile[k];
  }
  SwarmState next = state;
  for (int i = 0; i < m; ++i) {
    next.positions[i] = state.positions[i] + action_delta(kAllActions[best_profile[i]]);
  }
  next.iteration = state.iteration + 1;
  return next;
}

}  // namespace

SwarmState exhaustive_step(const SwarmState& state, ExhaustiveMode mode,
                           const FlightVolume& volume, CorrelationCache& cache,
                           long slot) {
  if (mode == ExhaustiveMode::sequential) return sequential_step(state, volume, cache, slot);
  return joint_step(state, volume, cache);
}

}  // namespace swarmcap
