#pragma once

#include <optional>
#include <random>

#include "swarmcap/config.hpp"
#include "swarmcap/metrics.hpp"
#include "swarmcap/schedule.hpp"

namespace swarmcap {

// One slot of the learning loop.
struct StepOutcome {
  int chosen_uav = -1;
  bool explored = false;
  Action proposed_action = Action::stay;
  bool accepted = false;
  double acceptance_probability = 0.0;
  double reward_prev = 0.0;
  double reward_explored = 0.0;
};

// Algorithm step 3: exactly one UAV may act per slot, chosen uniformly.
int select_uav(const SwarmState& state, std::mt19937_64& rng);

struct Proposal {
  bool explored = false;
  Action action = Action::stay;
};

// Exploration rule: keep the current action with probability 1 - eps,
// otherwise draw uniformly from the restricted action space minus stay.
// Forced to keep when stay is the only legal action.
Proposal propose(const SwarmState& state, int m, double epsilon,
                 const FlightVolume& volume, std::mt19937_64& rng);

// Boltzmann acceptance between the current reward and the explored one,
// both evaluated against the neighbors' current positions. Applies the
// move on accept. temperature == 0 selects the best-reply limit.
StepOutcome boltzmann_accept(SwarmState& state, int m, Action proposed,
                             double temperature, const FlightVolume& volume,
                             CorrelationCache& cache, std::mt19937_64& rng,
                             bool dynamic_graph = false, double comm_radius = 0.0);

double acceptance_probability(double reward_prev, double reward_new,
                              double temperature);

// Marginal probability that UAV m keeps its position this slot:
// (1 - eps) + eps * mean over explorable actions of the stay branch of
// the acceptance rule. This is the "position selection probability"
// series and drives the convergence stop rule.
double stay_probability(const SwarmState& state, int m, double epsilon,
                        double temperature, const FlightVolume& volume,
                        CorrelationCache& cache);

StepOutcome engine_step(SwarmState& state, const LearningSchedule& schedule,
                        long t, const FlightVolume& volume,
                        CorrelationCache& cache, std::mt19937_64& rng,
                        bool dynamic_graph = false, double comm_radius = 0.0);

// Per-iteration time series of everything the figures need.
struct RunRecord {
  StrategyKind strategy = StrategyKind::learning;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  std::vector<double> phi;
  std::vector<double> mean_reward;
  std::vector<std::vector<double>> uav_rewards;    // [iter][uav]
  std::vector<int> rank;
  std::vector<std::vector<double>> capacity_bits;  // [iter][snr index]
  std::vector<double> stay_probability;            // learning only
  std::vector<std::pair<long, std::vector<GridPoint>>> snapshots;
  SwarmState initial_state;
  SwarmState final_state;
  long iterations_executed = 0;
  std::string stop_reason;
};

// Runs the learning loop to the stop criterion: max iterations, or
// every UAV's last observed stay probability >= 1 - stop_threshold.
RunRecord run(const ExperimentConfig& cfg, std::uint64_t seed);

// Dispatch on strategy kind; baselines share the RunRecord format.
RunRecord run_strategy(const ExperimentConfig& cfg, StrategyKind kind,
                       std::uint64_t seed);

}  // namespace swarmcap
