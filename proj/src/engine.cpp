#include "swarmcap/engine.hpp"

#include <cmath>
#include <limits>

#include "swarmcap/baselines.hpp"
#include "swarmcap/rng.hpp"

namespace swarmcap {

int select_uav(const SwarmState& state, std::mt19937_64& rng) {
  return uniform_index(rng, state.size());
}

Proposal propose(const SwarmState& state, int m, double epsilon,
                 const FlightVolume& volume, std::mt19937_64& rng) {
  Proposal p;
  const double u = uniform_unit(rng);
  if (u >= epsilon) return p;  // keep current position
  std::vector<Action> moves;
  moves.reserve(6);
  for (Action a : kAllActions) {
    if (a != Action::stay && action_is_legal(state, m, a, volume)) moves.push_back(a);
  }
  if (moves.empty()) return p;  // |A^res| == 1: exploration impossible
  p.explored = true;
  p.action = moves[uniform_index(rng, static_cast<int>(moves.size()))];
  return p;
}

double acceptance_probability(double reward_prev, double reward_new,
                              double temperature) {
  if (temperature <= 0.0) {
    if (reward_new > reward_prev) return 1.0;
    if (reward_new < reward_prev) return 0.0;
    return 0.5;
  }
  const double top = std::max(reward_prev, reward_new);
  const double ep = std::exp((reward_prev - top) / temperature);
  const double en = std::exp((reward_new - top) / temperature);
  return en / (ep + en);
}

StepOutcome boltzmann_accept(SwarmState& state, int m, Action proposed,
                             double temperature, const FlightVolume& volume,
                             CorrelationCache& cache, std::mt19937_64& rng,
                             bool dynamic_graph, double comm_radius) {
  if (proposed == Action::stay || !action_is_legal(state, m, proposed, volume)) {
    throw RestrictedActionError("boltzmann_accept: proposal must be a legal non-stay action");
  }
  StepOutcome out;
  out.chosen_uav = m;
  out.explored = true;
  out.proposed_action = proposed;
  const GridPoint target = state.positions[m] + action_delta(proposed);
  out.reward_prev = neighborhood_reward(state, m, cache).total;
  out.reward_explored = neighborhood_reward_with(state, m, target, cache).total;
  out.acceptance_probability =
      acceptance_probability(out.reward_prev, out.reward_explored, temperature);
  out.accepted = uniform_unit(rng) < out.acceptance_probability;
  if (out.accepted) {
    state = apply_action(state, m, proposed, volume, dynamic_graph, comm_radius);
  } else {
    state.iteration += 1;
  }
  return out;
}

double stay_probability(const SwarmState& state, int m, double epsilon,
                        double temperature, const FlightVolume& volume,
                        CorrelationCache& cache) {
  std::vector<GridPoint> targets;
  targets.reserve(6);
  for (Action a : kAllActions) {
    if (a != Action::stay && action_is_legal(state, m, a, volume)) {
      targets.push_back(state.positions[m] + action_delta(a));
    }
  }
  if (targets.empty()) return 1.0;
  const double reward_prev = neighborhood_reward(state, m, cache).total;
  double stay_sum = 0.0;
  for (const GridPoint& t : targets) {
    const double reward_new = neighborhood_reward_with(state, m, t, cache).total;
    stay_sum += 1.0 - acceptance_probability(reward_prev, reward_new, temperature);
  }
  return (1.0 - epsilon) + epsilon * stay_sum / static_cast<double>(targets.size());
}

StepOutcome engine_step(SwarmState& state, const LearningSchedule& schedule,
                        long t, const FlightVolume& volume,
                        CorrelationCache& cache, std::mt19937_64& rng,
                        bool dynamic_graph, double comm_radius) {
  const int m = select_uav(state, rng);
  const Proposal p = propose(state, m, schedule.epsilon_at(t), volume, rng);
  if (!p.explored) {
    state.iteration += 1;
    StepOutcome out;
    out.chosen_uav = m;
    return out;
  }
  return boltzmann_accept(state, m, p.action, schedule.temperature_at(t), volume,
                          cache, rng, dynamic_graph, comm_radius);
}

namespace {

void record_iteration(RunRecord& rec, const SwarmState& state,
                      CorrelationCache& cache, const std::vector<double>& snr_lin,
                      const FlightVolume& volume, const AntennaArray& array,
                      double wavelength) {
  std::vector<double> rewards = all_local_rewards(state, cache);
  double phi = 0.0;
  for (double r : rewards) phi += r;
  rec.phi.push_back(phi);
  rec.mean_reward.push_back(phi / state.size());
  rec.uav_rewards.push_back(std::move(rewards));

  const ChannelMatrix h = channel_matrix(state.positions, volume, array, wavelength);
  std::vector<double> caps;
  caps.reserve(snr_lin.size());
  int rank = 0;
  for (size_t i = 0; i < snr_lin.size(); ++i) {
    CapacityReport rep = capacity(h, snr_lin[i]);
    caps.push_back(rep.det_form);
    rank = rep.numerical_rank;
  }
  rec.rank.push_back(rank);
  rec.capacity_bits.push_back(std::move(caps));
}

}  // namespace

RunRecord run_strategy(const ExperimentConfig& cfg, StrategyKind kind,
                       std::uint64_t seed) {
  const FlightVolume volume = cfg.volume();
  const AntennaArray array = cfg.array();
  CorrelationCache cache(volume, array, cfg.wavelength);
  const std::vector<double> snr_lin = cfg.snr_linear();

  std::mt19937_64 rng(seed);
  SwarmState state = init_state(cfg.uavs, volume, cfg.comm_radius, rng, seed,
                                cfg.connect_retries);

  RunRecord rec;
  rec.strategy = kind;
  rec.seed = seed;
  rec.config_hash = cfg.hash();
  rec.initial_state = state;
  rec.snapshots.emplace_back(0, state.positions);

  const bool learning = (kind == StrategyKind::learning);
  std::vector<double> last_stay(cfg.uavs, std::numeric_limits<double>::quiet_NaN());
  rec.stop_reason = "max-iterations";

  for (long t = 0; t < cfg.iterations; ++t) {
    int acting = -1;
    switch (kind) {
      case StrategyKind::learning: {
        StepOutcome out = engine_step(state, cfg.schedule, t, volume, cache, rng,
                                      cfg.dynamic_graph, cfg.comm_radius);
        acting = out.chosen_uav;
        break;
      }
      case StrategyKind::random_moving:
        state = random_moving_step(state, volume, rng);
        break;
      case StrategyKind::static_deployment:
        state = static_deployment(state);
        break;
      case StrategyKind::exhaustive_sequential:
        state = exhaustive_step(state, ExhaustiveMode::sequential, volume, cache, t);
        break;
      case StrategyKind::exhaustive_joint:
        state = exhaustive_step(state, ExhaustiveMode::joint, volume, cache, t);
        break;
    }

    record_iteration(rec, state, cache, snr_lin, volume, array, cfg.wavelength);
    if (learning) {
      const double sp = stay_probability(state, acting, cfg.schedule.epsilon_at(t),
                                         cfg.schedule.temperature_at(t), volume, cache);
      last_stay[acting] = sp;
      rec.stay_probability.push_back(sp);
    }
    if (cfg.snapshot_interval > 0 && (t + 1) % cfg.snapshot_interval == 0) {
      rec.snapshots.emplace_back(t + 1, state.positions);
    }
    rec.iterations_executed = t + 1;

    if (learning) {
      bool converged = true;
      for (double s : last_stay) {
        if (!(s >= 1.0 - cfg.stop_threshold)) {  // NaN compares false
          converged = false;
          break;
        }
      }
      if (converged) {
        rec.stop_reason = "probability-converged";
        break;
      }
    }
  }

  if (rec.snapshots.back().first != rec.iterations_executed) {
    rec.snapshots.emplace_back(rec.iterations_executed, state.positions);
  }
  rec.final_state = state;
  return rec;
}

RunRecord run(const ExperimentConfig& cfg, std::uint64_t seed) {
  return run_strategy(cfg, StrategyKind::learning, seed);
}

}  // namespace swarmcap
