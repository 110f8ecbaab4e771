#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace swarmcap {

enum class StrategyKind { learning, random_moving, static_deployment,
                          exhaustive_sequential, exhaustive_joint };

StrategyKind strategy_from_string(const std::string& s);
std::string strategy_name(StrategyKind k);

enum class TemperatureRule { inverse_beta, fixed };

// Annealing knobs: beta_t = beta0 + t * beta_step, exploration rate
// eps_t = exp(-beta_t). Temperature either T = 1 / (scale * beta_t) or a
// fixed value (0 selects the best-reply limit of the acceptance rule).
struct LearningSchedule {
  double beta0 = 0.01;
  double beta_step = 0.001;
  TemperatureRule rule = TemperatureRule::inverse_beta;
  double temperature_scale = 50.0;
  double fixed_temperature = 0.0;

  double beta_at(long t) const { return beta0 + static_cast<double>(t) * beta_step; }
  double epsilon_at(long t) const { return std::exp(-beta_at(t)); }
  double temperature_at(long t) const {
    if (rule == TemperatureRule::fixed) return fixed_temperature;
    return 1.0 / (temperature_scale * beta_at(t));
  }
  void validate() const {
    if (beta0 <= 0.0) throw std::invalid_argument("schedule: beta0 must be > 0");
    if (beta_step < 0.0) throw std::invalid_argument("schedule: beta_step must be >= 0");
    if (rule == TemperatureRule::inverse_beta && temperature_scale <= 0.0) {
      throw std::invalid_argument("schedule: temperature_scale must be > 0");
    }
    if (rule == TemperatureRule::fixed && fixed_temperature < 0.0) {
      throw std::invalid_argument("schedule: fixed_temperature must be >= 0");
    }
  }
};

}  // namespace swarmcap
