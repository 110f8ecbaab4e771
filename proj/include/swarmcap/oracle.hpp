#pragma once

#include <nlohmann/json.hpp>

#include "swarmcap/config.hpp"
#include "swarmcap/metrics.hpp"

namespace swarmcap {

// A tiny exactly-analyzable instance: few UAVs, reduced URA, lattice
// small enough to enumerate every joint position profile. The neighbor
// graph is complete (the communication radius covers the whole volume).
struct OracleInstance {
  int uavs = 2;
  FlightVolume volume{8.0, 3, 1, 2};  // 3x1x2 lattice, 8 m step
  AntennaArray array = build_ura(2, 2, 0.3);
  double wavelength = 0.02;

  NeighborGraph complete_graph() const;
};

struct StateSpace {
  const OracleInstance* instance = nullptr;
  std::vector<std::vector<GridPoint>> profiles;  // ordered placements, distinct positions

  long size() const { return static_cast<long>(profiles.size()); }
  long index_of(const std::vector<GridPoint>& profile) const;  // -1 if absent
  SwarmState state_at(long idx) const;
};

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

StateSpace enumerate_states(const OracleInstance& inst, long budget = 100000);

// Chain parameters frozen at one point of the anneal. The theory's
// perturbation index is epsilon_boltzmann = exp(-1/T).
struct FrozenSchedule {
  double epsilon_explore = 0.0;
  double temperature = 0.0;

  static FrozenSchedule at_beta(double beta) {
    return FrozenSchedule{std::exp(-beta), 1.0 / beta};
  }
};

// Row-stochastic single-move transition matrix: off-diagonal entry
// (1/M) * eps/(|A^res|-1) * acceptance, diagonal takes the rest.
Eigen::MatrixXd transition_matrix(const StateSpace& space,
                                  const FrozenSchedule& frozen,
                                  CorrelationCache& cache);

bool irreducible(const Eigen::MatrixXd& p);

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Left fixed point by power iteration to ||mu P - mu||_inf <= tol.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& p,
                                        double tol = 1e-12,
                                        long max_iters = 20000000);

// Resistance of a feasible one-move transition:
// max{R_m(s), R_m(s')} - R_m(s'); zero iff the move weakly improves.
double resistance(const StateSpace& space, long s, long s_prime, int mover,
                  CorrelationCache& cache);

struct ResistanceRow {
  long from = 0, to = 0;
  int mover = 0;
  double resistance = 0.0;
  double slope = 0.0;
  double rel_err = 0.0;
};

// Log-log regression of constructed transition probabilities against the
// Boltzmann perturbation (exploration rate held fixed), over transitions
// with resistance >= min_resistance.
std::vector<ResistanceRow> resistance_regression(
    const StateSpace& space, CorrelationCache& cache, double eps_explore,
    const std::vector<double>& betas_boltzmann, double min_resistance,
    size_t max_rows = 32);

struct StabilityReport {
  std::vector<double> betas;
  std::vector<double> maximizer_mass;
  std::vector<long> maximizers;
  double phi_max = 0.0;
  bool monotone = false;
};

StabilityReport verify_stochastic_stability(const OracleInstance& inst,
                                            const std::vector<double>& betas,
                                            CorrelationCache& cache);

std::vector<double> profile_potentials(const StateSpace& space,
                                       CorrelationCache& cache);

// Definition-1 check by exhaustive unilateral deviation scan.
bool is_pure_nash(const SwarmState& state, const FlightVolume& volume,
                  CorrelationCache& cache);

// Max |Delta R_m - Delta phi| over random (state, UAV, legal move)
// triples at the configured scale; exact-potential property says ~0.
double exact_potential_audit(const ExperimentConfig& cfg, int trials,
                             std::uint64_t seed);

nlohmann::json oracle_report_json(const OracleInstance& inst,
                                  const StabilityReport& stability,
                                  const std::vector<ResistanceRow>& rows);

}  // namespace swarmcap
