#include "swarmcap/oracle.hpp"

#include <algorithm>
#include <map>

#include "swarmcap/rng.hpp"

namespace swarmcap {

NeighborGraph OracleInstance::complete_graph() const {
  NeighborGraph g;
  g.adj.assign(uavs, {});
  for (int i = 0; i < uavs; ++i) {
    for (int j = 0; j < uavs; ++j) {
      if (i != j) g.adj[i].push_back(j);
    }
  }
  return g;
}

namespace {

std::vector<GridPoint> lattice_points(const FlightVolume& v) {
  std::vector<GridPoint> pts;
  pts.reserve(v.cell_count());
  for (int x = 0; x < v.nx; ++x) {
    for (int y = 0; y < v.ny; ++y) {
      for (int z = 1; z <= v.nz; ++z) pts.push_back(GridPoint{x, y, z});
    }
  }
  return pts;
}

}  // namespace

StateSpace enumerate_states(const OracleInstance& inst, long budget) {
  const std::vector<GridPoint> pts = lattice_points(inst.volume);
  const long n = static_cast<long>(pts.size());
  long count = 1;
  for (int k = 0; k < inst.uavs; ++k) {
    count *= n - k;
    if (count > budget) {
      throw BudgetError("enumerate_states: profile count exceeds budget of " +
                        std::to_string(budget));
    }
  }
  StateSpace space;
  space.instance = &inst;
  space.profiles.reserve(count);
  std::vector<GridPoint> profile(inst.uavs);
  std::vector<char> used(pts.size(), 0);
  auto recurse = [&](auto&& self, int depth) -> void {
    if (depth == inst.uavs) {
      space.profiles.push_back(profile);
      return;
    }
    for (size_t i = 0; i < pts.size(); ++i) {
      if (used[i]) continue;
      used[i] = 1;
      profile[depth] = pts[i];
      self(self, depth + 1);
      used[i] = 0;
    }
  };
  recurse(recurse, 0);
  return space;
}

long StateSpace::index_of(const std::vector<GridPoint>& profile) const {
  auto it = std::find(profiles.begin(), profiles.end(), profile);
  if (it == profiles.end()) return -1;
  return static_cast<long>(it - profiles.begin());
}

SwarmState StateSpace::state_at(long idx) const {
  SwarmState st;
  st.positions = profiles[idx];
  st.graph = instance->complete_graph();
  return st;
}

namespace {

// Legal non-stay targets of one UAV within a profile.
std::vector<std::pair<Action, GridPoint>> legal_moves(
    const std::vector<GridPoint>& profile, int m, const FlightVolume& volume) {
  std::vector<std::pair<Action, GridPoint>> out;
  for (Action a : kAllActions) {
    if (a == Action::stay) continue;
    const GridPoint t = profile[m] + action_delta(a);
    if (!volume.contains(t)) continue;
    bool occupied = false;
    for (size_t i = 0; i < profile.size(); ++i) {
      if (static_cast<int>(i) != m && profile[i] == t) occupied = true;
    }
    if (!occupied) out.emplace_back(a, t);
  }
  return out;
}

double acceptance(double r_prev, double r_new, double temperature) {
  const double top = std::max(r_prev, r_new);
  const double ep = std::exp((r_prev - top) / temperature);
  const double en = std::exp((r_new - top) / temperature);
  return en / (ep + en);
}

}  // namespace

Eigen::MatrixXd transition_matrix(const StateSpace& space,
                                  const FrozenSchedule& frozen,
                                  CorrelationCache& cache) {
  const long n = space.size();
  const int m_uavs = space.instance->uavs;
  const FlightVolume& volume = space.instance->volume;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);

  // index lookup by sorted profiles would be cleaner; a map keeps it simple
  std::map<std::vector<GridPoint>, long> index;
  for (long i = 0; i < n; ++i) index[space.profiles[i]] = i;

  for (long s = 0; s < n; ++s) {
    const SwarmState st = space.state_at(s);
    double off_diagonal = 0.0;
    for (int m = 0; m < m_uavs; ++m) {
      const auto moves = legal_moves(space.profiles[s], m, volume);
      if (moves.empty()) continue;
      const double r_prev = neighborhood_reward(st, m, cache).total;
      for (const auto& [a, target] : moves) {
        std::vector<GridPoint> next = space.profiles[s];
        next[m] = target;
        const long s2 = index.at(next);
        const double r_new = neighborhood_reward_with(st, m, target, cache).total;
        const double prob = (1.0 / m_uavs) *
                            (frozen.epsilon_explore / moves.size()) *
                            acceptance(r_prev, r_new, frozen.temperature);
        p(s, s2) += prob;
        off_diagonal += prob;
      }
    }
    p(s, s) = 1.0 - off_diagonal;
  }
  return p;
}

bool irreducible(const Eigen::MatrixXd& p) {
  const long n = p.rows();
  // strong connectivity of the positive-entry graph; the chain is
  // reversible in structure, so one BFS from node 0 in each direction
  // suffices
  auto reach = [&](bool forward) {
    std::vector<char> seen(n, 0);
    std::vector<long> stack = {0};
    seen[0] = 1;
    long count = 1;
    while (!stack.empty()) {
      long u = stack.back();
      stack.pop_back();
      for (long v = 0; v < n; ++v) {
        const double w = forward ? p(u, v) : p(v, u);
        if (w > 0.0 && !seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  return reach(true) && reach(false);
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& p, double tol,
                                        long max_iters) {
  const long n = p.rows();
  Eigen::RowVectorXd mu = Eigen::RowVectorXd::Constant(n, 1.0 / n);
  for (long it = 0; it < max_iters; ++it) {
    Eigen::RowVectorXd next = mu * p;
    next /= next.sum();
    const double residual = (next - mu).cwiseAbs().maxCoeff();
    mu = next;
    if (residual <= tol) return mu.transpose();
  }
  const double residual = ((mu * p).eval() - mu).cwiseAbs().maxCoeff();
  throw ConvergenceError("stationary_distribution: residual " +
                         std::to_string(residual) + " after " +
                         std::to_string(max_iters) + " iterations");
}

double resistance(const StateSpace& space, long s, long s_prime, int mover,
                  CorrelationCache& cache) {
  const std::vector<GridPoint>& a = space.profiles[s];
  const std::vector<GridPoint>& b = space.profiles[s_prime];
  for (size_t i = 0; i < a.size(); ++i) {
    if (static_cast<int>(i) != mover && !(a[i] == b[i])) {
      throw std::domain_error("resistance: states differ outside the mover");
    }
  }
  const auto moves = legal_moves(a, mover, space.instance->volume);
  const bool reachable = std::any_of(moves.begin(), moves.end(), [&](const auto& mv) {
    return mv.second == b[mover];
  });
  if (!reachable) throw std::domain_error("resistance: s' not one legal move away");
  const SwarmState st = space.state_at(s);
  const double r_s = neighborhood_reward(st, mover, cache).total;
  const double r_sp = neighborhood_reward_with(st, mover, b[mover], cache).total;
  return std::max(r_s, r_sp) - r_sp;
}

std::vector<ResistanceRow> resistance_regression(
    const StateSpace& space, CorrelationCache& cache, double eps_explore,
    const std::vector<double>& betas_boltzmann, double min_resistance,
    size_t max_rows) {
  std::vector<Eigen::MatrixXd> chains;
  chains.reserve(betas_boltzmann.size());
  for (double beta : betas_boltzmann) {
    chains.push_back(transition_matrix(space, FrozenSchedule{eps_explore, 1.0 / beta},
                                       cache));
  }
  std::map<std::vector<GridPoint>, long> index;
  for (long i = 0; i < space.size(); ++i) index[space.profiles[i]] = i;

  std::vector<ResistanceRow> rows;
  for (long s = 0; s < space.size() && rows.size() < max_rows; ++s) {
    for (int m = 0; m < space.instance->uavs && rows.size() < max_rows; ++m) {
      for (const auto& [a, target] : legal_moves(space.profiles[s], m,
                                                 space.instance->volume)) {
        std::vector<GridPoint> next = space.profiles[s];
        next[m] = target;
        const long s2 = index.at(next);
        const double res = resistance(space, s, s2, m, cache);
        if (res < min_resistance) continue;

        // least-squares slope of log P against log eps = -beta
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(betas_boltzmann.size());
        for (size_t i = 0; i < betas_boltzmann.size(); ++i) {
          const double x = -betas_boltzmann[i];
          const double y = std::log(chains[i](s, s2));
          sx += x;
          sy += y;
          sxx += x * x;
          sxy += x * y;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        ResistanceRow row;
        row.from = s;
        row.to = s2;
        row.mover = m;
        row.resistance = res;
        row.slope = slope;
        row.rel_err = std::abs(slope - res) / res;
        rows.push_back(row);
        if (rows.size() >= max_rows) break;
      }
    }
  }
  return rows;
}

std::vector<double> profile_potentials(const StateSpace& space,
                                       CorrelationCache& cache) {
  std::vector<double> phi(space.size());
  for (long i = 0; i < space.size(); ++i) {
    phi[i] = potential(space.state_at(i), cache);
  }
  return phi;
}

StabilityReport verify_stochastic_stability(const OracleInstance& inst,
                                            const std::vector<double>& betas,
                                            CorrelationCache& cache) {
  StateSpace space = enumerate_states(inst);
  const std::vector<double> phi = profile_potentials(space, cache);
  const double phi_max = *std::max_element(phi.begin(), phi.end());

  StabilityReport rep;
  rep.betas = betas;
  rep.phi_max = phi_max;
  for (long i = 0; i < space.size(); ++i) {
    if (phi[i] >= phi_max - 1e-12 * std::max(1.0, std::abs(phi_max))) {
      rep.maximizers.push_back(i);
    }
  }
  for (double beta : betas) {
    const Eigen::MatrixXd p = transition_matrix(space, FrozenSchedule::at_beta(beta),
                                                cache);
    const Eigen::VectorXd mu = stationary_distribution(p);
    double mass = 0.0;
    for (long i : rep.maximizers) mass += mu(i);
    rep.maximizer_mass.push_back(mass);
  }
  rep.monotone = true;
  for (size_t i = 0; i + 1 < rep.maximizer_mass.size(); ++i) {
    if (rep.maximizer_mass[i + 1] < rep.maximizer_mass[i] - 1e-9) rep.monotone = false;
  }
  return rep;
}

bool is_pure_nash(const SwarmState& state, const FlightVolume& volume,
                  CorrelationCache& cache) {
  for (int m = 0; m < state.size(); ++m) {
    const double r_stay = neighborhood_reward(state, m, cache).total;
    for (Action a : restricted_actions(state, m, volume)) {
      if (a == Action::stay) continue;
      const GridPoint target = state.positions[m] + action_delta(a);
      if (neighborhood_reward_with(state, m, target, cache).total >
          r_stay + 1e-12 * std::max(1.0, std::abs(r_stay))) {
        return false;
      }
    }
  }
  return true;
}

double exact_potential_audit(const ExperimentConfig& cfg, int trials,
                             std::uint64_t seed) {
  const FlightVolume volume = cfg.volume();
  const AntennaArray array = cfg.array();
  CorrelationCache cache(volume, array, cfg.wavelength);
  std::mt19937_64 rng(seed);

  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    SwarmState st = init_state(cfg.uavs, volume, cfg.comm_radius, rng, seed,
                               cfg.connect_retries);
    const int m = uniform_index(rng, cfg.uavs);
    const std::vector<Action> legal = restricted_actions(st, m, volume);
    const Action a = legal[uniform_index(rng, static_cast<int>(legal.size()))];

    const double phi_before = potential(st, cache);
    const double reward_before = neighborhood_reward(st, m, cache).total;
    const SwarmState next = apply_action(st, m, a, volume);
    const double phi_after = potential(next, cache);
    const double reward_after = neighborhood_reward(next, m, cache).total;

    const double deviation = std::abs((reward_after - reward_before) -
                                      (phi_after - phi_before));
    const double scale = std::max(1.0, std::abs(phi_before));
    worst = std::max(worst, deviation / scale);
  }
  return worst;
}

nlohmann::json oracle_report_json(const OracleInstance& inst,
                                  const StabilityReport& stability,
                                  const std::vector<ResistanceRow>& rows) {
  nlohmann::json j;
  j["instance"] = {
      {"uavs", inst.uavs},
      {"lattice", {inst.volume.nx, inst.volume.ny, inst.volume.nz}},
      {"lattice_step", inst.volume.step},
      {"ura", {inst.array.nx, inst.array.ny}},
      {"ura_spacing", inst.array.spacing},
      {"wavelength", inst.wavelength},
  };
  j["stability"] = {
      {"betas", stability.betas},
      {"maximizer_mass", stability.maximizer_mass},
      {"maximizers", stability.maximizers},
      {"phi_max", stability.phi_max},
      {"monotone", stability.monotone},
  };
  auto table = nlohmann::json::array();
  for (const auto& r : rows) {
    table.push_back({{"from", r.from},
                     {"to", r.to},
                     {"mover", r.mover},
                     {"resistance", r.resistance},
                     {"slope", r.slope},
                     {"rel_err", r.rel_err}});
  }
  j["resistance_regression"] = table;
  return j;
}

}  // namespace swarmcap
