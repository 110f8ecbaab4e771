#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "swarmcap/geometry.hpp"

namespace swarmcap {

// The seven per-slot moves. "stay" is always legal: a UAV occupies its
// own cell.
enum class Action : int { stay = 0, up, down, left, right, forward, backward };

inline constexpr std::array<Action, 7> kAllActions = {
    Action::stay, Action::up,      Action::down,    Action::left,
    Action::right, Action::forward, Action::backward};

GridOffset action_delta(Action a);
Action inverse_action(Action a);
std::string action_name(Action a);

// Symmetric, irreflexive adjacency over UAV ids. Built once from the
// initial deployment and kept fixed unless dynamic recompute is enabled.
struct NeighborGraph {
  std::vector<std::vector<int>> adj;  // sorted neighbor ids per UAV

  int size() const { return static_cast<int>(adj.size()); }
  int degree(int m) const { return static_cast<int>(adj[m].size()); }
  const std::vector<int>& neighbors(int m) const { return adj[m]; }
  bool connected() const;
};

NeighborGraph build_graph(const std::vector<GridPoint>& positions,
                          const FlightVolume& volume, double comm_radius);

// Markov-chain state: all UAV positions plus the (fixed) neighbor graph.
// Value type; apply_action returns a new state.
struct SwarmState {
  std::vector<GridPoint> positions;
  NeighborGraph graph;
  long iteration = 0;
  std::uint64_t seed = 0;  // reproducibility token

  int size() const { return static_cast<int>(positions.size()); }
};

struct InitFailureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RestrictedActionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Uniform random distinct lattice positions, resampled (up to
// max_retries) until the radius graph is connected.
SwarmState init_state(int m_uavs, const FlightVolume& volume, double comm_radius,
                      std::mt19937_64& rng, std::uint64_t seed_token,
                      int max_retries = 1000);

// Legal subset of the 7 actions: excludes moves landing on an occupied
// cell or outside the volume. Always contains stay.
std::vector<Action> restricted_actions(const SwarmState& state, int m,
                                       const FlightVolume& volume);

bool action_is_legal(const SwarmState& state, int m, Action a,
                     const FlightVolume& volume);

SwarmState apply_action(const SwarmState& state, int m, Action a,
                        const FlightVolume& volume,
                        bool dynamic_graph = false, double comm_radius = 0.0);

// Exactly the information a UAV is allowed to see: its own position and
// its neighbors' positions.
struct LocalView {
  int self = -1;
  GridPoint self_pos;
  std::vector<int> neighbor_ids;
  std::vector<GridPoint> neighbor_pos;
};

using PositionFn = std::function<GridPoint(int)>;

LocalView local_view(const SwarmState& state, int m);
LocalView local_view(const NeighborGraph& graph, int m, const PositionFn& pos);

nlohmann::json state_to_json(const SwarmState& state);
SwarmState state_from_json(const nlohmann::json& j);

}  // namespace swarmcap
