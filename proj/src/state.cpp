#include "swarmcap/state.hpp"

#include <algorithm>
#include <set>

#include "swarmcap/rng.hpp"

namespace swarmcap {

GridOffset action_delta(Action a) {
  switch (a) {
    case Action::stay:     return {0, 0, 0};
    case Action::up:       return {0, 0, 1};
    case Action::down:     return {0, 0, -1};
    case Action::left:     return {0, -1, 0};
    case Action::right:    return {0, 1, 0};
    case Action::forward:  return {1, 0, 0};
    case Action::backward: return {-1, 0, 0};
  }
  throw std::logic_error("unknown action");
}

Action inverse_action(Action a) {
  switch (a) {
    case Action::stay:     return Action::stay;
    case Action::up:       return Action::down;
    case Action::down:     return Action::up;
    case Action::left:     return Action::right;
    case Action::right:    return Action::left;
    case Action::forward:  return Action::backward;
    case Action::backward: return Action::forward;
  }
  throw std::logic_error("unknown action");
}

std::string action_name(Action a) {
  switch (a) {
    case Action::stay:     return "stay";
    case Action::up:       return "up";
    case Action::down:     return "down";
    case Action::left:     return "left";
    case Action::right:    return "right";
    case Action::forward:  return "forward";
    case Action::backward: return "backward";
  }
  throw std::logic_error("unknown action");
}

bool NeighborGraph::connected() const {
  if (adj.empty()) return false;
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  size_t count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == adj.size();
}

NeighborGraph build_graph(const std::vector<GridPoint>& positions,
                          const FlightVolume& volume, double comm_radius) {
  const int m = static_cast<int>(positions.size());
  NeighborGraph g;
  g.adj.assign(m, {});
  for (int i = 0; i < m; ++i) {
    const Vec3 pi = volume.meters(positions[i]);
    for (int j = i + 1; j < m; ++j) {
      if ((pi - volume.meters(positions[j])).norm() <= comm_radius) {
        g.adj[i].push_back(j);
        g.adj[j].push_back(i);
      }
    }
  }
  for (auto& row : g.adj) std::sort(row.begin(), row.end());
  return g;
}

SwarmState init_state(int m_uavs, const FlightVolume& volume, double comm_radius,
                      std::mt19937_64& rng, std::uint64_t seed_token,
                      int max_retries) {
  if (m_uavs < 1) throw InvalidConfigError("init_state: need at least one UAV");
  if (volume.cell_count() < m_uavs) {
    throw InvalidConfigError("init_state: volume has fewer lattice points than UAVs");
  }
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::set<GridPoint> taken;
    std::vector<GridPoint> pos;
    pos.reserve(m_uavs);
    while (static_cast<int>(pos.size()) < m_uavs) {
      GridPoint p{uniform_index(rng, volume.nx), uniform_index(rng, volume.ny),
                  1 + uniform_index(rng, volume.nz)};
      if (taken.insert(p).second) pos.push_back(p);
    }
    NeighborGraph g = build_graph(pos, volume, comm_radius);
    if (g.connected()) {
      SwarmState st;
      st.positions = std::move(pos);
      st.graph = std::move(g);
      st.iteration = 0;
      st.seed = seed_token;
      return st;
    }
  }
  throw InitFailureError("init_state: no connected deployment found within retry budget");
}

bool action_is_legal(const SwarmState& state, int m, Action a,
                     const FlightVolume& volume) {
  if (a == Action::stay) return true;
  const GridPoint target = state.positions[m] + action_delta(a);
  if (!volume.contains(target)) return false;
  for (int i = 0; i < state.size(); ++i) {
    if (i != m && state.positions[i] == target) return false;
  }
  return true;
}

std::vector<Action> restricted_actions(const SwarmState& state, int m,
                                       const FlightVolume& volume) {
  std::vector<Action> out;
  out.reserve(7);
  for (Action a : kAllActions) {
    if (action_is_legal(state, m, a, volume)) out.push_back(a);
  }
  return out;
}

SwarmState apply_action(const SwarmState& state, int m, Action a,
                        const FlightVolume& volume, bool dynamic_graph,
                        double comm_radius) {
  if (m < 0 || m >= state.size()) throw RestrictedActionError("apply_action: bad UAV id");
  if (!action_is_legal(state, m, a, volume)) {
    throw RestrictedActionError("apply_action: action " + action_name(a) +
                                " is not in the restricted action space of UAV " +
                                std::to_string(m));
  }
  SwarmState next = state;
  next.positions[m] = state.positions[m] + action_delta(a);
  next.iteration = state.iteration + 1;
  if (dynamic_graph) {
    next.graph = build_graph(next.positions, volume, comm_radius);
  }
  return next;
}

LocalView local_view(const SwarmState& state, int m) {
  return local_view(state.graph, m, [&](int i) { return state.positions[i]; });
}

LocalView local_view(const NeighborGraph& graph, int m, const PositionFn& pos) {
  LocalView v;
  v.self = m;
  v.self_pos = pos(m);
  v.neighbor_ids = graph.neighbors(m);
  v.neighbor_pos.reserve(v.neighbor_ids.size());
  for (int i : v.neighbor_ids) v.neighbor_pos.push_back(pos(i));
  return v;
}

nlohmann::json state_to_json(const SwarmState& state) {
  nlohmann::json j;
  j["iteration"] = state.iteration;
  j["seed"] = state.seed;
  auto pos = nlohmann::json::array();
  for (const auto& p : state.positions) pos.push_back({p.x, p.y, p.z});
  j["positions"] = pos;
  auto edges = nlohmann::json::array();
  for (int i = 0; i < state.size(); ++i) {
    for (int k : state.graph.adj[i]) {
      if (k > i) edges.push_back({i, k});
    }
  }
  j["edges"] = edges;
  return j;
}

SwarmState state_from_json(const nlohmann::json& j) {
  SwarmState st;
  st.iteration = j.at("iteration").get<long>();
  st.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& p : j.at("positions")) {
    st.positions.push_back(GridPoint{p.at(0).get<int>(), p.at(1).get<int>(), p.at(2).get<int>()});
  }
  st.graph.adj.assign(st.positions.size(), {});
  for (const auto& e : j.at("edges")) {
    int a = e.at(0).get<int>(), b = e.at(1).get<int>();
    st.graph.adj[a].push_back(b);
    st.graph.adj[b].push_back(a);
  }
  for (auto& row : st.graph.adj) std::sort(row.begin(), row.end());
  return st;
}

}  // namespace swarmcap
