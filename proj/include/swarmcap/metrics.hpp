#pragma once

#include <complex>
#include <unordered_map>

#include "swarmcap/channel.hpp"
#include "swarmcap/state.hpp"

namespace swarmcap {

// g_kl = sum_n exp(-j 2 pi (d_nl - d_nk) / lambda), the inner product of
// two normalized channel columns.
struct PairCorrelation {
  int k = -1;
  int l = -1;
  std::complex<double> value;
  double magnitude = 0.0;
};

std::complex<double> pair_correlation_value(const Vec3& pk, const Vec3& pl,
                                            const AntennaArray& array,
                                            double wavelength);

PairCorrelation pair_correlation(int k, int l, const SwarmState& state,
                                 const FlightVolume& volume,
                                 const AntennaArray& array, double wavelength);

// Memoized |g| lookups keyed by lattice point pairs. Owns the geometry it
// evaluates against. Not thread-safe; each run/thread keeps its own.
class CorrelationCache {
 public:
  CorrelationCache(FlightVolume volume, AntennaArray array, double wavelength);

  double magnitude(const GridPoint& a, const GridPoint& b);

  const FlightVolume& volume() const { return volume_; }
  const AntennaArray& array() const { return array_; }
  double wavelength() const { return wavelength_; }
  size_t memo_size() const { return memo_.size(); }

 private:
  struct Key {
    std::array<int, 6> v;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      std::uint64_t h = 1469598103934665603ull;
      for (int x : k.v) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
        h *= 1099511628211ull;
      }
      return static_cast<size_t>(h);
    }
  };

  FlightVolume volume_;
  AntennaArray array_;
  double wavelength_;
  std::unordered_map<Key, double, KeyHash> memo_;
};

// r_m = -(1/N) * sum over ordered pairs k != l in N_m u {m} of |g_kl|.
// Zero when the UAV has no neighbors.
double local_reward(const LocalView& view, CorrelationCache& cache);
double local_reward(const SwarmState& state, int m, CorrelationCache& cache);

struct RewardBreakdown {
  double own = 0.0;
  double neighbor_sum = 0.0;
  double total = 0.0;
};

// R_m = r_m + sum over neighbors i of r_i. Every per-UAV term is
// evaluated through that UAV's LocalView, so the information pattern is
// exactly "own + neighbors" per view.
RewardBreakdown neighborhood_reward(const NeighborGraph& graph, int m,
                                    const PositionFn& pos, CorrelationCache& cache);
RewardBreakdown neighborhood_reward(const SwarmState& state, int m,
                                    CorrelationCache& cache);
// Hypothetical evaluation: UAV m at `hypothetical`, everyone else as in
// state. The state itself is untouched.
RewardBreakdown neighborhood_reward_with(const SwarmState& state, int m,
                                         const GridPoint& hypothetical,
                                         CorrelationCache& cache);

// phi = sum over all UAVs of r_m; <= 0, and 0 iff every r_m is 0.
double potential(const SwarmState& state, CorrelationCache& cache);
std::vector<double> all_local_rewards(const SwarmState& state, CorrelationCache& cache);

// MIMO capacity in the three forms. det_form takes the log-det route on
// the N x N receive side; eigen_form sums over the M x M Gram spectrum;
// jensen_approx is the rank-p trace bound.
struct CapacityReport {
  double snr_linear = 0.0;
  double det_form = 0.0;
  double eigen_form = 0.0;
  double jensen_approx = 0.0;
  int numerical_rank = 0;
  Eigen::VectorXd eigenvalues;  // descending eigenvalues of H H^dagger (nonzero part)
};

CapacityReport capacity(const ChannelMatrix& h, double snr_linear);

// Singular values above max(N,M) * eps * sigma_max.
int numerical_rank(const ChannelMatrix& h);

// jensen_approx minus the rank-p eigen form it upper-bounds; >= 0 up to
// roundoff, 0 at rank one and at equal eigenvalues.
double jensen_gap(const ChannelMatrix& h, double snr_linear);

}  // namespace swarmcap
