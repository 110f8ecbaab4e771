#include "swarmcap/metrics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace swarmcap {

std::complex<double> pair_correlation_value(const Vec3& pk, const Vec3& pl,
                                            const AntennaArray& array,
                                            double wavelength) {
  std::complex<double> sum{0.0, 0.0};
  for (const Vec3& antenna : array.positions) {
    const double diff = distance(pl, antenna) - distance(pk, antenna);
    const double rem = std::fmod(diff, wavelength);
    const double phase = -2.0 * std::numbers::pi * rem / wavelength;
    sum += std::complex<double>{std::cos(phase), std::sin(phase)};
  }
  return sum;
}

PairCorrelation pair_correlation(int k, int l, const SwarmState& state,
                                 const FlightVolume& volume,
                                 const AntennaArray& array, double wavelength) {
  PairCorrelation g;
  g.k = k;
  g.l = l;
  g.value = pair_correlation_value(volume.meters(state.positions[k]),
                                   volume.meters(state.positions[l]), array,
                                   wavelength);
  g.magnitude = std::abs(g.value);
  return g;
}

CorrelationCache::CorrelationCache(FlightVolume volume, AntennaArray array,
                                   double wavelength)
    : volume_(volume), array_(std::move(array)), wavelength_(wavelength) {
  if (wavelength_ <= 0.0) throw InvalidConfigError("CorrelationCache: wavelength must be > 0");
}

double CorrelationCache::magnitude(const GridPoint& a, const GridPoint& b) {
  const GridPoint& lo = (a < b) ? a : b;
  const GridPoint& hi = (a < b) ? b : a;
  Key key{{lo.x, lo.y, lo.z, hi.x, hi.y, hi.z}};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const double mag = std::abs(pair_correlation_value(
      volume_.meters(lo), volume_.meters(hi), array_, wavelength_));
  memo_.emplace(key, mag);
  return mag;
}

double local_reward(const LocalView& view, CorrelationCache& cache) {
  const size_t deg = view.neighbor_ids.size();
  if (deg == 0) return 0.0;
  std::vector<GridPoint> pts;
  pts.reserve(deg + 1);
  pts.push_back(view.self_pos);
  for (const auto& p : view.neighbor_pos) pts.push_back(p);
  double sum = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      sum += cache.magnitude(pts[i], pts[j]);
    }
  }
  // ordered pairs count both (k,l) and (l,k)
  return -2.0 * sum / cache.array().size();
}

double local_reward(const SwarmState& state, int m, CorrelationCache& cache) {
  return local_reward(local_view(state, m), cache);
}

RewardBreakdown neighborhood_reward(const NeighborGraph& graph, int m,
                                    const PositionFn& pos, CorrelationCache& cache) {
  RewardBreakdown r;
  r.own = local_reward(local_view(graph, m, pos), cache);
  for (int i : graph.neighbors(m)) {
    r.neighbor_sum += local_reward(local_view(graph, i, pos), cache);
  }
  r.total = r.own + r.neighbor_sum;
  return r;
}

RewardBreakdown neighborhood_reward(const SwarmState& state, int m,
                                    CorrelationCache& cache) {
  return neighborhood_reward(state.graph, m,
                             [&](int i) { return state.positions[i]; }, cache);
}

RewardBreakdown neighborhood_reward_with(const SwarmState& state, int m,
                                         const GridPoint& hypothetical,
                                         CorrelationCache& cache) {
  return neighborhood_reward(
      state.graph, m,
      [&](int i) { return i == m ? hypothetical : state.positions[i]; }, cache);
}

double potential(const SwarmState& state, CorrelationCache& cache) {
  double phi = 0.0;
  for (int m = 0; m < state.size(); ++m) phi += local_reward(state, m, cache);
  return phi;
}

std::vector<double> all_local_rewards(const SwarmState& state, CorrelationCache& cache) {
  std::vector<double> r(state.size());
  for (int m = 0; m < state.size(); ++m) r[m] = local_reward(state, m, cache);
  return r;
}

int numerical_rank(const ChannelMatrix& h) {
  Eigen::JacobiSVD<ChannelMatrix> svd(h);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double tol = std::max(h.rows(), h.cols()) *
                     std::numeric_limits<double>::epsilon() * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) ++rank;
  }
  return rank;
}

CapacityReport capacity(const ChannelMatrix& h, double snr_linear) {
  if (snr_linear <= 0.0) throw InvalidConfigError("capacity: SNR must be > 0");
  CapacityReport rep;
  rep.snr_linear = snr_linear;
  const int n_rx = static_cast<int>(h.rows());
  const int m_tx = static_cast<int>(h.cols());
  const double c = snr_linear / m_tx;

  // det route on the N x N receive correlation matrix via Cholesky
  ChannelMatrix a = ChannelMatrix::Identity(n_rx, n_rx);
  a.selfadjointView<Eigen::Lower>().rankUpdate(h, c);
  Eigen::LLT<ChannelMatrix> llt(a);
  double log2det = 0.0;
  for (int i = 0; i < n_rx; ++i) {
    log2det += 2.0 * std::log2(std::real(llt.matrixLLT()(i, i)));
  }
  rep.det_form = log2det;

  // eigen route on the M x M Gram matrix (same nonzero spectrum)
  ChannelMatrix gram = h.adjoint() * h;
  Eigen::SelfAdjointEigenSolver<ChannelMatrix> eig(gram, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = eig.eigenvalues().reverse();
  rep.eigenvalues = ev;
  double eigen_form = 0.0;
  for (int i = 0; i < ev.size(); ++i) {
    eigen_form += std::log2(1.0 + c * std::max(ev(i), 0.0));
  }
  rep.eigen_form = eigen_form;

  rep.numerical_rank = numerical_rank(h);
  const double tr = h.squaredNorm();
  const double p = rep.numerical_rank;
  rep.jensen_approx = p * std::log2(1.0 + snr_linear * tr / (p * p));
  return rep;
}

double jensen_gap(const ChannelMatrix& h, double snr_linear) {
  if (snr_linear <= 0.0) throw InvalidConfigError("jensen_gap: SNR must be > 0");
  CapacityReport rep = capacity(h, snr_linear);
  const int p = rep.numerical_rank;
  double rank_p_sum = 0.0;
  for (int i = 0; i < p; ++i) {
    rank_p_sum += std::log2(1.0 + snr_linear / p * std::max(rep.eigenvalues(i), 0.0));
  }
  return rep.jensen_approx - rank_p_sum;
}

}  // namespace swarmcap
