#include "swarmcap/channel.hpp"

#include <numbers>
#include <set>

namespace swarmcap {

std::complex<double> channel_entry(double d, double wavelength, ChannelMode mode) {
  if (wavelength <= 0.0) throw InvalidConfigError("channel_entry: wavelength must be > 0");
  if (d <= 0.0) throw SingularGeometryError("channel_entry: zero antenna-UAV distance");
  const double rem = std::fmod(d, wavelength);
  const double phase = -2.0 * std::numbers::pi * rem / wavelength;
  std::complex<double> e{std::cos(phase), std::sin(phase)};
  if (mode == ChannelMode::physical) {
    e *= wavelength / (4.0 * std::numbers::pi * d);
  }
  return e;
}

Eigen::VectorXcd channel_column(const Vec3& uav_m, const AntennaArray& array,
                                double wavelength, ChannelMode mode) {
  Eigen::VectorXcd h(array.size());
  for (int n = 0; n < array.size(); ++n) {
    h(n) = channel_entry(distance(uav_m, array.positions[n]), wavelength, mode);
  }
  return h;
}

ChannelMatrix channel_matrix(const std::vector<Vec3>& uavs_m,
                             const AntennaArray& array, double wavelength,
                             ChannelMode mode) {
  if (uavs_m.empty()) throw InvalidConfigError("channel_matrix: no UAV positions");
  for (size_t i = 0; i < uavs_m.size(); ++i) {
    for (size_t j = i + 1; j < uavs_m.size(); ++j) {
      if (uavs_m[i] == uavs_m[j]) {
        throw CollisionError("channel_matrix: duplicate UAV positions");
      }
    }
  }
  ChannelMatrix h(array.size(), static_cast<int>(uavs_m.size()));
  for (int m = 0; m < h.cols(); ++m) {
    h.col(m) = channel_column(uavs_m[m], array, wavelength, mode);
  }
  return h;
}

ChannelMatrix channel_matrix(const std::vector<GridPoint>& positions,
                             const FlightVolume& volume, const AntennaArray& array,
                             double wavelength, ChannelMode mode) {
  std::vector<Vec3> pts;
  pts.reserve(positions.size());
  for (const auto& p : positions) pts.push_back(volume.meters(p));
  return channel_matrix(pts, array, wavelength, mode);
}

ChannelMatrix local_channel_matrix(int m, const SwarmState& state,
                                   const FlightVolume& volume,
                                   const AntennaArray& array, double wavelength,
                                   ChannelMode mode) {
  std::vector<Vec3> pts;
  pts.reserve(state.graph.degree(m) + 1);
  for (int i : state.graph.neighbors(m)) pts.push_back(volume.meters(state.positions[i]));
  pts.push_back(volume.meters(state.positions[m]));
  return channel_matrix(pts, array, wavelength, mode);
}

}  // namespace swarmcap
