#pragma once

#include <complex>

#include "swarmcap/geometry.hpp"
#include "swarmcap/state.hpp"

namespace swarmcap {

using ChannelMatrix = Eigen::MatrixXcd;

// normalized: unit-modulus LoS gains (distance-normalized path loss);
// physical: modulus lambda / (4 pi d).
enum class ChannelMode { normalized, physical };

struct SingularGeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CollisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// LoS gain for one antenna-UAV link. The phase is taken from d mod
// lambda to avoid cancellation at d >> lambda.
std::complex<double> channel_entry(double d, double wavelength,
                                   ChannelMode mode = ChannelMode::normalized);

// Channel column of one UAV over all array antennas.
Eigen::VectorXcd channel_column(const Vec3& uav_m, const AntennaArray& array,
                                double wavelength,
                                ChannelMode mode = ChannelMode::normalized);

// N x M matrix whose column m is UAV m's channel vector.
ChannelMatrix channel_matrix(const std::vector<Vec3>& uavs_m,
                             const AntennaArray& array, double wavelength,
                             ChannelMode mode = ChannelMode::normalized);
ChannelMatrix channel_matrix(const std::vector<GridPoint>& positions,
                             const FlightVolume& volume, const AntennaArray& array,
                             double wavelength,
                             ChannelMode mode = ChannelMode::normalized);

// H_m = [h_i ... h_m]: one column per neighbor of m (ascending id), then
// m itself. Column count = degree + 1.
ChannelMatrix local_channel_matrix(int m, const SwarmState& state,
                                   const FlightVolume& volume,
                                   const AntennaArray& array, double wavelength,
                                   ChannelMode mode = ChannelMode::normalized);

}  // namespace swarmcap
