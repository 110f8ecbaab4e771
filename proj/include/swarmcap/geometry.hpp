#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace swarmcap {

using Vec3 = Eigen::Vector3d;

// A lattice point in the flight volume. Coordinates are lattice indices,
// meters = index * FlightVolume::step. z >= 1 so UAVs stay above the
// ground plane (the array lives at z = 0).
struct GridPoint {
  int x = 0;
  int y = 0;
  int z = 1;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

struct GridOffset {
  int dx = 0, dy = 0, dz = 0;
};

inline GridPoint operator+(const GridPoint& p, const GridOffset& d) {
  return GridPoint{p.x + d.dx, p.y + d.dy, p.z + d.dz};
}

// Discretized cuboid flight volume: x index in [0, nx), y in [0, ny),
// z in [1, nz].
struct FlightVolume {
  double step = 5.0;
  int nx = 21;
  int ny = 21;
  int nz = 24;

  static FlightVolume from_meters(double x_m, double y_m, double z_m, double step);

  bool contains(const GridPoint& p) const {
    return p.x >= 0 && p.x < nx && p.y >= 0 && p.y < ny && p.z >= 1 && p.z <= nz;
  }
  long cell_count() const { return static_cast<long>(nx) * ny * nz; }
  Vec3 meters(const GridPoint& p) const {
    return Vec3(p.x * step, p.y * step, p.z * step);
  }
};

// Uniform rectangular array on the ground plane. Antenna n (0-based,
// n = ny_idx*nx + nx_idx) sits at (nx_idx*spacing, ny_idx*spacing, 0).
struct AntennaArray {
  int nx = 0;
  int ny = 0;
  double spacing = 0.0;
  std::vector<Vec3> positions;

  int size() const { return nx * ny; }
  Vec3 center() const {
    return Vec3((nx - 1) * spacing / 2.0, (ny - 1) * spacing / 2.0, 0.0);
  }
};

AntennaArray build_ura(int nx, int ny, double spacing);

inline double distance(const Vec3& uav, const Vec3& antenna) {
  return (uav - antenna).norm();
}

struct InvalidConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace swarmcap
