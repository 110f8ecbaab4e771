#include "swarmcap/geometry.hpp"

namespace swarmcap {

FlightVolume FlightVolume::from_meters(double x_m, double y_m, double z_m, double step) {
  if (step <= 0.0 || x_m < 0.0 || y_m < 0.0 || z_m < step) {
    throw InvalidConfigError("flight volume: need step > 0 and z extent >= step");
  }
  FlightVolume v;
  v.step = step;
  v.nx = static_cast<int>(std::floor(x_m / step + 1e-9)) + 1;
  v.ny = static_cast<int>(std::floor(y_m / step + 1e-9)) + 1;
  v.nz = static_cast<int>(std::floor(z_m / step + 1e-9));
  return v;
}

AntennaArray build_ura(int nx, int ny, double spacing) {
  if (nx < 1 || ny < 1) throw InvalidConfigError("build_ura: antenna counts must be >= 1");
  if (spacing <= 0.0) throw InvalidConfigError("build_ura: spacing must be > 0");
  AntennaArray a;
  a.nx = nx;
  a.ny = ny;
  a.spacing = spacing;
  a.positions.reserve(static_cast<size_t>(nx) * ny);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      a.positions.emplace_back(ix * spacing, iy * spacing, 0.0);
    }
  }
  return a;
}

}  // namespace swarmcap
