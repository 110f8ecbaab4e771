#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "swarmcap/channel.hpp"
#include "swarmcap/geometry.hpp"
#include "swarmcap/rng.hpp"

using namespace swarmcap;

TEST_CASE("build_ura reference layout") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  CHECK(a.size() == 64);
  CHECK(a.positions.size() == 64);
  // spans a 0.35 m x 0.35 m region
  CHECK(a.positions.back().x() == doctest::Approx(0.35));
  CHECK(a.positions.back().y() == doctest::Approx(0.35));
  // antenna n = ny_idx*nx + nx_idx
  CHECK(a.positions[8 * 1 + 2] == Vec3(2 * 0.05, 1 * 0.05, 0.0));
  for (const auto& p : a.positions) CHECK(p.z() == 0.0);
}

TEST_CASE("build_ura degenerate and tiny arrays") {
  const AntennaArray one = build_ura(1, 1, 0.05);
  CHECK(one.size() == 1);
  CHECK(one.positions[0] == Vec3(0, 0, 0));

  const AntennaArray two = build_ura(2, 1, 1.0);
  CHECK(two.positions[0] == Vec3(0, 0, 0));
  CHECK(two.positions[1] == Vec3(1, 0, 0));
}

TEST_CASE("build_ura rejects bad configs") {
  CHECK_THROWS_AS(build_ura(0, 8, 0.05), InvalidConfigError);
  CHECK_THROWS_AS(build_ura(8, 0, 0.05), InvalidConfigError);
  CHECK_THROWS_AS(build_ura(8, 8, 0.0), InvalidConfigError);
  CHECK_THROWS_AS(build_ura(8, 8, -1.0), InvalidConfigError);
}

TEST_CASE("distance basics") {
  CHECK(distance(Vec3(0, 0, 100), Vec3(0, 0, 0)) == doctest::Approx(100.0));
  CHECK(distance(Vec3(3, 4, 0), Vec3(0, 0, 0)) == doctest::Approx(5.0));
  CHECK(distance(Vec3(1, 2, 2), Vec3(1, 2, 0)) == doctest::Approx(2.0));
}

TEST_CASE("flight volume discretization") {
  const FlightVolume v = FlightVolume::from_meters(100, 100, 120, 5.0);
  CHECK(v.nx == 21);
  CHECK(v.ny == 21);
  CHECK(v.nz == 24);
  CHECK(v.cell_count() == 21 * 21 * 24);
  CHECK(v.contains(GridPoint{0, 0, 1}));
  CHECK(v.contains(GridPoint{20, 20, 24}));
  CHECK(!v.contains(GridPoint{0, 0, 0}));   // ground plane excluded
  CHECK(!v.contains(GridPoint{21, 0, 1}));
  CHECK(v.meters(GridPoint{2, 3, 4}) == Vec3(10, 15, 20));
}

TEST_CASE("channel entry phase cases") {
  const double lam = 0.01;
  const auto full = channel_entry(lam, lam);
  CHECK(full.real() == doctest::Approx(1.0));
  CHECK(full.imag() == doctest::Approx(0.0));

  const auto half = channel_entry(lam / 2, lam);
  CHECK(half.real() == doctest::Approx(-1.0));
  CHECK(std::abs(half.imag()) < 1e-12);

  const auto phys = channel_entry(lam, lam, ChannelMode::physical);
  CHECK(std::abs(phys) == doctest::Approx(1.0 / (4.0 * std::numbers::pi)));

  CHECK_THROWS_AS(channel_entry(0.0, lam), SingularGeometryError);
  CHECK_THROWS_AS(channel_entry(1.0, 0.0), InvalidConfigError);
}

TEST_CASE("channel entry phase matches high-precision reduction") {
  const double lam = 0.01;
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const double d = 1.0 + 150.0 * uniform_unit(rng);
    const auto e = channel_entry(d, lam);
    const long double cycles = std::fmod(static_cast<long double>(d), (long double)lam) / lam;
    const long double phase = -2.0L * std::numbers::pi_v<long double> * cycles;
    CHECK(std::abs(e.real() - (double)std::cos(phase)) < 1e-9);
    CHECK(std::abs(e.imag() - (double)std::sin(phase)) < 1e-9);
  }
}

TEST_CASE("channel matrix shapes and unit modulus") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  const FlightVolume v = FlightVolume::from_meters(100, 100, 120, 5.0);

  const ChannelMatrix h1 = channel_matrix({GridPoint{3, 4, 10}}, v, a, 0.01);
  CHECK(h1.rows() == 64);
  CHECK(h1.cols() == 1);

  std::vector<GridPoint> pos;
  std::mt19937_64 rng(5);
  while (pos.size() < 10) {
    GridPoint p{uniform_index(rng, 21), uniform_index(rng, 21), 1 + uniform_index(rng, 24)};
    if (std::find(pos.begin(), pos.end(), p) == pos.end()) pos.push_back(p);
  }
  const ChannelMatrix h = channel_matrix(pos, v, a, 0.01);
  CHECK(h.rows() == 64);
  CHECK(h.cols() == 10);
  for (int i = 0; i < h.rows(); ++i) {
    for (int j = 0; j < h.cols(); ++j) {
      CHECK(std::abs(std::abs(h(i, j)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("channel matrix input validation") {
  const AntennaArray a = build_ura(2, 2, 0.05);
  CHECK_THROWS_AS(channel_matrix(std::vector<Vec3>{}, a, 0.01), InvalidConfigError);
  CHECK_THROWS_AS(channel_matrix(std::vector<Vec3>{Vec3(0, 0, 5), Vec3(0, 0, 5)}, a, 0.01),
                  CollisionError);
}

TEST_CASE("mirror-symmetric positions give index-reversed columns") {
  const AntennaArray a = build_ura(4, 4, 0.05);
  const Vec3 c = a.center();
  const Vec3 p(12.0, 31.0, 40.0);
  const Vec3 q(2 * c.x() - p.x(), 2 * c.y() - p.y(), p.z());
  const ChannelMatrix h = channel_matrix(std::vector<Vec3>{p, q}, a, 0.01);
  // mirroring the UAV about the array center permutes antennas by full
  // index reversal, checked by direct evaluation at both positions
  const int n = a.size();
  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(h(i, 1) - h(n - 1 - i, 0)) < 1e-8);
  }
}

TEST_CASE("translation of swarm and array together leaves normalized channel unchanged") {
  const AntennaArray a = build_ura(4, 4, 0.05);
  std::vector<Vec3> pos = {Vec3(10, 20, 30), Vec3(45, 5, 60), Vec3(70, 70, 15)};
  const ChannelMatrix h0 = channel_matrix(pos, a, 0.01);

  const Vec3 offset(13.0, -7.0, 21.0);
  AntennaArray shifted = a;
  for (auto& ap : shifted.positions) ap += offset;
  std::vector<Vec3> moved;
  for (const auto& p : pos) moved.push_back(p + offset);
  const ChannelMatrix h1 = channel_matrix(moved, shifted, 0.01);

  CHECK((h1 - h0).cwiseAbs().maxCoeff() < 1e-6);
}
