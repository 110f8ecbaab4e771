#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "swarmcap/metrics.hpp"
#include "swarmcap/rng.hpp"

using namespace swarmcap;

namespace {

const FlightVolume kVolume = FlightVolume::from_meters(100, 100, 120, 5.0);
const double kLambda = 0.01;

SwarmState random_state(int m, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return init_state(m, kVolume, radius, rng, seed);
}

SwarmState make_state(std::vector<GridPoint> pos, double radius) {
  SwarmState st;
  st.graph = build_graph(pos, kVolume, radius);
  st.positions = std::move(pos);
  return st;
}

CorrelationCache make_cache(const AntennaArray& a) {
  return CorrelationCache(kVolume, a, kLambda);
}

}  // namespace

TEST_CASE("pair correlation basics") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  const SwarmState st = random_state(10, 50.0, 21);

  const PairCorrelation self = pair_correlation(3, 3, st, kVolume, a, kLambda);
  CHECK(self.value.real() == doctest::Approx(64.0));
  CHECK(std::abs(self.value.imag()) < 1e-12);
  CHECK(self.magnitude == doctest::Approx(64.0));

  // identical positions -> maximal correlation
  const auto g = pair_correlation_value(Vec3(10, 20, 30), Vec3(10, 20, 30), a, kLambda);
  CHECK(std::abs(g) == doctest::Approx(64.0));
}

TEST_CASE("pair correlation is exactly hermitian") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  const SwarmState st = random_state(10, 50.0, 22);
  for (int k = 0; k < st.size(); ++k) {
    for (int l = k + 1; l < st.size(); ++l) {
      const PairCorrelation kl = pair_correlation(k, l, st, kVolume, a, kLambda);
      const PairCorrelation lk = pair_correlation(l, k, st, kVolume, a, kLambda);
      CHECK(kl.value.real() == lk.value.real());
      CHECK(kl.value.imag() == -lk.value.imag());
      CHECK(kl.magnitude == lk.magnitude);
    }
  }
}

TEST_CASE("pair correlation magnitude equals the channel column inner product") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  const SwarmState st = random_state(10, 50.0, 23);
  const ChannelMatrix h = channel_matrix(st.positions, kVolume, a, kLambda);
  for (int k = 0; k < st.size(); ++k) {
    for (int l = 0; l < st.size(); ++l) {
      const PairCorrelation g = pair_correlation(k, l, st, kVolume, a, kLambda);
      const double inner = std::abs(h.col(k).dot(h.col(l)));
      CHECK(g.magnitude == doctest::Approx(inner).epsilon(1e-8));
    }
  }
}

TEST_CASE("correlation cache returns the direct value") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  CorrelationCache cache = make_cache(a);
  const GridPoint p{2, 3, 10}, q{15, 7, 20};
  const double direct = std::abs(
      pair_correlation_value(kVolume.meters(p), kVolume.meters(q), a, kLambda));
  CHECK(cache.magnitude(p, q) == direct);
  CHECK(cache.magnitude(q, p) == direct);  // symmetric key
  CHECK(cache.memo_size() == 1);
}

TEST_CASE("local reward edge cases") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  CorrelationCache cache = make_cache(a);

  const SwarmState isolated = make_state({GridPoint{5, 5, 5}}, 5.0);
  CHECK(local_reward(isolated, 0, cache) == 0.0);

  // one neighbor at an identical position contributes |g| = N on both
  // ordered pairs: r = -2
  LocalView degenerate;
  degenerate.self = 0;
  degenerate.self_pos = GridPoint{5, 5, 5};
  degenerate.neighbor_ids = {1};
  degenerate.neighbor_pos = {GridPoint{5, 5, 5}};
  CHECK(local_reward(degenerate, cache) == doctest::Approx(-2.0));
}

TEST_CASE("local reward is nonpositive and bounded by the ordered pair count") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  CorrelationCache cache = make_cache(a);
  for (std::uint64_t seed = 31; seed < 41; ++seed) {
    const SwarmState st = random_state(10, 50.0, seed);
    for (int m = 0; m < st.size(); ++m) {
      const double r = local_reward(st, m, cache);
      const double d = st.graph.degree(m);
      CHECK(r <= 0.0);
      CHECK(r >= -(d + 1) * d);
    }
  }
}

TEST_CASE("neighborhood reward decomposition") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  CorrelationCache cache = make_cache(a);

  const SwarmState isolated = make_state({GridPoint{5, 5, 5}}, 5.0);
  const RewardBreakdown none = neighborhood_reward(isolated, 0, cache);
  CHECK(none.own == 0.0);
  CHECK(none.neighbor_sum == 0.0);
  CHECK(none.total == 0.0);

  const SwarmState st = random_state(3, 80.0, 55);
  for (int m = 0; m < st.size(); ++m) {
    const RewardBreakdown r = neighborhood_reward(st, m, cache);
    CHECK(r.total == r.own + r.neighbor_sum);
    // recomputation oracle: sum independent local_reward calls
    double own = local_reward(st, m, cache);
    double nb = 0.0;
    for (int i : st.graph.neighbors(m)) nb += local_reward(st, i, cache);
    CHECK(r.own == own);
    CHECK(r.neighbor_sum == doctest::Approx(nb).epsilon(1e-15));
  }
}

TEST_CASE("potential is the sum of local rewards and nonpositive") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  CorrelationCache cache = make_cache(a);
  for (std::uint64_t seed = 60; seed < 65; ++seed) {
    const SwarmState st = random_state(8, 50.0, seed);
    double sum = 0.0;
    for (int m = 0; m < st.size(); ++m) sum += local_reward(st, m, cache);
    CHECK(potential(st, cache) == doctest::Approx(sum).epsilon(1e-15));
    CHECK(potential(st, cache) <= 0.0);
  }
  // all isolated -> 0
  const SwarmState apart = make_state({GridPoint{0, 0, 1}, GridPoint{20, 20, 24}}, 5.0);
  CHECK(potential(apart, cache) == 0.0);
}

TEST_CASE("unilateral move changes the potential by exactly the reward change") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  CorrelationCache cache = make_cache(a);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const SwarmState st = random_state(10, 50.0, 1000 + trial);
    const int m = uniform_index(rng, st.size());
    const auto legal = restricted_actions(st, m, kVolume);
    const Action act = legal[uniform_index(rng, (int)legal.size())];

    const double phi0 = potential(st, cache);
    const double r0 = neighborhood_reward(st, m, cache).total;
    const SwarmState next = apply_action(st, m, act, kVolume);
    const double phi1 = potential(next, cache);
    const double r1 = neighborhood_reward(next, m, cache).total;

    const double tol = 1e-12 * std::max(1.0, std::abs(phi0));
    CHECK(std::abs((r1 - r0) - (phi1 - phi0)) <= tol);
  }
}

TEST_CASE("moving a UAV leaves non-neighbor rewards bit-identical") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  CorrelationCache cache = make_cache(a);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const SwarmState st = random_state(10, 50.0, 2000 + trial);
    const int m = uniform_index(rng, st.size());
    const auto legal = restricted_actions(st, m, kVolume);
    const Action act = legal[uniform_index(rng, (int)legal.size())];
    const SwarmState next = apply_action(st, m, act, kVolume);

    const std::vector<double> before = all_local_rewards(st, cache);
    const std::vector<double> after = all_local_rewards(next, cache);
    const auto& nm = st.graph.neighbors(m);
    for (int i = 0; i < st.size(); ++i) {
      if (i == m || std::find(nm.begin(), nm.end(), i) != nm.end()) continue;
      CHECK(before[i] == after[i]);
    }
  }
}

TEST_CASE("hypothetical evaluation matches a committed move and mutates nothing") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  CorrelationCache cache = make_cache(a);
  const SwarmState st = random_state(10, 50.0, 77);
  const auto positions_before = st.positions;
  const int m = 4;
  for (Action act : restricted_actions(st, m, kVolume)) {
    const GridPoint target = st.positions[m] + action_delta(act);
    const RewardBreakdown hypo = neighborhood_reward_with(st, m, target, cache);
    const SwarmState moved = apply_action(st, m, act, kVolume);
    const RewardBreakdown real = neighborhood_reward(moved, m, cache);
    CHECK(hypo.total == real.total);
  }
  CHECK(st.positions == positions_before);
}

TEST_CASE("capacity of the identity channel") {
  const int n = 6;
  const ChannelMatrix h = ChannelMatrix::Identity(n, n);
  const CapacityReport rep = capacity(h, static_cast<double>(n));
  CHECK(rep.det_form == doctest::Approx(n).epsilon(1e-12));
  CHECK(rep.eigen_form == doctest::Approx(n).epsilon(1e-12));
  CHECK(rep.numerical_rank == n);
}

TEST_CASE("capacity of the all-ones channel (rank one)") {
  const int n = 16, m = 4;
  const ChannelMatrix h = ChannelMatrix::Constant(n, m, {1.0, 0.0});
  const double rho = 7.0;
  const CapacityReport rep = capacity(h, rho);
  CHECK(rep.numerical_rank == 1);
  const double expected = std::log2(1.0 + rho / m * n * m);
  CHECK(rep.eigen_form == doctest::Approx(expected).epsilon(1e-12));
  CHECK(rep.det_form == doctest::Approx(expected).epsilon(1e-9));
  CHECK(jensen_gap(h, rho) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("det form and eigen form agree on random channels") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  for (std::uint64_t seed = 300; seed < 310; ++seed) {
    const SwarmState st = random_state(10, 50.0, seed);
    const ChannelMatrix h = channel_matrix(st.positions, kVolume, a, kLambda);
    for (double rho : {1.0, 10.0, 100.0}) {
      const CapacityReport rep = capacity(h, rho);
      const double rel = std::abs(rep.det_form - rep.eigen_form) /
                         std::max(1.0, std::abs(rep.det_form));
      CHECK(rel <= 1e-9);
      CHECK(rep.numerical_rank >= 1);
      CHECK(rep.numerical_rank <= 10);
      // eigenvalues sorted descending, nonnegative up to roundoff
      for (int i = 0; i + 1 < rep.eigenvalues.size(); ++i) {
        CHECK(rep.eigenvalues(i) >= rep.eigenvalues(i + 1));
      }
      CHECK(rep.eigenvalues.minCoeff() >= -1e-9 * rep.eigenvalues.maxCoeff());
    }
  }
}

TEST_CASE("capacity rejects nonpositive SNR") {
  const ChannelMatrix h = ChannelMatrix::Identity(4, 4);
  CHECK_THROWS_AS(capacity(h, 0.0), InvalidConfigError);
  CHECK_THROWS_AS(capacity(h, -1.0), InvalidConfigError);
}

TEST_CASE("capacity is monotone in SNR") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  const SwarmState st = random_state(10, 50.0, 404);
  const ChannelMatrix h = channel_matrix(st.positions, kVolume, a, kLambda);
  double prev = 0.0;
  for (double rho : {0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 100.0}) {
    const double c = capacity(h, rho).det_form;
    CHECK(c > prev);
    prev = c;
  }
}

TEST_CASE("jensen gap is nonnegative and tight at equal eigenvalues") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  for (std::uint64_t seed = 500; seed < 510; ++seed) {
    const SwarmState st = random_state(10, 50.0, seed);
    const ChannelMatrix h = channel_matrix(st.positions, kVolume, a, kLambda);
    CHECK(jensen_gap(h, 10.0) >= -1e-9);
  }
  // equal eigenvalues: scaled unitary channel
  const ChannelMatrix u = ChannelMatrix::Identity(8, 8) * 3.0;
  CHECK(jensen_gap(u, 5.0) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("numerical rank ignores unit-modulus column scaling") {
  const AntennaArray a = build_ura(8, 8, 0.05);
  const SwarmState st = random_state(10, 50.0, 606);
  ChannelMatrix h = channel_matrix(st.positions, kVolume, a, kLambda);
  const int base = numerical_rank(h);
  std::mt19937_64 rng(606);
  for (int c = 0; c < h.cols(); ++c) {
    const double phase = 2.0 * 3.14159265358979 * uniform_unit(rng);
    h.col(c) *= std::complex<double>{std::cos(phase), std::sin(phase)};
  }
  CHECK(numerical_rank(h) == base);
}

TEST_CASE("local channel matrix columns and degree contract") {
  const AntennaArray a = build_ura(4, 4, 0.05);

  // no neighbors: the local matrix is the UAV's own column
  SwarmState solo = make_state({GridPoint{4, 4, 8}}, 5.0);
  const ChannelMatrix own = local_channel_matrix(0, solo, kVolume, a, kLambda);
  CHECK(own.cols() == 1);
  CHECK(own.rows() == a.size());

  const SwarmState st = random_state(6, 60.0, 711);
  for (int m = 0; m < st.size(); ++m) {
    const ChannelMatrix hm = local_channel_matrix(m, st, kVolume, a, kLambda);
    CHECK(hm.cols() == st.graph.degree(m) + 1);
    CHECK(hm.rows() == a.size());
  }

  // complete graph: H_m is a column permutation of H
  SwarmState complete;
  complete.positions = st.positions;
  complete.graph = build_graph(st.positions, kVolume, 1e9);
  const ChannelMatrix h = channel_matrix(complete.positions, kVolume, a, kLambda);
  const ChannelMatrix hm = local_channel_matrix(2, complete, kVolume, a, kLambda);
  REQUIRE(hm.cols() == h.cols());
  // columns of H_m are neighbors ascending then self
  std::vector<int> expected_order;
  for (int i = 0; i < complete.size(); ++i) {
    if (i != 2) expected_order.push_back(i);
  }
  expected_order.push_back(2);
  for (int c = 0; c < hm.cols(); ++c) {
    CHECK((hm.col(c) - h.col(expected_order[c])).cwiseAbs().maxCoeff() == 0.0);
  }
}
