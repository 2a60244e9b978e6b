#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "z2top/dynamics.hpp"
#include "z2top/error.hpp"
#include "z2top/sampling.hpp"
#include "z2top/zktop.hpp"

using namespace z2top;

TEST_CASE("zk_rhs examples") {
  const ZkSystem s2(2);
  CHECK(zk_rhs(s2, std::vector<double>{1, 2, 3}) == std::vector<double>{6, 3, 2});
  const ZkSystem s4(4);
  CHECK(zk_rhs(s4, std::vector<double>{0, 2, 0, 3, 5}) == std::vector<double>(5, 0.0));
  // A single zero leaves exactly one nonzero component.
  CHECK(zk_rhs(s4, std::vector<double>{0, 2, 1, 3, 5}) == std::vector<double>{30, 0, 0, 0, 0});
  CHECK_THROWS_AS(zk_rhs(s2, std::vector<double>{1, 2}), InvalidParameter);
  CHECK_THROWS_AS(ZkSystem(1), InvalidParameter);
}

TEST_CASE("k = 2 coincides with the 3D top") {
  const ZkSystem zk(2);
  const TopSystem top(2);
  UniformSampler rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = rng.vector(3, -1, 1);
    CHECK(zk_rhs(zk, w) == omega_rhs(top, w));
    CHECK(zk_invariants(zk, w)[0] == doctest::Approx(w[0] * w[0] - w[1] * w[1]));
  }
  const auto w0 = rng.vector(3, 0.1, 0.5);
  const auto a = integrate_zk(zk, w0, 0.8);
  const auto b = integrate(top, Coordinates::omega, w0, 0.8);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    for (int j = 0; j < 3; ++j) CHECK(std::abs(a.samples[i].x[j] - b.samples[i].x[j]) < 1e-10);
  }
}

TEST_CASE("zk_invariants") {
  const ZkSystem s(3);
  CHECK(zk_invariants(s, std::vector<double>(4, 0.7)) == std::vector<double>(3, 0.0));
  CHECK(zk_invariants(s, std::vector<double>{1, 2, 3, 4}) == std::vector<double>{-3, -5, -7});
}

TEST_CASE("zk_rhs is permutation equivariant") {
  std::mt19937 gen(5);
  UniformSampler rng(5);
  for (int k = 2; k <= 6; ++k) {
    const ZkSystem s(k);
    std::vector<std::size_t> perm(s.dim());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    const auto w = rng.vector(s.dim(), -1, 1);
    std::vector<double> pw(s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) pw[perm[i]] = w[i];
    const auto r = zk_rhs(s, w);
    const auto pr = zk_rhs(s, pw);
    for (std::size_t i = 0; i < s.dim(); ++i) CHECK(pr[perm[i]] == doctest::Approx(r[i]));
  }
}

TEST_CASE("zk conservation over the guarded horizon") {
  UniformSampler rng(9);
  for (int k = 2; k <= 5; ++k) {
    const ZkSystem s(k);
    for (int trial = 0; trial < 5; ++trial) {
      const auto w0 = rng.vector(s.dim(), 0.1, 1.0);
      const auto traj = integrate_zk(s, w0, zk_guarded_horizon(s, w0));
      REQUIRE(traj.completed());
      CHECK(zk_drift(s, traj).worst < 1e-8);
    }
  }
}

TEST_CASE("zk_genus") {
  CHECK(zk_genus(2) == 1);
  CHECK(zk_genus(3) == 2);
  CHECK(zk_genus(5) == 4);
  CHECK_THROWS_AS(zk_genus(1), InvalidParameter);
}
