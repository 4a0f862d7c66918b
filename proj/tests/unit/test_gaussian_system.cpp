#include "dfnnc/gaussian_system.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <numbers>
#include <random>

using namespace dfnnc;

namespace {

constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;

GaussianSystem awgn(double g, double p) {
  GaussianSystem sys(2);
  sys.add_variable("X", {std::sqrt(p), 0});
  sys.add_variable("Y", {g * std::sqrt(p), 1});
  return sys;
}

// Random system of `vars` variables over `sources` sources.
GaussianSystem random_system(std::mt19937_64& rng, std::size_t sources, std::size_t vars) {
  std::normal_distribution<double> n;
  GaussianSystem sys(sources);
  for (std::size_t v = 0; v < vars; ++v) {
    std::vector<double> row(sources);
    for (auto& x : row) x = n(rng);
    sys.add_variable("V" + std::to_string(v), row);
  }
  return sys;
}

}  // namespace

TEST_CASE("add_variable checks names and lengths") {
  GaussianSystem sys(2);
  sys.add_variable("X", {std::sqrt(10.0), 0});
  CHECK(sys.covariance(sys.id("X"), sys.id("X")) == doctest::Approx(10.0));
  sys.add_variable("Y", {std::sqrt(10.0), 1});
  CHECK(sys.covariance(sys.id("X"), sys.id("Y")) == doctest::Approx(10.0));
  CHECK(sys.covariance(sys.id("Y"), sys.id("Y")) == doctest::Approx(11.0));
  CHECK_THROWS_AS(sys.add_variable("Z", {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(sys.add_variable("X", {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sys.id("nope"), std::invalid_argument);
}

TEST_CASE("entropy of scalars and pairs") {
  GaussianSystem sys(2);
  const VarId x = sys.add_variable("X", {std::sqrt(10.0), 0});
  const VarId y = sys.add_variable("Y", {std::sqrt(10.0), 1});
  const Entropy hx = sys.entropy({x});
  CHECK(hx.nats == doctest::Approx(0.5 * std::log(kTwoPiE * 10.0)).epsilon(1e-12));
  CHECK(hx.nats == doctest::Approx(2.5702).epsilon(1e-4));
  CHECK_FALSE(hx.degenerate);

  CHECK(sys.entropy({x, x}).degenerate);

  // det [[10, 10], [10, 11]] = 10
  const double hand = oracle::det2(10, 10, 10, 11);
  CHECK(hand == doctest::Approx(10.0));
  const Entropy hxy = sys.entropy({x, y});
  CHECK(hxy.nats == doctest::Approx(0.5 * std::log(kTwoPiE * kTwoPiE * hand)).epsilon(1e-12));
  CHECK(hxy.rank == 2);
}

TEST_CASE("mutual information special cases") {
  const GaussianSystem sys = awgn(1.0, 10.0);
  const VarId x = sys.id("X");
  const VarId y = sys.id("Y");
  CHECK(sys.conditional_mutual_info({x}, {y}) == doctest::Approx(0.5 * std::log2(11.0)).epsilon(1e-12));
  CHECK(sys.conditional_mutual_info({x}, {y}, {x}) == 0.0);
  CHECK(std::isinf(sys.conditional_mutual_info({x}, {x})));
  CHECK(sys.conditional_mutual_info({}, {y}) == 0.0);
}

TEST_CASE("AWGN closed form on a grid") {
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const double g = 0.1 + 0.5 * i;
      const double p = 0.01 * std::pow(10.0, 0.5 * j);
      const GaussianSystem sys = awgn(g, p);
      CHECK(std::abs(sys.conditional_mutual_info({sys.id("X")}, {sys.id("Y")}) - oracle::capacity(g * g * p)) <= 1e-12);
    }
  }
}

TEST_CASE("chain rule on a three-source system") {
  GaussianSystem sys(3);
  const VarId x = sys.add_variable("X", {2, 0, 0});
  const VarId w = sys.add_variable("W", {2, 0.5, 0});
  const VarId y = sys.add_variable("Y", {1, 1, 1});
  const double lhs = sys.conditional_mutual_info({x, w}, {y});
  const double rhs = sys.conditional_mutual_info({x}, {y}) + sys.conditional_mutual_info({w}, {y}, {x});
  CHECK(std::abs(lhs - rhs) <= 1e-12);

  // Same quantities by hand: covariance of (X, W, Y).
  const double cov[3][3] = {{4, 4, 2}, {4, 4.25, 2.5}, {2, 2.5, 3}};
  const double h_xw = oracle::det2(cov[0][0], cov[0][1], cov[1][0], cov[1][1]);
  const double joint = oracle::det3(cov);
  const double by_hand = 0.5 * std::log2(h_xw * cov[2][2] / joint);
  CHECK(std::abs(lhs - by_hand) <= 1e-12);
}

TEST_CASE("randomized chain rule, symmetry, nonnegativity, scale invariance") {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t sources = 2 + trial % 5;
    const GaussianSystem sys = random_system(rng, sources, 5);
    const VarSet a{0}, a2{1}, b{2, 3}, c{4};
    VarSet aa{0, 1};
    const double lhs = sys.conditional_mutual_info(aa, b, c);
    VarSet ac = a;
    ac.insert(ac.end(), c.begin(), c.end());
    const double rhs = sys.conditional_mutual_info(a, b, c) + sys.conditional_mutual_info(a2, b, ac);
    if (std::isfinite(lhs) && std::isfinite(rhs)) CHECK(std::abs(lhs - rhs) <= 1e-9);
    const double ab = sys.conditional_mutual_info(a, b, c);
    const double ba = sys.conditional_mutual_info(b, a, c);
    CHECK(ab == ba);
    CHECK(ab >= 0.0);
    CHECK(sys.conditional_mutual_info_nats_unclamped(a, b, c) >= -1e-9);
  }
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 20; ++trial) {
    GaussianSystem s1(4), s2(4);
    for (int v = 0; v < 3; ++v) {
      std::vector<double> row(4);
      for (auto& x : row) x = n(rng);
      s1.add_variable("V" + std::to_string(v), row);
      if (v == 1) {
        for (auto& x : row) x *= -3.7;
      }
      s2.add_variable("V" + std::to_string(v), row);
    }
    CHECK(std::abs(s1.conditional_mutual_info({0}, {1}, {2}) - s2.conditional_mutual_info({0}, {1}, {2})) <= 1e-9);
  }
}

TEST_CASE("Monte-Carlo cross-check on random three-variable systems") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<std::vector<double>> coef(3, std::vector<double>(3));
    GaussianSystem sys(3);
    for (int v = 0; v < 3; ++v) {
      for (auto& x : coef[v]) x = n(rng);
      sys.add_variable("V" + std::to_string(v), coef[v]);
    }
    const auto est = oracle::monte_carlo_mi(coef, {0}, {1}, {2}, 200000, 1000 + trial);
    const double exact = sys.conditional_mutual_info({0}, {1}, {2});
    CHECK(std::abs(est.value - exact) <= 4.0 * est.standard_error + 1e-4);
  }
}
