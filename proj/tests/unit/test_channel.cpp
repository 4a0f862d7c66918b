#include "dfnnc/channel.hpp"

#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <limits>

using namespace dfnnc;

TEST_CASE("one-way geometry") {
  const OneWayChannel mid = oneway_from_geometry({0.5, 3.0}, 10.0);
  CHECK(mid.g == 1.0);
  CHECK(mid.g1 == doctest::Approx(2.8284271).epsilon(1e-7));
  CHECK(mid.g2 == doctest::Approx(2.8284271).epsilon(1e-7));
  CHECK(mid.power == 10.0);

  const OneWayChannel flat = oneway_from_geometry({0.5, 0.0}, 1.0);
  CHECK(flat.g1 == 1.0);
  CHECK(flat.g2 == 1.0);

  CHECK(oneway_from_geometry({0.99, 3.0}, 1.0).g2 == doctest::Approx(1000.0).epsilon(1e-9));
}

TEST_CASE("geometry rejects bad inputs") {
  CHECK_THROWS_AS(oneway_from_geometry({0.0, 3.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(oneway_from_geometry({1.0, 3.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(oneway_from_geometry({0.5, -1.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(twrc_from_geometry({0.5, 3.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(twrc_from_geometry({0.5, 3.0}, std::numeric_limits<double>::infinity()), std::invalid_argument);
  TwoWayChannel bad;
  bad.g12 = std::nan("");
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("geometry mirror swaps the relay gains exactly") {
  for (double d : {0.05, 0.2, 0.37, 0.5, 0.81}) {
    const OneWayChannel a = oneway_from_geometry({d, 3.0}, 10.0);
    const OneWayChannel b = oneway_from_geometry({1.0 - d, 3.0}, 10.0);
    CHECK(a.g1 == doctest::Approx(b.g2).epsilon(1e-14));
    CHECK(a.g2 == doctest::Approx(b.g1).epsilon(1e-14));

    const TwoWayChannel t = twrc_from_geometry({d, 3.0}, 10.0);
    const TwoWayChannel u = twrc_from_geometry({1.0 - d, 3.0}, 10.0).swapped();
    CHECK(t.g1r == doctest::Approx(u.g1r).epsilon(1e-14));
    CHECK(t.gr1 == doctest::Approx(u.gr1).epsilon(1e-14));
    CHECK(t.g2r == doctest::Approx(u.g2r).epsilon(1e-14));
    CHECK(t.gr2 == doctest::Approx(u.gr2).epsilon(1e-14));
  }
}

TEST_CASE("two-way geometry and swap") {
  const TwoWayChannel t = twrc_from_geometry({0.5, 3.0}, 10.0);
  for (double g : {t.g1r, t.g2r, t.gr1, t.gr2}) CHECK(g == doctest::Approx(2.8284271).epsilon(1e-7));
  CHECK(t.g12 == 1.0);
  CHECK(t.g21 == 1.0);

  const TwoWayChannel fig{.g12 = 1, .g1r = 2, .g21 = 0.5, .g2r = 3, .gr1 = 6, .gr2 = 2, .power = 3};
  const TwoWayChannel s = fig.swapped();
  CHECK(s.g12 == 0.5);
  CHECK(s.g21 == 1.0);
  CHECK(s.g1r == 3.0);
  CHECK(s.g2r == 2.0);
  CHECK(s.gr1 == 2.0);
  CHECK(s.gr2 == 6.0);
  CHECK(s.swapped().gr1 == fig.gr1);
}

TEST_CASE("capacity helper") {
  CHECK(gaussian_capacity(0.0) == 0.0);
  CHECK(gaussian_capacity(3.0) == doctest::Approx(1.0));
}
