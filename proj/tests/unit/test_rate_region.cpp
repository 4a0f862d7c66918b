#include "dfnnc/rate_region.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <limits>
#include <random>

using namespace dfnnc;

namespace {

bool same_points(std::vector<RatePoint> a, std::vector<RatePoint> b, double tol = 1e-12) {
  if (a.size() != b.size()) return false;
  const auto lt = [](const RatePoint& x, const RatePoint& y) { return x.r1 < y.r1 || (x.r1 == y.r1 && x.r2 < y.r2); };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].r1 - b[i].r1) > tol || std::abs(a[i].r2 - b[i].r2) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("vertex enumeration") {
  const RatePolytope p{{{1, 0, 2}, {0, 1, 2}, {1, 1, 3}, {2, 1, 4}}};
  CHECK(same_points(polytope_vertices(p), {{0, 0}, {2, 0}, {1, 2}, {0, 2}}));
  CHECK(same_points(polytope_vertices({{{1, 0, 0}, {0, 1, 0}}}), {{0, 0}}));
  CHECK(same_points(polytope_vertices({{{1, 0, 1}, {0, 1, 1}}}), {{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(same_points(polytope_vertices({{{1, 0, inf}, {0, 1, 0}}}), {{0, 0}, {kRateCap, 0}}));
  for (const auto& v : polytope_vertices(p)) CHECK(p.satisfies(v, 1e-9));
}

TEST_CASE("vertices come out counterclockwise from the origin") {
  const auto v = polytope_vertices({{{1, 0, 2}, {0, 1, 2}, {1, 1, 3}}});
  REQUIRE(v.size() == 5);
  CHECK(v.front() == RatePoint{0, 0});
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    const auto& c = v[(i + 2) % v.size()];
    CHECK((b.r1 - a.r1) * (c.r2 - a.r2) - (b.r2 - a.r2) * (c.r1 - a.r1) > 0.0);
  }
}

TEST_CASE("polytope validation") {
  CHECK_THROWS_AS(RatePolytope{}.validate(), std::invalid_argument);
  CHECK_THROWS_AS((RatePolytope{{{3, 0, 1}}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((RatePolytope{{{0, 0, 1}}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((RatePolytope{{{1, 0, -1}}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((RatePolytope{{{1, 0, std::nan("")}}}.validate()), std::invalid_argument);
}

TEST_CASE("convex hull") {
  CHECK(same_points(convex_hull({{0, 0}, {1, 0}, {0, 1}, {0.4, 0.4}}).vertices, {{0, 0}, {1, 0}, {0, 1}}));
  CHECK(same_points(convex_hull({{0.5, 0.25}}).vertices, {{0.5, 0.25}}));
  CHECK(same_points(convex_hull({{0, 0}, {1, 0}, {0, 1}, {1.5, 0.5}}).vertices, {{0, 0}, {1, 0}, {0, 1}, {1.5, 0.5}}));
  CHECK(same_points(convex_hull({{0, 0}, {1, 0}, {2, 0}, {0, 1}}).vertices, {{0, 0}, {2, 0}, {0, 1}}));
  CHECK_THROWS_AS(convex_hull({}), std::invalid_argument);
}

TEST_CASE("hull is idempotent") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int k = 0; k < 50; ++k) {
    std::vector<RatePoint> pts(3 + k % 17);
    for (auto& p : pts) p = {u(rng), u(rng)};
    const RateRegion once = convex_hull(pts);
    const RateRegion twice = convex_hull(once.vertices);
    CHECK(once.vertices == twice.vertices);
  }
}

TEST_CASE("weighted sums and containment") {
  const RateRegion rect = convex_hull({{0, 0}, {2, 0}, {2, 1}, {0, 1}});
  CHECK(weighted_sum_max(rect, 1.0) == 2.0);
  CHECK(weighted_sum_max(rect, 0.0) == 1.0);
  CHECK(weighted_sum_max(rect, 0.5) == 1.5);
  CHECK(sum_rate(rect) == 3.0);
  CHECK(sum_rate(RateRegion{{{0, 0}}}) == 0.0);
  CHECK(contains(rect, {2, 1}, 0.0));
  CHECK(contains(rect, {0, 0}, 0.0));
  CHECK(contains(rect, {1, 0.5}, 0.0));
  CHECK_FALSE(contains(rect, {5, 5}, 1e-6));
  CHECK(contains(rect, {2.0 + 1e-9, 1.0}, 1e-6));
  CHECK(area(rect) == doctest::Approx(2.0));
  CHECK(contains(RateRegion{{{0, 0}}}, {0, 0}, 1e-12));
}

TEST_CASE("support function bounds every vertex") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int k = 0; k < 20; ++k) {
    std::vector<RatePoint> pts(8);
    for (auto& p : pts) p = {u(rng), u(rng)};
    const RateRegion r = convex_hull(pts);
    for (double w = 0.0; w <= 1.0; w += 0.125) {
      for (const auto& p : pts) CHECK(w * p.r1 + (1 - w) * p.r2 <= weighted_sum_max(r, w) + 1e-12);
    }
  }
}

TEST_CASE("union of regions") {
  const RateRegion a = convex_hull({{0, 0}, {2, 0}, {0, 1}});
  const RateRegion b = convex_hull({{0, 0}, {1, 0}, {0, 2}});
  const RateRegion u = hull_of_union({a, b});
  CHECK(same_points(u.vertices, {{0, 0}, {2, 0}, {0, 2}}));
}

TEST_CASE("area against a column scan") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (int k = 0; k < 20; ++k) {
    std::vector<oracle::HalfPlane> hs{{1, 0, u(rng)}, {0, 1, u(rng)}, {1, 1, u(rng)}, {2, 1, u(rng)}, {1, 2, u(rng)}};
    RatePolytope p;
    for (const auto& h : hs) p.constraints.push_back({h.a, h.b, h.c});
    const RateRegion r = convex_hull(polytope_vertices(p));
    CHECK(std::abs(area(r) - oracle::scanned_area(hs, kRateCap, 20000)) <= 1e-3);
  }
}
