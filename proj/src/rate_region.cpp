#include "dfnnc/rate_region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dfnnc {
namespace {

constexpr double kDedupTolerance = 1e-12;
constexpr double kFeasibilityTolerance = 1e-9;

struct Line {
  double a;
  double b;
  double c;  // a R1 + b R2 = c
};

double cross(const RatePoint& o, const RatePoint& p, const RatePoint& q) {
  return (p.r1 - o.r1) * (q.r2 - o.r2) - (p.r2 - o.r2) * (q.r1 - o.r1);
}

bool near(const RatePoint& p, const RatePoint& q) {
  return std::abs(p.r1 - q.r1) <= kDedupTolerance && std::abs(p.r2 - q.r2) <= kDedupTolerance;
}

}  // namespace

void RatePolytope::validate() const {
  if (constraints.empty()) throw std::invalid_argument("rate polytope has no constraints");
  for (const auto& c : constraints) {
    if (c.a < 0 || c.a > 2 || c.b < 0 || c.b > 2) throw std::invalid_argument("constraint coefficients must be 0, 1 or 2");
    if (c.a == 0 && c.b == 0) throw std::invalid_argument("constraint has no rate term");
    if (std::isnan(c.bound) || c.bound < 0.0) throw std::invalid_argument("constraint bound must be >= 0");
  }
}

bool RatePolytope::satisfies(const RatePoint& pt, double tol) const {
  if (pt.r1 < -tol || pt.r2 < -tol || pt.r1 > kRateCap + tol || pt.r2 > kRateCap + tol) return false;
  for (const auto& c : constraints) {
    if (std::isinf(c.bound)) continue;
    if (c.a * pt.r1 + c.b * pt.r2 > c.bound + tol * std::max(1.0, c.bound)) return false;
  }
  return true;
}

std::vector<RatePoint> polytope_vertices(const RatePolytope& p) {
  p.validate();
  std::vector<Line> lines{{1, 0, 0}, {0, 1, 0}, {1, 0, kRateCap}, {0, 1, kRateCap}};
  for (const auto& c : p.constraints) {
    if (std::isfinite(c.bound)) lines.push_back({double(c.a), double(c.b), c.bound});
  }
  std::vector<RatePoint> candidates;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Line& u = lines[i];
      const Line& v = lines[j];
      const double det = u.a * v.b - u.b * v.a;
      if (det == 0.0) continue;
      RatePoint pt{(u.c * v.b - u.b * v.c) / det, (u.a * v.c - u.c * v.a) / det};
      if (!p.satisfies(pt, kFeasibilityTolerance)) continue;
      pt.r1 = std::max(pt.r1, 0.0);
      pt.r2 = std::max(pt.r2, 0.0);
      candidates.push_back(pt);
    }
  }
  if (candidates.empty()) return {RatePoint{}};
  return convex_hull(std::move(candidates)).vertices;
}

RateRegion convex_hull(std::vector<RatePoint> points) {
  if (points.empty()) throw std::invalid_argument("convex hull of no points");
  std::sort(points.begin(), points.end(), [](const RatePoint& x, const RatePoint& y) {
    return x.r1 < y.r1 || (x.r1 == y.r1 && x.r2 < y.r2);
  });
  std::vector<RatePoint> unique;
  for (const auto& pt : points) {
    if (std::none_of(unique.begin(), unique.end(), [&](const RatePoint& q) { return near(pt, q); })) {
      unique.push_back(pt);
    }
  }
  if (unique.size() <= 2) return RateRegion{unique};

  std::vector<RatePoint> hull(2 * unique.size());
  std::size_t k = 0;
  for (const auto& pt : unique) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pt) <= 0.0) --k;
    hull[k++] = pt;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = unique.size() - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], unique[i]) <= 0.0) --k;
    hull[k++] = unique[i];
  }
  hull.resize(k - 1);
  return RateRegion{hull};
}

RateRegion hull_of_union(const std::vector<RateRegion>& regions) {
  std::vector<RatePoint> all;
  for (const auto& r : regions) all.insert(all.end(), r.vertices.begin(), r.vertices.end());
  if (all.empty()) return RateRegion{{RatePoint{}}};
  return convex_hull(std::move(all));
}

double weighted_sum_max(const RateRegion& region, double w) {
  if (region.vertices.empty()) throw std::invalid_argument("empty rate region");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : region.vertices) best = std::max(best, w * v.r1 + (1.0 - w) * v.r2);
  return best;
}

double sum_rate(const RateRegion& region) {
  if (region.vertices.empty()) throw std::invalid_argument("empty rate region");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : region.vertices) best = std::max(best, v.r1 + v.r2);
  return best;
}

bool contains(const RateRegion& region, const RatePoint& pt, double tol) {
  const auto& v = region.vertices;
  if (v.empty()) return false;
  const auto segment_distance = [&](const RatePoint& a, const RatePoint& b) {
    const double dx = b.r1 - a.r1;
    const double dy = b.r2 - a.r2;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((pt.r1 - a.r1) * dx + (pt.r2 - a.r2) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(pt.r1 - (a.r1 + t * dx), pt.r2 - (a.r2 + t * dy));
  };
  if (v.size() == 1) return segment_distance(v[0], v[0]) <= tol;
  if (v.size() == 2) return segment_distance(v[0], v[1]) <= tol;
  bool inside = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const RatePoint& a = v[i];
    const RatePoint& b = v[(i + 1) % v.size()];
    // An outside point's nearest boundary point lies on an edge it violates.
    if (cross(a, b, pt) < 0.0) {
      inside = false;
      if (segment_distance(a, b) <= tol) return true;
    }
  }
  return inside;
}

double area(const RateRegion& region) {
  const auto& v = region.vertices;
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    twice += a.r1 * b.r2 - a.r2 * b.r1;
  }
  return 0.5 * std::abs(twice);
}

}  // namespace dfnnc
