#pragma once

#include <vector>

namespace dfnnc {

struct RatePoint {
  double r1 = 0.0;
  double r2 = 0.0;

  friend bool operator==(const RatePoint&, const RatePoint&) = default;
};

/// a R1 + b R2 <= bound. An infinite bound is inactive.
struct RateConstraint {
  int a = 0;
  int b = 0;
  double bound = 0.0;
};

/// Largest single-rate bound kept when building a polytope, in bits.
inline constexpr double kRateCap = 30.0;

/// {R1 >= 0, R2 >= 0, R1 <= kRateCap, R2 <= kRateCap} intersected with the
/// listed constraints. Coefficients are restricted to {0, 1, 2}.
struct RatePolytope {
  std::vector<RateConstraint> constraints;

  /// Throws std::invalid_argument for an empty list, a coefficient outside
  /// {0, 1, 2}, an all-zero row, a NaN bound, or a negative bound.
  void validate() const;
  bool satisfies(const RatePoint& pt, double tol) const;
};

/// Vertices in counterclockwise order starting at the origin. A convex
/// polygon; never empty.
struct RateRegion {
  std::vector<RatePoint> vertices;
};

/// Feasible pairwise intersections of the boundary lines, deduplicated
/// (1e-12) and returned in counterclockwise hull order. An empty or
/// degenerate polytope yields {(0,0)}.
std::vector<RatePoint> polytope_vertices(const RatePolytope& p);

/// Andrew's monotone chain; counterclockwise from the lowest-leftmost
/// point, collinear points dropped. Throws std::invalid_argument for an
/// empty input.
RateRegion convex_hull(std::vector<RatePoint> points);

/// Hull of the union of the regions' vertices.
RateRegion hull_of_union(const std::vector<RateRegion>& regions);

/// max over vertices of w R1 + (1 - w) R2.
double weighted_sum_max(const RateRegion& region, double w);

/// max over vertices of R1 + R2.
double sum_rate(const RateRegion& region);

/// True when pt lies inside the region or within tol of its boundary.
bool contains(const RateRegion& region, const RatePoint& pt, double tol);

double area(const RateRegion& region);

}  // namespace dfnnc
