#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dfnnc {

struct SearchBudget {
  /// Grid points per coordinate in the coarse scan.
  int coarse_steps = 9;
  /// Pattern-search rounds after the scan; each shrinks the step.
  int refine_rounds = 4;
  double refine_shrink = 0.35;
  /// Accuracy target in bits. Refinement keeps going past refine_rounds
  /// (up to twice as many rounds) while a round still gains more than this.
  double tol = 1e-3;
  /// Refinement restarts from the best well-separated scan points.
  int refine_starts = 4;
  /// Worker threads for batch evaluation inside one search.
  int jobs = 1;

  void validate() const;
};

/// 9 steps, 4 rounds, shrink 0.35, tol 1e-3.
SearchBudget default_search_budget();
/// The TWRC combined scheme has 12 search coordinates: 5 steps, 6 rounds.
SearchBudget default_twrc_budget();

/// One block of the search domain.
///
/// An interval contributes one coordinate and one value. A log interval
/// contributes one coordinate (log10 of the value); with `infinite_top` the
/// upper endpoint decodes to +infinity. A power sphere of size k and radius r
/// contributes k-1 angles in [0, pi/2] and decodes to k nonnegative
/// coefficients whose squares sum to r^2.
class Dimension {
 public:
  enum class Kind { interval, log_interval, power_sphere };

  static Dimension interval(double lo, double hi);
  static Dimension log_interval(double lo, double hi, bool infinite_top = false);
  static Dimension power_sphere(std::size_t size, double radius);

  Kind kind() const noexcept { return kind_; }
  std::size_t coordinate_count() const noexcept;
  std::size_t value_count() const noexcept;
  double coordinate_lo() const noexcept { return lo_; }
  double coordinate_hi() const noexcept { return hi_; }

  void decode(std::span<const double> coords, std::span<double> values) const;
  void encode(std::span<const double> values, std::span<double> coords) const;

 private:
  Dimension(Kind kind, double lo, double hi, std::size_t size, double radius, bool infinite_top);

  Kind kind_;
  double lo_;  // coordinate bounds
  double hi_;
  std::size_t size_;
  double radius_;
  bool infinite_top_;
};

using Domain = std::vector<Dimension>;
using Objective = std::function<double(std::span<const double>)>;

std::size_t coordinate_count(const Domain& domain);
std::size_t value_count(const Domain& domain);
std::vector<double> decode(const Domain& domain, std::span<const double> coords);
std::vector<double> encode(const Domain& domain, std::span<const double> values);

struct SearchResult {
  std::vector<double> params;       // decoded values
  std::vector<double> coordinates;  // internal coordinates
  double value = 0.0;
  std::size_t evaluations = 0;
  /// Incumbent value after the coarse scan and after each refinement round.
  std::vector<double> round_best;
};

/// Coarse grid scan followed by coordinate-wise pattern refinement from the
/// refine_starts best scan points that are not grid neighbours.
///
/// Grids with at most kMaxTensorPoints points are scanned in full; larger
/// ones are scanned block by block (one Dimension at a time, the others
/// held at the incumbent) for two passes. `seeds` (decoded values) join
/// the scan as extra candidates. Non-finite objective values mark invalid
/// points. Equal values go to the lexicographically smallest coordinates.
/// Throws std::invalid_argument for an empty domain and std::runtime_error
/// when no scanned point is valid.
SearchResult maximize(const Objective& objective, const Domain& domain, const SearchBudget& budget,
                      std::span<const std::vector<double>> seeds = {});

inline constexpr std::size_t kMaxTensorPoints = 4096;

struct ScalarOptimum {
  double argmax = 0.0;
  double value = 0.0;
};

/// Golden-section search for a quasi-concave f on [lo, hi].
ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                      double tol = 1e-13);

/// `steps`-point grid on [lo, hi] (endpoints included), then golden-section
/// refinement between the neighbours of the best grid point.
ScalarOptimum grid_golden_maximize(const std::function<double(double)>& f, double lo, double hi, int steps,
                                   double tol = 1e-13);

}  // namespace dfnnc
