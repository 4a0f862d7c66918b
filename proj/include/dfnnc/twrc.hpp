#pragma once

#include "dfnnc/channel.hpp"
#include "dfnnc/gaussian_system.hpp"
#include "dfnnc/rate_region.hpp"
#include "dfnnc/search.hpp"

#include <array>
#include <limits>
#include <string_view>
#include <vector>

namespace dfnnc {

/// Power split and compression noises of the combined DF-LNNC scheme.
///
/// User l sends W = alpha S_a (Markov common), U = W + beta S_b,
/// V = U + gamma S_c (independent common), X = V + delta S_d (private).
/// The relay sends Vr = alpha31 S1 + alpha32 S5 + beta3 S10,
/// Ur = Vr + gamma3 S9, Xr = Ur + delta3 S11. Compression layers are
/// Yhat_r = Yr + N(0, qhat) and Ytilde_r = Yhat_r + N(0, qtilde); an
/// infinite variance removes the layer (an infinite qhat removes both).
struct TwrcParams {
  double alpha1 = 0.0, beta1 = 0.0, gamma1 = 0.0, delta1 = 0.0;
  double alpha2 = 0.0, beta2 = 0.0, gamma2 = 0.0, delta2 = 0.0;
  double alpha31 = 0.0, alpha32 = 0.0, beta3 = 0.0, gamma3 = 0.0, delta3 = 0.0;
  double qhat = std::numeric_limits<double>::infinity();
  double qtilde = std::numeric_limits<double>::infinity();

  /// Throws std::invalid_argument on a non-finite coefficient, an exceeded
  /// power budget, or a non-positive compression noise.
  void validate(double power) const;
  /// Same scheme with the user labels exchanged.
  TwrcParams swapped() const;
};

/// Which destination decodes with both compression layers.
enum class LayerAssignment { user1_refined, user2_refined };

inline constexpr std::size_t kConstraintCount = 19;

/// I1..I19 in bits. `values` uses the labeling in which user 1 is refined;
/// `mirrored` holds the same nineteen expressions with the user indices
/// exchanged, which is what the user-2-refined region needs.
struct ConstraintSet {
  std::array<double, kConstraintCount> values{};
  std::array<double, kConstraintCount> mirrored{};

  /// 1-based access to values.
  double operator()(std::size_t j) const { return values.at(j - 1); }
};

/// Variables W1 U1 V1 X1 W2 U2 V2 X2 Vr Ur Xr Y1 Y2 Yr Yhat_r Ytilde_r over
/// 16 sources: S1..S11, the two compression noises, Z1, Z2, Zr.
GaussianSystem build_signaling(const TwoWayChannel& ch, const TwrcParams& p);

ConstraintSet constraint_set(const TwoWayChannel& ch, const TwrcParams& p);

/// The nineteen expressions on an already built system. With `mirror` the
/// user indices are exchanged.
std::array<double, kConstraintCount> constraint_values(const GaussianSystem& sys, bool mirror);

/// Right-hand sides of the four region bounds, in (R1, R2) coordinates.
/// `weighted` bounds 2 R1 + R2 for user1_refined and R1 + 2 R2 for
/// user2_refined. Single-rate bounds are capped at kRateCap.
struct RegionBounds {
  double r1 = 0.0;
  double r2 = 0.0;
  double sum = 0.0;
  double weighted = 0.0;
};

RegionBounds region_bounds(const ConstraintSet& cs, LayerAssignment layers);
RatePolytope region_for_params(const ConstraintSet& cs, LayerAssignment layers);

/// Hull of both layer assignments at one parameter point.
RateRegion region_at(const TwoWayChannel& ch, const TwrcParams& p);

enum class TwrcScheme { combined, rankov_df, xie_df, lnnc };

std::string_view scheme_name(TwrcScheme scheme);

/// Search coordinates of a scheme. Every scheme is a restriction of the
/// combined one; the fixed coefficients sit at zero or at full power.
Domain scheme_domain(TwrcScheme scheme, double power);
TwrcParams scheme_params(TwrcScheme scheme, double power, std::span<const double> values);
/// Inverse of scheme_params for the combined scheme.
std::vector<double> combined_values(const TwrcParams& p);

struct TwrcSearchResult {
  RateRegion region;
  /// One incumbent per weight, followed by any seeds.
  std::vector<TwrcParams> operating_points;
};

/// Weights 0, 1/8, ..., 1 for tracing a region boundary.
std::vector<double> default_region_weights();

/// For each weight w, maximizes w R1 + (1 - w) R2 over the scheme's
/// parameters; returns the hull of the regions at all incumbents and seeds.
/// Weights run in parallel on budget.jobs threads.
TwrcSearchResult search_region(const TwoWayChannel& ch, TwrcScheme scheme, const SearchBudget& budget,
                               const std::vector<double>& weights, std::span<const TwrcParams> seeds = {});

/// Convex hull of both layer assignments over the full parameter family.
/// The three special-case optima seed the search.
RateRegion combined_region(const TwoWayChannel& ch, const SearchBudget& budget,
                           const std::vector<double>& weights = default_region_weights());
/// gamma1 = delta1 = gamma2 = delta2 = gamma3 = delta3 = 0, no compression.
RateRegion rankov_df_region(const TwoWayChannel& ch, const SearchBudget& budget,
                            const std::vector<double>& weights = default_region_weights());
/// Independent common messages only, no compression.
RateRegion xie_df_region(const TwoWayChannel& ch, const SearchBudget& budget,
                         const std::vector<double>& weights = default_region_weights());
/// Private messages and layered compression only.
RateRegion lnnc_region(const TwoWayChannel& ch, const SearchBudget& budget,
                       const std::vector<double>& weights = default_region_weights());

struct TwrcComparison {
  TwrcSearchResult rankov_df;
  TwrcSearchResult xie_df;
  TwrcSearchResult lnnc;
  TwrcSearchResult combined;
};

/// Runs the three special cases with `special_budget`, then the combined
/// scheme with `combined_budget` seeded by their operating points.
TwrcComparison compare_twrc_schemes(const TwoWayChannel& ch, const SearchBudget& special_budget,
                                    const SearchBudget& combined_budget, const std::vector<double>& weights);

/// Cut-set outer bound: R1 <= min{C((gr1^2 + g21^2) P), C((|g21| + |g2r|)^2 P)}
/// and symmetrically for R2.
RatePolytope twrc_cutset_bound(const TwoWayChannel& ch);

}  // namespace dfnnc
