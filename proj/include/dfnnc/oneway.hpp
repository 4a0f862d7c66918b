#pragma once

#include "dfnnc/channel.hpp"
#include "dfnnc/gaussian_system.hpp"
#include "dfnnc/search.hpp"

namespace dfnnc {

/// Power split of the combined DF-NNC scheme.
///
/// The source sends U = alpha1 S1 + beta1 S2 (common, block Markov) plus
/// gamma1 S3 (private); the relay sends alpha2 S1 (coherent with the common
/// stream) plus beta2 S4 (compression index). The relay compresses
/// Yr into Yr + Z' with Var(Z') = compression_noise; +infinity disables
/// compression.
struct OneWayCombinedParams {
  double alpha1 = 0.0;
  double beta1 = 0.0;
  double gamma1 = 0.0;
  double alpha2 = 0.0;
  double beta2 = 0.0;
  double compression_noise = 1.0;

  /// Throws std::invalid_argument when a coefficient is negative, a power
  /// budget is exceeded, or compression_noise <= 0.
  void validate(double power) const;
};

/// Decode-forward with source/relay correlation rho:
/// min{ C(g1^2 (1-rho^2) P), C(g^2 P + g2^2 P + 2 rho g g2 P) }.
double df_rate(const OneWayChannel& ch, double rho);

/// Noisy network coding with independent full-power Gaussian inputs and
/// Gaussian compression noise of variance q (may be +infinity).
double nnc_rate(const OneWayChannel& ch, double q);

/// The closed-form Gaussian rate of the combined scheme (compression noise
/// does not enter).
double combined_rate_closed_form(const OneWayChannel& ch, const OneWayCombinedParams& p);

struct OneWayEngineTerms {
  double r10 = 0.0;  // common stream, clamped at 0
  double r11 = 0.0;  // private stream, clamped at 0
  double total() const { return r10 + r11; }
};

/// The joint law of (Ur, U, X, Xr, Y, Yr, Yhat_r) under the combined
/// scheme's Gaussian signaling, with Ur = S1. Yhat_r is absent when the
/// compression noise is infinite.
GaussianSystem oneway_signaling(const OneWayChannel& ch, const OneWayCombinedParams& p);

/// The general two-stream rate bounds evaluated term by term on
/// oneway_signaling.
OneWayEngineTerms combined_rate_terms_via_engine(const OneWayChannel& ch, const OneWayCombinedParams& p);
double combined_rate_via_engine(const OneWayChannel& ch, const OneWayCombinedParams& p);

/// max over rho in [0,1] of min{ C((g^2+g1^2)(1-rho^2)P), C(g^2P + g2^2P + 2 rho g g2 P) }.
double oneway_cutset_bound(const OneWayChannel& ch);

struct DfOptimum {
  double rho = 0.0;
  double rate = 0.0;
};
DfOptimum optimize_df_rate(const OneWayChannel& ch);

struct CompressionOptimum {
  double compression_noise = 1.0;
  double rate = 0.0;
};
/// Compression noise searched on a log grid over [1e-6, 1e6].
CompressionOptimum optimize_nnc_rate(const OneWayChannel& ch);

/// Best compression noise for combined_rate_via_engine at fixed powers.
CompressionOptimum optimize_engine_compression(const OneWayChannel& ch, OneWayCombinedParams p);

struct OneWayCombinedOptimum {
  OneWayCombinedParams params;
  double rate = 0.0;
};

/// Maximizes combined_rate_closed_form over both power spheres. The
/// optimal DF and NNC operating points are mapped into the combined family
/// and seed the search.
OneWayCombinedOptimum optimize_combined_rate(const OneWayChannel& ch, const SearchBudget& budget);

/// Maximizes combined_rate_via_engine over both power spheres and the
/// compression noise (log scale, [1e-6, 1e6] plus +infinity). Seeded the
/// same way as optimize_combined_rate.
OneWayCombinedOptimum optimize_combined_rate_via_engine(const OneWayChannel& ch, const SearchBudget& budget);

/// Compression-noise range shared by the one-way and two-way searches.
inline constexpr double kMinCompressionNoise = 1e-6;
inline constexpr double kMaxCompressionNoise = 1e6;

}  // namespace dfnnc
