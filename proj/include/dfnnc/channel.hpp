#pragma once

#include <cmath>

namespace dfnnc {

/// C(x) = 0.5 * log2(1 + x), the Gaussian capacity function in bits.
inline double gaussian_capacity(double snr) { return 0.5 * std::log2(1.0 + snr); }

/// Y = g X + g2 Xr + Z,  Yr = g1 X + Zr, unit-variance noises, power P at
/// the source and at the relay.
struct OneWayChannel {
  double g = 1.0;
  double g1 = 1.0;
  double g2 = 1.0;
  double power = 1.0;

  /// Throws std::invalid_argument if P <= 0 or a gain is not finite.
  void validate() const;
};

/// Y1 = g12 X2 + g1r Xr + Z1,  Y2 = g21 X1 + g2r Xr + Z2,
/// Yr = gr1 X1 + gr2 X2 + Zr, with a common power budget P.
struct TwoWayChannel {
  double g12 = 1.0;
  double g1r = 1.0;
  double g21 = 1.0;
  double g2r = 1.0;
  double gr1 = 1.0;
  double gr2 = 1.0;
  double power = 1.0;

  void validate() const;
  /// The same channel with the user labels exchanged.
  TwoWayChannel swapped() const;
};

/// Source, relay and destination on a line; the relay sits at distance d
/// from the source and 1 - d from the destination.
struct LineGeometry {
  double d = 0.5;
  double gamma = 3.0;

  void validate() const;
};

/// g = 1, g1 = d^(-gamma/2), g2 = (1-d)^(-gamma/2).
OneWayChannel oneway_from_geometry(const LineGeometry& geom, double power);

/// g12 = g21 = 1, gr1 = g1r = d^(-gamma/2), gr2 = g2r = (1-d)^(-gamma/2).
TwoWayChannel twrc_from_geometry(const LineGeometry& geom, double power);

}  // namespace dfnnc
