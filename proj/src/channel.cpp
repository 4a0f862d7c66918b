#include "dfnnc/channel.hpp"

#include <stdexcept>
#include <string>

namespace dfnnc {
namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

void require_power(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("power must be positive and finite");
}

}  // namespace

void OneWayChannel::validate() const {
  require_finite(g, "g");
  require_finite(g1, "g1");
  require_finite(g2, "g2");
  require_power(power);
}

void TwoWayChannel::validate() const {
  require_finite(g12, "g12");
  require_finite(g1r, "g1r");
  require_finite(g21, "g21");
  require_finite(g2r, "g2r");
  require_finite(gr1, "gr1");
  require_finite(gr2, "gr2");
  require_power(power);
}

TwoWayChannel TwoWayChannel::swapped() const {
  return TwoWayChannel{.g12 = g21, .g1r = g2r, .g21 = g12, .g2r = g1r, .gr1 = gr2, .gr2 = gr1, .power = power};
}

void LineGeometry::validate() const {
  if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("relay position d must lie in (0, 1)");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("path-loss exponent must be >= 0");
}

OneWayChannel oneway_from_geometry(const LineGeometry& geom, double power) {
  geom.validate();
  OneWayChannel ch{.g = 1.0,
                   .g1 = std::pow(geom.d, -geom.gamma / 2.0),
                   .g2 = std::pow(1.0 - geom.d, -geom.gamma / 2.0),
                   .power = power};
  ch.validate();
  return ch;
}

TwoWayChannel twrc_from_geometry(const LineGeometry& geom, double power) {
  geom.validate();
  const double near1 = std::pow(geom.d, -geom.gamma / 2.0);
  const double near2 = std::pow(1.0 - geom.d, -geom.gamma / 2.0);
  TwoWayChannel ch{.g12 = 1.0, .g1r = near1, .g21 = 1.0, .g2r = near2, .gr1 = near1, .gr2 = near2, .power = power};
  ch.validate();
  return ch;
}

}  // namespace dfnnc
