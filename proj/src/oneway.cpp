#include "dfnnc/oneway.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dfnnc {
namespace {

constexpr double kPowerSlack = 1e-9;
constexpr int kScalarGridSteps = 101;

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite and >= 0");
}

double clamp0(double v) { return std::max(v, 0.0); }

}  // namespace

void OneWayCombinedParams::validate(double power) const {
  require_nonnegative(alpha1, "alpha1");
  require_nonnegative(beta1, "beta1");
  require_nonnegative(gamma1, "gamma1");
  require_nonnegative(alpha2, "alpha2");
  require_nonnegative(beta2, "beta2");
  const double limit = power * (1.0 + kPowerSlack);
  if (alpha1 * alpha1 + beta1 * beta1 + gamma1 * gamma1 > limit) {
    throw std::invalid_argument("source power split exceeds the budget");
  }
  if (alpha2 * alpha2 + beta2 * beta2 > limit) throw std::invalid_argument("relay power split exceeds the budget");
  if (!(compression_noise > 0.0)) throw std::invalid_argument("compression noise must be positive");
}

double df_rate(const OneWayChannel& ch, double rho) {
  ch.validate();
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [0, 1]");
  const double p = ch.power;
  const double relay = gaussian_capacity(ch.g1 * ch.g1 * (1.0 - rho * rho) * p);
  const double dest = gaussian_capacity(ch.g * ch.g * p + ch.g2 * ch.g2 * p + 2.0 * rho * ch.g * ch.g2 * p);
  return std::min(relay, dest);
}

double nnc_rate(const OneWayChannel& ch, double q) {
  ch.validate();
  if (!(q > 0.0)) throw std::invalid_argument("compression noise must be positive");
  const double amp = std::sqrt(ch.power);
  const bool compress = std::isfinite(q);
  // Sources: S1 (source), S2 (relay), Z, Zr, Z'.
  GaussianSystem sys(5);
  const VarId x = sys.add_variable("X", {amp, 0, 0, 0, 0});
  const VarId xr = sys.add_variable("Xr", {0, amp, 0, 0, 0});
  const VarId y = sys.add_variable("Y", {ch.g * amp, ch.g2 * amp, 1, 0, 0});
  const VarId yr = sys.add_variable("Yr", {ch.g1 * amp, 0, 0, 1, 0});
  if (!compress) {
    return clamp0(std::min(sys.conditional_mutual_info({x}, {y}, {xr}), sys.conditional_mutual_info({x, xr}, {y})));
  }
  const VarId yhat = sys.add_variable("Yhat_r", {ch.g1 * amp, 0, 0, 1, std::sqrt(q)});
  const double cut_relay = sys.conditional_mutual_info({x}, {y, yhat}, {xr});
  const double cut_dest =
      sys.conditional_mutual_info({x, xr}, {y}) - sys.conditional_mutual_info({yhat}, {yr}, {xr, x, y});
  return clamp0(std::min(cut_relay, cut_dest));
}

double combined_rate_closed_form(const OneWayChannel& ch, const OneWayCombinedParams& p) {
  ch.validate();
  p.validate(ch.power);
  const double g = ch.g;
  const double g1 = ch.g1;
  const double g2 = ch.g2;
  const double a1 = p.alpha1;
  const double b1 = p.beta1;
  const double c1 = p.gamma1;
  const double a2 = p.alpha2;
  const double b2 = p.beta2;

  const double relay_common = gaussian_capacity(g1 * g1 * b1 * b1 / (g1 * g1 * c1 * c1 + 1.0));
  const double coherent = g * a1 + g2 * a2;
  const double dest_common =
      gaussian_capacity((coherent * coherent + g * g * b1 * b1) / (g * g * c1 * c1 + g2 * g2 * b2 * b2 + 1.0));
  const double direct = g * g * c1 * c1;
  const double via_relay = g1 * g1 * c1 * c1;
  const double relay_tx = g2 * g2 * b2 * b2;
  const double priv = gaussian_capacity(direct + via_relay * relay_tx / (direct + via_relay + relay_tx + 1.0));
  return std::min(relay_common, dest_common) + priv;
}

GaussianSystem oneway_signaling(const OneWayChannel& ch, const OneWayCombinedParams& p) {
  ch.validate();
  p.validate(ch.power);
  // Sources: S1..S4, Z, Zr, Z'.
  GaussianSystem sys(7);
  const double a1 = p.alpha1;
  const double b1 = p.beta1;
  const double c1 = p.gamma1;
  const double a2 = p.alpha2;
  const double b2 = p.beta2;
  sys.add_variable("Ur", {1, 0, 0, 0, 0, 0, 0});
  sys.add_variable("U", {a1, b1, 0, 0, 0, 0, 0});
  sys.add_variable("X", {a1, b1, c1, 0, 0, 0, 0});
  sys.add_variable("Xr", {a2, 0, 0, b2, 0, 0, 0});
  sys.add_variable("Y", {ch.g * a1 + ch.g2 * a2, ch.g * b1, ch.g * c1, ch.g2 * b2, 1, 0, 0});
  sys.add_variable("Yr", {ch.g1 * a1, ch.g1 * b1, ch.g1 * c1, 0, 0, 1, 0});
  if (std::isfinite(p.compression_noise)) {
    sys.add_variable("Yhat_r", {ch.g1 * a1, ch.g1 * b1, ch.g1 * c1, 0, 0, 1, std::sqrt(p.compression_noise)});
  }
  return sys;
}

OneWayEngineTerms combined_rate_terms_via_engine(const OneWayChannel& ch, const OneWayCombinedParams& p) {
  const GaussianSystem sys = oneway_signaling(ch, p);
  const VarId ur = sys.id("Ur");
  const VarId u = sys.id("U");
  const VarId x = sys.id("X");
  const VarId xr = sys.id("Xr");
  const VarId y = sys.id("Y");
  const VarId yr = sys.id("Yr");
  const auto yhat = sys.find("Yhat_r");

  OneWayEngineTerms t;
  const double relay_decodes = sys.conditional_mutual_info({yr}, {u}, {ur, xr});
  const double dest_decodes = sys.conditional_mutual_info({u}, {y}, {ur, xr}) + sys.conditional_mutual_info({ur}, {y});
  t.r10 = clamp0(std::min(relay_decodes, dest_decodes));

  VarSet observed{y};
  if (yhat) observed.push_back(*yhat);
  const double cut_relay = sys.conditional_mutual_info({x}, observed, {u, ur, xr});
  double cut_dest = sys.conditional_mutual_info({x, xr}, {y}, {u, ur});
  if (yhat) cut_dest -= sys.conditional_mutual_info({*yhat}, {yr}, {xr, u, ur, x, y});
  t.r11 = clamp0(std::min(cut_relay, cut_dest));
  return t;
}

double combined_rate_via_engine(const OneWayChannel& ch, const OneWayCombinedParams& p) {
  return combined_rate_terms_via_engine(ch, p).total();
}

double oneway_cutset_bound(const OneWayChannel& ch) {
  ch.validate();
  const double p = ch.power;
  const double broadcast = (ch.g * ch.g + ch.g1 * ch.g1) * p;
  const auto bound = [&](double rho) {
    return std::min(gaussian_capacity(broadcast * (1.0 - rho * rho)),
                    gaussian_capacity(ch.g * ch.g * p + ch.g2 * ch.g2 * p + 2.0 * rho * ch.g * ch.g2 * p));
  };
  return grid_golden_maximize(bound, 0.0, 1.0, kScalarGridSteps).value;
}

DfOptimum optimize_df_rate(const OneWayChannel& ch) {
  const ScalarOptimum best =
      grid_golden_maximize([&](double rho) { return df_rate(ch, rho); }, 0.0, 1.0, kScalarGridSteps);
  return {best.argmax, best.value};
}

namespace {

// Rates here are quasi-concave in log10(q): one cut grows with q, the
// other shrinks.
CompressionOptimum maximize_over_log_q(const std::function<double(double)>& rate_of_q) {
  const double lo = std::log10(kMinCompressionNoise);
  const double hi = std::log10(kMaxCompressionNoise);
  const int steps = static_cast<int>(std::lround((hi - lo) * 10.0)) + 1;
  const ScalarOptimum best =
      grid_golden_maximize([&](double t) { return rate_of_q(std::pow(10.0, t)); }, lo, hi, steps, 1e-10);
  // Switching compression off is also a candidate; a useless relay is best
  // served by it and no finite noise reaches it exactly.
  const double off = rate_of_q(std::numeric_limits<double>::infinity());
  if (off > best.value) return {std::numeric_limits<double>::infinity(), off};
  return {std::pow(10.0, best.argmax), best.value};
}

}  // namespace

CompressionOptimum optimize_nnc_rate(const OneWayChannel& ch) {
  return maximize_over_log_q([&](double q) { return nnc_rate(ch, q); });
}

CompressionOptimum optimize_engine_compression(const OneWayChannel& ch, OneWayCombinedParams p) {
  return maximize_over_log_q([&](double q) {
    p.compression_noise = q;
    return combined_rate_via_engine(ch, p);
  });
}

namespace {

OneWayCombinedParams params_from_values(std::span<const double> v, double q) {
  return OneWayCombinedParams{
      .alpha1 = v[0], .beta1 = v[1], .gamma1 = v[2], .alpha2 = v[3], .beta2 = v[4], .compression_noise = q};
}

// The DF and NNC optima written as combined-scheme power splits.
std::vector<std::vector<double>> reduction_seeds(const OneWayChannel& ch) {
  const double amp = std::sqrt(ch.power);
  const DfOptimum df = optimize_df_rate(ch);
  const double rho = df.rho;
  return {
      {rho * amp, std::sqrt(std::max(1.0 - rho * rho, 0.0)) * amp, 0.0, amp, 0.0},
      {0.0, 0.0, amp, 0.0, amp},
  };
}

}  // namespace

OneWayCombinedOptimum optimize_combined_rate(const OneWayChannel& ch, const SearchBudget& budget) {
  ch.validate();
  const double amp = std::sqrt(ch.power);
  const Domain domain{Dimension::power_sphere(3, amp), Dimension::power_sphere(2, amp)};
  const std::vector<std::vector<double>> seeds = reduction_seeds(ch);
  const auto objective = [&](std::span<const double> v) {
    return combined_rate_closed_form(ch, params_from_values(v, 1.0));
  };
  const SearchResult r = maximize(objective, domain, budget, seeds);
  return {params_from_values(r.params, 1.0), r.value};
}

OneWayCombinedOptimum optimize_combined_rate_via_engine(const OneWayChannel& ch, const SearchBudget& budget) {
  ch.validate();
  const double amp = std::sqrt(ch.power);
  const Domain domain{Dimension::power_sphere(3, amp), Dimension::power_sphere(2, amp),
                      Dimension::log_interval(kMinCompressionNoise, kMaxCompressionNoise, true)};
  std::vector<std::vector<double>> seeds = reduction_seeds(ch);
  seeds[0].push_back(std::numeric_limits<double>::infinity());
  seeds[1].push_back(optimize_nnc_rate(ch).compression_noise);
  const auto objective = [&](std::span<const double> v) {
    return combined_rate_via_engine(ch, params_from_values(v, v[5]));
  };
  const SearchResult r = maximize(objective, domain, budget, seeds);
  return {params_from_values(r.params, r.params[5]), r.value};
}

}  // namespace dfnnc
