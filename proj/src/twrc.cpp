#include "dfnnc/twrc.hpp"

#include "dfnnc/oneway.hpp"
#include "dfnnc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dfnnc {
namespace {

constexpr double kPowerSlack = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kSources = 16;
constexpr VarId kAbsent = std::numeric_limits<VarId>::max();

enum Source : std::size_t { S1, S2, S3, S4, S5, S6, S7, S8, S9, S10, S11, ZHAT, ZTILDE, Z1, Z2, ZR };

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

// Variables seen from one user's point of view: `a` is the refined user.
struct Roles {
  VarId wa, ua, va, xa, ya;
  VarId wb, ub, vb, xb, yb;
  VarId vr, ur, xr, yr, yhat, ytilde;
};

Roles roles_of(const GaussianSystem& sys, bool mirror) {
  const auto opt = [&](std::string_view n) {
    const auto id = sys.find(n);
    return id ? *id : kAbsent;
  };
  Roles r{};
  const char* a = mirror ? "2" : "1";
  const char* b = mirror ? "1" : "2";
  const auto named = [&](const char* stem, const char* idx) { return sys.id(std::string(stem) + idx); };
  r.wa = named("W", a), r.ua = named("U", a), r.va = named("V", a), r.xa = named("X", a), r.ya = named("Y", a);
  r.wb = named("W", b), r.ub = named("U", b), r.vb = named("V", b), r.xb = named("X", b), r.yb = named("Y", b);
  r.vr = sys.id("Vr"), r.ur = sys.id("Ur"), r.xr = sys.id("Xr"), r.yr = sys.id("Yr");
  r.yhat = opt("Yhat_r");
  r.ytilde = opt("Ytilde_r");
  return r;
}

class Evaluator {
 public:
  Evaluator(const GaussianSystem& sys, bool mirror) : sys_(sys), v_(roles_of(sys, mirror)) {}

  // Disabled compression layers are dropped; an empty side carries nothing.
  double mi(VarSet a, VarSet b, VarSet c) const {
    strip(a), strip(b), strip(c);
    if (a.empty() || b.empty()) return 0.0;
    return sys_.conditional_mutual_info(a, b, c);
  }

  double value(std::size_t j) const {
    const Roles& v = v_;
    switch (j) {
      case 1:
        return mi({v.ytilde}, {v.xr, v.yr}, {v.ur, v.vr, v.ua, v.va, v.ub, v.vb, v.wa, v.wb});
      case 2:
        return value(1) + mi({v.yhat}, {v.yr}, {v.ytilde, v.xr, v.ur, v.vr, v.ua, v.va, v.ub, v.vb, v.wa, v.wb});
      case 3:
        return mi({v.va}, {v.yr}, {v.vr, v.wa, v.ua, v.wb, v.ub, v.vb});
      case 4:
        return mi({v.vb}, {v.yr}, {v.vr, v.wb, v.ub, v.wa, v.ua, v.va});
      case 5:
        return mi({v.ua, v.va}, {v.yr}, {v.vr, v.wa, v.wb, v.ub, v.vb});
      case 6:
        return mi({v.ub, v.vb}, {v.yr}, {v.vr, v.wb, v.wa, v.ua, v.va});
      case 7:
        return mi({v.va, v.vb}, {v.yr}, {v.vr, v.wa, v.ua, v.wb, v.ub});
      case 8:
        return mi({v.ua, v.va, v.vb}, {v.yr}, {v.vr, v.wa, v.wb, v.ub});
      case 9:
        return mi({v.ub, v.va, v.vb}, {v.yr}, {v.vr, v.wa, v.wb, v.ua});
      case 10:
        return mi({v.ua, v.va, v.ub, v.vb}, {v.yr}, {v.vr, v.wa, v.wb});
      case 11:
        return mi({v.va}, {v.yb}, {v.vr, v.wa, v.ua, v.wb, v.ub, v.vb, v.xb}) +
               mi({v.vr}, {v.yb}, {v.wa, v.wb, v.ub, v.vb, v.xb});
      case 12:
        return mi({v.wa, v.ua, v.va, v.vr}, {v.yb}, {v.wb, v.ub, v.vb, v.xb});
      case 13:
        return mi({v.vb}, {v.ya}, {v.vr, v.wb, v.ub, v.wa, v.ua, v.va, v.xa}) +
               mi({v.vr}, {v.ya}, {v.wb, v.wa, v.ua, v.va, v.xa});
      case 14:
        return mi({v.wb, v.ub, v.vb, v.vr}, {v.ya}, {v.wa, v.ua, v.va, v.xa});
      case 15:
        return mi({v.xa, v.ur}, {v.yb}, with_aux({v.xb, v.vr})) +
               mi({v.ytilde}, {v.xa, v.xb, v.yb}, with_aux({v.ur, v.vr}));
      case 16:
        return mi({v.xa}, {v.ytilde, v.yb}, with_aux({v.xb, v.ur, v.vr}));
      case 17:
        return mi({v.xb, v.xr}, {v.ya}, with_aux({v.xa, v.vr})) +
               mi({v.yhat}, {v.xa, v.xb, v.ya}, with_aux({v.ytilde, v.xr, v.ur, v.vr})) +
               mi({v.ytilde}, {v.xa, v.xb, v.xr, v.yb}, with_aux({v.ur, v.vr}));
      case 18:
        return mi({v.xb, v.xr}, {v.ya, v.ytilde}, with_aux({v.xa, v.ur, v.vr})) +
               mi({v.yhat}, {v.xa, v.xb, v.ya}, with_aux({v.ytilde, v.xr, v.ur, v.vr}));
      case 19:
        return mi({v.xb}, {v.ytilde, v.yhat, v.ya}, with_aux({v.xa, v.ur, v.xr, v.vr}));
      default:
        throw std::out_of_range("constraint index must lie in 1..19");
    }
  }

 private:
  static void strip(VarSet& s) { std::erase(s, kAbsent); }

  // Extra conditioning variables plus W, U, V of both users.
  VarSet with_aux(VarSet extra) const {
    const Roles& v = v_;
    extra.insert(extra.end(), {v.wa, v.ua, v.va, v.wb, v.ub, v.vb});
    return extra;
  }

  const GaussianSystem& sys_;
  Roles v_;
};

// Relabeling users maps I3<->I4, I5<->I6, I8<->I9, I11<->I13, I12<->I14 and
// leaves I1, I2, I7, I10 alone. I15..I19 have no partner.
constexpr std::array<std::size_t, 14> kMirrorPartner{1, 2, 4, 3, 6, 5, 7, 9, 8, 10, 13, 14, 11, 12};

// Entries the region needs; the rest stay NaN.
constexpr std::array<std::size_t, 12> kRegionEntries{1, 2, 5, 6, 10, 12, 14, 15, 16, 17, 18, 19};

ConstraintSet region_constraints(const GaussianSystem& sys) {
  ConstraintSet cs;
  cs.values.fill(std::numeric_limits<double>::quiet_NaN());
  cs.mirrored.fill(std::numeric_limits<double>::quiet_NaN());
  const Evaluator own(sys, false);
  const Evaluator mirror(sys, true);
  for (std::size_t j : kRegionEntries) cs.values[j - 1] = own.value(j);
  for (std::size_t j = 1; j <= kMirrorPartner.size(); ++j) cs.mirrored[j - 1] = cs.values[kMirrorPartner[j - 1] - 1];
  for (std::size_t j = 15; j <= kConstraintCount; ++j) cs.mirrored[j - 1] = mirror.value(j);
  return cs;
}

// a - b with a subtracted infinity meaning "nothing left".
double minus(double a, double b) {
  if (std::isinf(b)) return 0.0;
  if (std::isinf(a)) return kInf;
  return std::max(a - b, 0.0);
}

double nonneg(double x) { return std::max(x, 0.0); }

struct Bounds {
  double mine, other, sum, weighted;  // R_a, R_b, R_a + R_b, 2 R_a + R_b
};

Bounds refined_bounds(const std::array<double, kConstraintCount>& values) {
  const auto I = [&](std::size_t j) { return nonneg(values[j - 1]); };
  const double common_a = std::min(I(5), I(12));
  const double common_b = std::min(I(6), I(14));
  // The refined user's private part is min{I15 - I1, I16} in every bound.
  // Reading it as min{I5 - I1, I16} in the single-rate bound lets R_a exceed
  // the cut-set bound and zeroes R_a whenever the common layer is empty.
  const double private_a = std::min(minus(I(15), I(1)), I(16));
  const double private_b = std::min(minus(I(17), I(2)), I(19));

  Bounds b;
  b.mine = std::min(common_a + private_a, kRateCap);
  b.other = std::min(common_b + private_b, kRateCap);
  b.sum = std::min({minus(common_a + I(15) + I(18) + common_b, I(2)), minus(I(10) + I(15) + I(18), I(2)),
                    I(10) + private_a + private_b});
  b.weighted = minus(common_a + I(15) + I(18) + I(10) + private_a, I(2));
  return b;
}

RatePolytope polytope_of(const RegionBounds& b, LayerAssignment layers) {
  const bool first = layers == LayerAssignment::user1_refined;
  return RatePolytope{{
      {1, 0, b.r1},
      {0, 1, b.r2},
      {1, 1, b.sum},
      {first ? 2 : 1, first ? 1 : 2, b.weighted},
  }};
}

std::vector<RatePoint> vertices_at(const ConstraintSet& cs) {
  std::vector<RatePoint> pts = polytope_vertices(region_for_params(cs, LayerAssignment::user1_refined));
  const auto more = polytope_vertices(region_for_params(cs, LayerAssignment::user2_refined));
  pts.insert(pts.end(), more.begin(), more.end());
  return pts;
}

Dimension compression_dimension() { return Dimension::log_interval(kMinCompressionNoise, kMaxCompressionNoise, true); }

}  // namespace

void TwrcParams::validate(double power) const {
  for (double v : {alpha1, beta1, gamma1, delta1, alpha2, beta2, gamma2, delta2, alpha31, alpha32, beta3, gamma3,
                   delta3}) {
    require_finite(v, "power coefficient");
  }
  const double limit = power * (1.0 + kPowerSlack);
  const auto sq = [](std::initializer_list<double> xs) {
    double s = 0.0;
    for (double x : xs) s += x * x;
    return s;
  };
  if (sq({alpha1, beta1, gamma1, delta1}) > limit) throw std::invalid_argument("user 1 power split exceeds the budget");
  if (sq({alpha2, beta2, gamma2, delta2}) > limit) throw std::invalid_argument("user 2 power split exceeds the budget");
  if (sq({alpha31, alpha32, beta3, gamma3, delta3}) > limit) {
    throw std::invalid_argument("relay power split exceeds the budget");
  }
  if (!(qhat > 0.0) || !(qtilde > 0.0)) throw std::invalid_argument("compression noise must be positive");
}

TwrcParams TwrcParams::swapped() const {
  TwrcParams s = *this;
  std::swap(s.alpha1, s.alpha2);
  std::swap(s.beta1, s.beta2);
  std::swap(s.gamma1, s.gamma2);
  std::swap(s.delta1, s.delta2);
  std::swap(s.alpha31, s.alpha32);
  return s;
}

GaussianSystem build_signaling(const TwoWayChannel& ch, const TwrcParams& p) {
  ch.validate();
  p.validate(ch.power);
  GaussianSystem sys(kSources);
  using Row = std::array<double, kSources>;
  const auto add = [&](const char* name, const Row& row) {
    sys.add_variable(name, row);
    return row;
  };
  const auto plus = [](Row r, std::size_t s, double c) {
    r[s] += c;
    return r;
  };
  const auto combine = [](double ca, const Row& a, double cb, const Row& b, std::size_t noise) {
    Row r{};
    for (std::size_t i = 0; i < kSources; ++i) r[i] = ca * a[i] + cb * b[i];
    r[noise] = 1.0;
    return r;
  };

  Row w1{};
  w1[S1] = p.alpha1;
  add("W1", w1);
  const Row u1 = add("U1", plus(w1, S2, p.beta1));
  const Row v1 = add("V1", plus(u1, S3, p.gamma1));
  const Row x1 = add("X1", plus(v1, S4, p.delta1));

  Row w2{};
  w2[S5] = p.alpha2;
  add("W2", w2);
  const Row u2 = add("U2", plus(w2, S6, p.beta2));
  const Row v2 = add("V2", plus(u2, S7, p.gamma2));
  const Row x2 = add("X2", plus(v2, S8, p.delta2));

  Row vr{};
  vr[S1] = p.alpha31;
  vr[S5] = p.alpha32;
  vr[S10] = p.beta3;
  add("Vr", vr);
  const Row ur = add("Ur", plus(vr, S9, p.gamma3));
  const Row xr = add("Xr", plus(ur, S11, p.delta3));

  add("Y1", combine(ch.g12, x2, ch.g1r, xr, Z1));
  add("Y2", combine(ch.g21, x1, ch.g2r, xr, Z2));
  const Row yr = add("Yr", combine(ch.gr1, x1, ch.gr2, x2, ZR));
  if (std::isfinite(p.qhat)) {
    const Row yhat = add("Yhat_r", plus(yr, ZHAT, std::sqrt(p.qhat)));
    if (std::isfinite(p.qtilde)) add("Ytilde_r", plus(yhat, ZTILDE, std::sqrt(p.qtilde)));
  }
  return sys;
}

std::array<double, kConstraintCount> constraint_values(const GaussianSystem& sys, bool mirror) {
  const Evaluator e(sys, mirror);
  std::array<double, kConstraintCount> out{};
  for (std::size_t j = 1; j <= kConstraintCount; ++j) out[j - 1] = e.value(j);
  return out;
}

ConstraintSet constraint_set(const TwoWayChannel& ch, const TwrcParams& p) {
  const GaussianSystem sys = build_signaling(ch, p);
  return ConstraintSet{constraint_values(sys, false), constraint_values(sys, true)};
}

RegionBounds region_bounds(const ConstraintSet& cs, LayerAssignment layers) {
  if (layers == LayerAssignment::user1_refined) {
    const Bounds b = refined_bounds(cs.values);
    return {b.mine, b.other, b.sum, b.weighted};
  }
  const Bounds b = refined_bounds(cs.mirrored);
  return {b.other, b.mine, b.sum, b.weighted};
}

RatePolytope region_for_params(const ConstraintSet& cs, LayerAssignment layers) {
  return polytope_of(region_bounds(cs, layers), layers);
}

RateRegion region_at(const TwoWayChannel& ch, const TwrcParams& p) {
  return convex_hull(vertices_at(region_constraints(build_signaling(ch, p))));
}

std::string_view scheme_name(TwrcScheme scheme) {
  switch (scheme) {
    case TwrcScheme::combined:
      return "combined";
    case TwrcScheme::rankov_df:
      return "rankov_df";
    case TwrcScheme::xie_df:
      return "xie_df";
    case TwrcScheme::lnnc:
      return "lnnc";
  }
  return "unknown";
}

Domain scheme_domain(TwrcScheme scheme, double power) {
  const double amp = std::sqrt(power);
  switch (scheme) {
    case TwrcScheme::combined:
      return {Dimension::power_sphere(4, amp), Dimension::power_sphere(4, amp), Dimension::power_sphere(5, amp),
              compression_dimension(), compression_dimension()};
    case TwrcScheme::rankov_df:
      return {Dimension::power_sphere(2, amp), Dimension::power_sphere(2, amp), Dimension::power_sphere(3, amp)};
    case TwrcScheme::xie_df:
      return {};
    case TwrcScheme::lnnc:
      return {Dimension::power_sphere(2, amp), compression_dimension(), compression_dimension()};
  }
  throw std::invalid_argument("unknown scheme");
}

TwrcParams scheme_params(TwrcScheme scheme, double power, std::span<const double> v) {
  const double amp = std::sqrt(power);
  TwrcParams p;
  const auto need = [&](std::size_t n) {
    if (v.size() != n) throw std::invalid_argument("wrong number of scheme values");
  };
  switch (scheme) {
    case TwrcScheme::combined:
      need(15);
      p = TwrcParams{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10], v[11], v[12], v[13], v[14]};
      break;
    case TwrcScheme::rankov_df:
      need(7);
      p.alpha1 = v[0], p.beta1 = v[1];
      p.alpha2 = v[2], p.beta2 = v[3];
      p.alpha31 = v[4], p.alpha32 = v[5], p.beta3 = v[6];
      break;
    case TwrcScheme::xie_df:
      need(0);
      p.gamma1 = amp, p.gamma2 = amp, p.beta3 = amp;
      break;
    case TwrcScheme::lnnc:
      need(4);
      p.delta1 = amp, p.delta2 = amp;
      p.gamma3 = v[0], p.delta3 = v[1];
      p.qhat = v[2], p.qtilde = v[3];
      break;
  }
  return p;
}

std::vector<double> combined_values(const TwrcParams& p) {
  return {p.alpha1, p.beta1, p.gamma1,  p.delta1, p.alpha2, p.beta2, p.gamma2, p.delta2,
          p.alpha31, p.alpha32, p.beta3, p.gamma3, p.delta3, p.qhat,   p.qtilde};
}

std::vector<double> default_region_weights() {
  std::vector<double> w;
  for (int i = 0; i <= 8; ++i) w.push_back(i / 8.0);
  return w;
}

TwrcSearchResult search_region(const TwoWayChannel& ch, TwrcScheme scheme, const SearchBudget& budget,
                               const std::vector<double>& weights, std::span<const TwrcParams> seeds) {
  ch.validate();
  budget.validate();
  if (weights.empty()) throw std::invalid_argument("at least one weight is required");
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("weights must lie in [0, 1]");
  }
  if (!seeds.empty() && scheme != TwrcScheme::combined) {
    throw std::invalid_argument("only the combined scheme takes seeds");
  }

  const Domain domain = scheme_domain(scheme, ch.power);
  std::vector<TwrcParams> points;
  if (domain.empty()) {
    points.push_back(scheme_params(scheme, ch.power, {}));
  } else {
    std::vector<std::vector<double>> seed_values;
    for (const auto& s : seeds) seed_values.push_back(combined_values(s));
    points.resize(weights.size());
    SearchBudget inner = budget;
    inner.jobs = 1;
    parallel_for(weights.size(), budget.jobs, [&](std::size_t k) {
      const double w = weights[k];
      const auto objective = [&](std::span<const double> v) {
        const TwrcParams p = scheme_params(scheme, ch.power, v);
        const auto pts = vertices_at(region_constraints(build_signaling(ch, p)));
        double best = -kInf;
        for (const auto& pt : pts) best = std::max(best, w * pt.r1 + (1.0 - w) * pt.r2);
        return best;
      };
      const SearchResult r = maximize(objective, domain, inner, seed_values);
      points[k] = scheme_params(scheme, ch.power, r.params);
    });
  }
  points.insert(points.end(), seeds.begin(), seeds.end());

  std::vector<RatePoint> all;
  for (const auto& p : points) {
    const auto pts = vertices_at(region_constraints(build_signaling(ch, p)));
    all.insert(all.end(), pts.begin(), pts.end());
  }
  return TwrcSearchResult{convex_hull(std::move(all)), std::move(points)};
}

RateRegion combined_region(const TwoWayChannel& ch, const SearchBudget& budget, const std::vector<double>& weights) {
  return compare_twrc_schemes(ch, budget, budget, weights).combined.region;
}

RateRegion rankov_df_region(const TwoWayChannel& ch, const SearchBudget& budget, const std::vector<double>& weights) {
  return search_region(ch, TwrcScheme::rankov_df, budget, weights).region;
}

RateRegion xie_df_region(const TwoWayChannel& ch, const SearchBudget& budget, const std::vector<double>& weights) {
  return search_region(ch, TwrcScheme::xie_df, budget, weights).region;
}

RateRegion lnnc_region(const TwoWayChannel& ch, const SearchBudget& budget, const std::vector<double>& weights) {
  return search_region(ch, TwrcScheme::lnnc, budget, weights).region;
}

TwrcComparison compare_twrc_schemes(const TwoWayChannel& ch, const SearchBudget& special_budget,
                                    const SearchBudget& combined_budget, const std::vector<double>& weights) {
  TwrcComparison out;
  out.rankov_df = search_region(ch, TwrcScheme::rankov_df, special_budget, weights);
  out.xie_df = search_region(ch, TwrcScheme::xie_df, special_budget, weights);
  out.lnnc = search_region(ch, TwrcScheme::lnnc, special_budget, weights);
  std::vector<TwrcParams> seeds;
  for (const auto* r : {&out.rankov_df, &out.xie_df, &out.lnnc}) {
    seeds.insert(seeds.end(), r->operating_points.begin(), r->operating_points.end());
  }
  out.combined = search_region(ch, TwrcScheme::combined, combined_budget, weights, seeds);
  return out;
}

RatePolytope twrc_cutset_bound(const TwoWayChannel& ch) {
  ch.validate();
  const double p = ch.power;
  const auto bound = [p](double to_relay, double direct, double from_relay) {
    const double broadcast = gaussian_capacity((to_relay * to_relay + direct * direct) * p);
    const double coherent = std::abs(direct) + std::abs(from_relay);
    return std::min(broadcast, gaussian_capacity(coherent * coherent * p));
  };
  return RatePolytope{{
      {1, 0, bound(ch.gr1, ch.g21, ch.g2r)},
      {0, 1, bound(ch.gr2, ch.g12, ch.g1r)},
  }};
}

}  // namespace dfnnc
