#include "dfnnc/search.hpp"

#include "dfnnc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dfnnc {

void SearchBudget::validate() const {
  if (coarse_steps < 2) throw std::invalid_argument("coarse_steps must be >= 2");
  if (refine_rounds < 0) throw std::invalid_argument("refine_rounds must be >= 0");
  if (!(refine_shrink > 0.0 && refine_shrink < 1.0)) throw std::invalid_argument("refine_shrink must lie in (0, 1)");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (refine_starts < 1) throw std::invalid_argument("refine_starts must be >= 1");
}

SearchBudget default_search_budget() { return SearchBudget{}; }

SearchBudget default_twrc_budget() {
  SearchBudget b;
  b.coarse_steps = 5;
  b.refine_rounds = 6;
  return b;
}

Dimension::Dimension(Kind kind, double lo, double hi, std::size_t size, double radius, bool infinite_top)
    : kind_(kind), lo_(lo), hi_(hi), size_(size), radius_(radius), infinite_top_(infinite_top) {}

Dimension Dimension::interval(double lo, double hi) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("bad interval");
  return Dimension(Kind::interval, lo, hi, 1, 0.0, false);
}

Dimension Dimension::log_interval(double lo, double hi, bool infinite_top) {
  if (!(lo > 0.0 && lo <= hi) || !std::isfinite(hi)) throw std::invalid_argument("bad log interval");
  return Dimension(Kind::log_interval, std::log10(lo), std::log10(hi), 1, 0.0, infinite_top);
}

Dimension Dimension::power_sphere(std::size_t size, double radius) {
  if (size == 0) throw std::invalid_argument("power sphere needs at least one coefficient");
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw std::invalid_argument("bad sphere radius");
  return Dimension(Kind::power_sphere, 0.0, std::numbers::pi / 2.0, size, radius, false);
}

std::size_t Dimension::coordinate_count() const noexcept {
  return kind_ == Kind::power_sphere ? size_ - 1 : 1;
}

std::size_t Dimension::value_count() const noexcept { return kind_ == Kind::power_sphere ? size_ : 1; }

void Dimension::decode(std::span<const double> coords, std::span<double> values) const {
  switch (kind_) {
    case Kind::interval:
      values[0] = coords[0];
      return;
    case Kind::log_interval:
      values[0] = (infinite_top_ && coords[0] >= hi_) ? std::numeric_limits<double>::infinity()
                                                       : std::pow(10.0, coords[0]);
      return;
    case Kind::power_sphere: {
      double tail = radius_;
      for (std::size_t j = 0; j + 1 < size_; ++j) {
        values[j] = tail * std::cos(coords[j]);
        tail *= std::sin(coords[j]);
      }
      values[size_ - 1] = tail;
      return;
    }
  }
}

void Dimension::encode(std::span<const double> values, std::span<double> coords) const {
  switch (kind_) {
    case Kind::interval:
      coords[0] = std::clamp(values[0], lo_, hi_);
      return;
    case Kind::log_interval:
      coords[0] = std::isinf(values[0]) ? hi_ : std::clamp(std::log10(values[0]), lo_, hi_);
      return;
    case Kind::power_sphere: {
      for (std::size_t j = 0; j + 1 < size_; ++j) {
        double rest = 0.0;
        for (std::size_t k = j + 1; k < size_; ++k) rest += values[k] * values[k];
        coords[j] = std::atan2(std::sqrt(rest), std::max(values[j], 0.0));
      }
      return;
    }
  }
}

std::size_t coordinate_count(const Domain& domain) {
  std::size_t n = 0;
  for (const auto& d : domain) n += d.coordinate_count();
  return n;
}

std::size_t value_count(const Domain& domain) {
  std::size_t n = 0;
  for (const auto& d : domain) n += d.value_count();
  return n;
}

std::vector<double> decode(const Domain& domain, std::span<const double> coords) {
  std::vector<double> values(value_count(domain));
  std::size_t c = 0;
  std::size_t v = 0;
  for (const auto& d : domain) {
    d.decode(coords.subspan(c, d.coordinate_count()), std::span<double>(values).subspan(v, d.value_count()));
    c += d.coordinate_count();
    v += d.value_count();
  }
  return values;
}

std::vector<double> encode(const Domain& domain, std::span<const double> values) {
  if (values.size() != value_count(domain)) throw std::invalid_argument("seed has the wrong length");
  std::vector<double> coords(coordinate_count(domain));
  std::size_t c = 0;
  std::size_t v = 0;
  for (const auto& d : domain) {
    d.encode(values.subspan(v, d.value_count()), std::span<double>(coords).subspan(c, d.coordinate_count()));
    c += d.coordinate_count();
    v += d.value_count();
  }
  return coords;
}

namespace {

struct Bounds {
  std::vector<double> lo;
  std::vector<double> hi;
  // First coordinate index of each Dimension.
  std::vector<std::size_t> block_start;
};

Bounds bounds_of(const Domain& domain) {
  Bounds b;
  for (const auto& d : domain) {
    b.block_start.push_back(b.lo.size());
    for (std::size_t i = 0; i < d.coordinate_count(); ++i) {
      b.lo.push_back(d.coordinate_lo());
      b.hi.push_back(d.coordinate_hi());
    }
  }
  return b;
}

double grid_point(double lo, double hi, int steps, int j) {
  if (j == steps - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(steps - 1);
}

class Search {
 public:
  Search(const Objective& f, const Domain& domain, const SearchBudget& budget)
      : f_(f), domain_(domain), budget_(budget), bounds_(bounds_of(domain)) {}

  using Point = std::pair<double, std::vector<double>>;

  // Evaluates a batch, then folds it into the incumbent in batch order so
  // the outcome does not depend on thread scheduling. Returns the batch's
  // best valid point (value NaN when there is none).
  Point consider(const std::vector<std::vector<double>>& batch) {
    std::vector<double> values(batch.size());
    parallel_for(batch.size(), budget_.jobs, [&](std::size_t i) { values[i] = evaluate(batch[i]); });
    evaluations_ += batch.size();
    Point best{std::numeric_limits<double>::quiet_NaN(), {}};
    for (std::size_t i = 0; i < batch.size(); ++i) {
      offer(batch[i], values[i], true);
      if (std::isnan(values[i])) continue;
      scanned_.push_back({values[i], batch[i]});
      if (std::isnan(best.first) || values[i] > best.first || (values[i] == best.first && batch[i] < best.second)) {
        best = {values[i], batch[i]};
      }
    }
    return best;
  }

  bool try_point(const std::vector<double>& x) {
    ++evaluations_;
    return offer(x, evaluate(x), false);
  }

  void coarse_scan(std::span<const std::vector<double>> seeds) {
    const std::size_t n = bounds_.lo.size();
    const int steps = budget_.coarse_steps;
    std::vector<std::vector<double>> seed_coords;
    for (const auto& s : seeds) seed_coords.push_back(encode(domain_, s));

    double total = 1.0;
    for (std::size_t i = 0; i < n; ++i) total *= steps;
    if (total <= static_cast<double>(kMaxTensorPoints)) {
      std::vector<std::vector<double>> batch = tensor_grid(0, n, {});
      batch.insert(batch.end(), seed_coords.begin(), seed_coords.end());
      consider(batch);
      if (has_incumbent_) heads_.push_back({best_v_, best_x_});
    } else {
      // One chain from the middle of the domain and one from the best seed,
      // so that good seeds do not pull the whole scan into their basin.
      std::vector<double> mid(n);
      for (std::size_t i = 0; i < n; ++i) mid[i] = grid_point(bounds_.lo[i], bounds_.hi[i], steps, steps / 2);
      std::vector<Point> chains{consider({mid})};
      chains.front().second = mid;
      if (!seed_coords.empty()) {
        const Point best_seed = consider(seed_coords);
        if (!std::isnan(best_seed.first)) chains.push_back(best_seed);
      }
      for (Point& chain : chains) {
        for (int pass = 0; pass < 2; ++pass) {
          for (std::size_t b = 0; b < domain_.size(); ++b) {
            const std::size_t first = bounds_.block_start[b];
            const Point p = consider(tensor_grid(first, first + domain_[b].coordinate_count(), chain.second));
            if (!std::isnan(p.first) && (std::isnan(chain.first) || p.first > chain.first)) chain = p;
          }
        }
        if (!std::isnan(chain.first)) heads_.push_back(chain);
      }
    }
    if (!has_incumbent_) throw std::runtime_error("objective is non-finite at every grid point");
  }

  // The incumbent and the chain heads, then the best remaining scanned
  // points, no two within one and a half grid cells in every coordinate.
  std::vector<Point> starts() const {
    std::vector<Point> ranked = scanned_;
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      return a.first > b.first || (a.first == b.first && a.second < b.second);
    });
    std::vector<Point> out{{best_v_, best_x_}};
    const auto close = [&](const std::vector<double>& x, const std::vector<double>& y) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double cell = (bounds_.hi[i] - bounds_.lo[i]) / static_cast<double>(budget_.coarse_steps - 1);
        if (std::abs(x[i] - y[i]) > 1.5 * cell) return false;
      }
      return true;
    };
    const auto add = [&](const Point& p) {
      if (std::none_of(out.begin(), out.end(), [&](const Point& q) { return close(p.second, q.second); })) {
        out.push_back(p);
      }
    };
    for (const auto& h : heads_) add(h);
    for (const auto& p : ranked) {
      if (out.size() >= static_cast<std::size_t>(budget_.refine_starts)) break;
      add(p);
    }
    return out;
  }

  // Refines from each start in turn; the first start reaching the best
  // value wins.
  void refine_all() {
    const auto from = starts();
    std::vector<double> winner_x = best_x_;
    double winner_v = best_v_;
    std::vector<double> winner_rounds;
    for (const auto& [v, x] : from) {
      best_x_ = x;
      best_v_ = v;
      round_best_.clear();
      refine();
      if (winner_rounds.empty() || best_v_ > winner_v) {
        winner_x = best_x_;
        winner_v = best_v_;
        winner_rounds = round_best_;
      }
    }
    best_x_ = winner_x;
    best_v_ = winner_v;
    round_best_ = winner_rounds;
  }

  void refine() {
    const std::size_t n = bounds_.lo.size();
    std::vector<double> step(n);
    for (std::size_t i = 0; i < n; ++i) {
      step[i] = (bounds_.hi[i] - bounds_.lo[i]) / static_cast<double>(budget_.coarse_steps - 1);
    }
    round_best_.push_back(best_v_);
    const int max_rounds = 2 * budget_.refine_rounds;
    for (int round = 0; round < max_rounds; ++round) {
      if (round >= budget_.refine_rounds) {
        const double last_gain = round_best_.back() - round_best_[round_best_.size() - 2];
        if (last_gain <= budget_.tol) break;
      }
      for (double& s : step) s *= budget_.refine_shrink;
      pattern_search(step);
      round_best_.push_back(best_v_);
    }
  }

  SearchResult result() const {
    SearchResult r;
    r.coordinates = best_x_;
    r.params = decode(domain_, best_x_);
    r.value = best_v_;
    r.evaluations = evaluations_;
    r.round_best = round_best_;
    return r;
  }

 private:
  double evaluate(const std::vector<double>& x) const {
    const std::vector<double> values = decode(domain_, x);
    const double v = f_(values);
    return std::isfinite(v) ? v : std::numeric_limits<double>::quiet_NaN();
  }

  bool offer(const std::vector<double>& x, double v, bool lexicographic_ties) {
    if (std::isnan(v)) return false;
    if (!has_incumbent_ || v > best_v_ || (lexicographic_ties && v == best_v_ && x < best_x_)) {
      best_x_ = x;
      best_v_ = v;
      has_incumbent_ = true;
      return true;
    }
    return false;
  }

  // Grid over coordinates [first, last), other coordinates copied from `base`.
  std::vector<std::vector<double>> tensor_grid(std::size_t first, std::size_t last, std::vector<double> base) const {
    const std::size_t n = bounds_.lo.size();
    if (base.empty()) base.assign(n, 0.0);
    const int steps = budget_.coarse_steps;
    std::vector<std::vector<double>> out;
    std::vector<int> idx(last - first, 0);
    for (;;) {
      std::vector<double> x = base;
      for (std::size_t k = first; k < last; ++k) x[k] = grid_point(bounds_.lo[k], bounds_.hi[k], steps, idx[k - first]);
      out.push_back(std::move(x));
      // Odometer with the last coordinate fastest: lexicographic order.
      std::size_t pos = idx.size();
      while (pos > 0) {
        --pos;
        if (++idx[pos] < steps) break;
        idx[pos] = 0;
        if (pos == 0) return out;
      }
      if (idx.empty()) return out;
    }
  }

  std::vector<double> clamp(std::vector<double> x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], bounds_.lo[i], bounds_.hi[i]);
    return x;
  }

  // Hooke-Jeeves: exploratory coordinate moves, then a pattern move along
  // the last successful displacement.
  void pattern_search(const std::vector<double>& step) {
    const std::size_t n = step.size();
    constexpr int kMaxIterations = 200;
    for (int it = 0; it < kMaxIterations; ++it) {
      const std::vector<double> base = best_x_;
      for (std::size_t i = 0; i < n; ++i) {
        if (step[i] <= 0.0) continue;
        for (double dir : {+1.0, -1.0}) {
          std::vector<double> x = best_x_;
          x[i] += dir * step[i];
          x = clamp(x);
          if (x[i] == best_x_[i]) continue;
          if (try_point(x)) break;
        }
      }
      if (best_x_ == base) return;
      // Keep stepping along the improving direction while it pays.
      for (int k = 0; k < kMaxIterations; ++k) {
        std::vector<double> x = best_x_;
        for (std::size_t i = 0; i < n; ++i) x[i] += best_x_[i] - base[i];
        x = clamp(x);
        if (x == best_x_ || !try_point(x)) break;
      }
    }
  }

  const Objective& f_;
  const Domain& domain_;
  SearchBudget budget_;
  Bounds bounds_;
  std::vector<double> best_x_;
  double best_v_ = -std::numeric_limits<double>::infinity();
  bool has_incumbent_ = false;
  std::size_t evaluations_ = 0;
  std::vector<double> round_best_;
  std::vector<Point> scanned_;
  std::vector<Point> heads_;
};

}  // namespace

SearchResult maximize(const Objective& objective, const Domain& domain, const SearchBudget& budget,
                      std::span<const std::vector<double>> seeds) {
  budget.validate();
  if (domain.empty()) throw std::invalid_argument("empty search domain");
  Search s(objective, domain, budget);
  s.coarse_scan(seeds);
  s.refine_all();
  return s.result();
}

ScalarOptimum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
    if (x1 >= x2) break;
  }
  ScalarOptimum best{x1, f1};
  if (f2 > best.value) best = {x2, f2};
  for (double end : {a, b}) {
    const double v = f(end);
    if (v > best.value) best = {end, v};
  }
  return best;
}

ScalarOptimum grid_golden_maximize(const std::function<double(double)>& f, double lo, double hi, int steps,
                                   double tol) {
  if (steps < 2) throw std::invalid_argument("grid needs at least two points");
  int best_j = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < steps; ++j) {
    const double v = f(grid_point(lo, hi, steps, j));
    if (v > best_v) {
      best_v = v;
      best_j = j;
    }
  }
  const double a = grid_point(lo, hi, steps, std::max(best_j - 1, 0));
  const double b = grid_point(lo, hi, steps, std::min(best_j + 1, steps - 1));
  ScalarOptimum refined = golden_section_maximize(f, a, b, tol);
  if (refined.value >= best_v) return refined;
  return {grid_point(lo, hi, steps, best_j), best_v};
}

}  // namespace dfnnc
