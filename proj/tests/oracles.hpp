#pragma once

// Reference computations used only by the tests. None of them goes through
// the library's information or geometry code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

inline double capacity(double snr) { return 0.5 * std::log2(1.0 + snr); }

inline double det2(double a, double b, double c, double d) { return a * d - b * c; }

inline double det3(const double m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Determinant of a small symmetric positive definite matrix by plain
// Gaussian elimination.
inline double det(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  double d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
    }
    if (m[p][k] == 0.0) return 0.0;
    if (p != k) {
      std::swap(m[p], m[k]);
      d = -d;
    }
    d *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return d;
}

inline std::vector<std::vector<double>> sub(const std::vector<std::vector<double>>& cov,
                                            const std::vector<std::size_t>& idx) {
  std::vector<std::vector<double>> out(idx.size(), std::vector<double>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) out[i][j] = cov[idx[i]][idx[j]];
  }
  return out;
}

// I(A;B|C) in bits from a full-rank covariance, by determinants.
inline double mi_from_cov(const std::vector<std::vector<double>>& cov, std::vector<std::size_t> a,
                          std::vector<std::size_t> b, std::vector<std::size_t> c) {
  const auto ld = [&](const std::vector<std::size_t>& idx) { return idx.empty() ? 0.0 : std::log(det(sub(cov, idx))); };
  std::vector<std::size_t> ac = a, bc = b, abc = a;
  ac.insert(ac.end(), c.begin(), c.end());
  bc.insert(bc.end(), c.begin(), c.end());
  abc.insert(abc.end(), b.begin(), b.end());
  abc.insert(abc.end(), c.begin(), c.end());
  return 0.5 * (ld(ac) + ld(bc) - ld(abc) - ld(c)) / std::log(2.0);
}

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
};

// Plug-in estimate of I(A;B|C) from draws of variables that are linear maps
// (rows of `coef`) of independent standard normal sources. The standard
// error comes from `batches` independent batch estimates.
inline Estimate monte_carlo_mi(const std::vector<std::vector<double>>& coef, const std::vector<std::size_t>& a,
                               const std::vector<std::size_t>& b, const std::vector<std::size_t>& c,
                               std::size_t samples, std::uint64_t seed, std::size_t batches = 20) {
  const std::size_t k = coef.size();
  const std::size_t s = coef.front().size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const std::size_t per = samples / batches;
  std::vector<double> estimates;
  std::vector<double> src(s);
  std::vector<double> x(k);
  for (std::size_t bt = 0; bt < batches; ++bt) {
    std::vector<double> mean(k, 0.0);
    std::vector<std::vector<double>> m2(k, std::vector<double>(k, 0.0));
    for (std::size_t n = 0; n < per; ++n) {
      for (auto& v : src) v = normal(rng);
      for (std::size_t i = 0; i < k; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < s; ++j) acc += coef[i][j] * src[j];
        x[i] = acc;
      }
      for (std::size_t i = 0; i < k; ++i) {
        mean[i] += x[i];
        for (std::size_t j = 0; j < k; ++j) m2[i][j] += x[i] * x[j];
      }
    }
    std::vector<std::vector<double>> cov(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        cov[i][j] = (m2[i][j] - mean[i] * mean[j] / per) / (per - 1);
      }
    }
    estimates.push_back(mi_from_cov(cov, a, b, c));
  }
  double mu = 0.0;
  for (double e : estimates) mu += e;
  mu /= batches;
  double var = 0.0;
  for (double e : estimates) var += (e - mu) * (e - mu);
  var /= (batches - 1);
  return {mu, std::sqrt(var / batches)};
}

// Decode-forward: the optimum sits where the relay and destination terms
// cross, g1^2 (1 - r^2) = g^2 + g2^2 + 2 r g g2, or at r = 0 when the
// relay term is already the smaller one there.
inline double df_optimum(double g, double g1, double g2, double p) {
  const double relay0 = g1 * g1;
  const double dest0 = g * g + g2 * g2;
  if (dest0 >= relay0) return capacity(relay0 * p);
  // g1^2 r^2 + 2 g g2 r + (g^2 + g2^2 - g1^2) = 0
  const double qa = g1 * g1;
  const double qb = 2.0 * g * g2;
  const double qc = g * g + g2 * g2 - g1 * g1;
  const double r = (-qb + std::sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa);
  return capacity(g1 * g1 * (1.0 - r * r) * p);
}

// Compress-forward with the compression noise optimized out.
inline double nnc_optimum(double g, double g1, double g2, double p) {
  const double a = g * g * p;
  const double b = g1 * g1 * p;
  const double c = g2 * g2 * p;
  return capacity(a + b * c / (a + b + c + 1.0));
}

// Cut-set: max over r of min{(g^2 + g1^2)(1 - r^2), g^2 + g2^2 + 2 r g g2}.
inline double cutset(double g, double g1, double g2, double p) {
  const double s = g * g + g1 * g1;
  const double t = g * g + g2 * g2;
  if (t >= s) return capacity(s * p);
  const double qa = s;
  const double qb = 2.0 * std::abs(g * g2);
  const double qc = t - s;
  const double r = (-qb + std::sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa);
  return capacity(s * (1.0 - r * r) * p);
}

struct HalfPlane {
  int a;
  int b;
  double c;  // a x + b y <= c
};

// Area of {x, y >= 0, x, y <= cap, a x + b y <= c} by the midpoint rule on
// `columns` vertical strips; each strip's height is exact.
inline double scanned_area(const std::vector<HalfPlane>& hs, double cap, std::size_t columns) {
  double x_max = cap;
  for (const auto& h : hs) {
    if (h.b == 0 && h.a > 0 && std::isfinite(h.c)) x_max = std::min(x_max, h.c / h.a);
  }
  if (x_max <= 0.0) return 0.0;
  const double dx = x_max / static_cast<double>(columns);
  double area = 0.0;
  for (std::size_t i = 0; i < columns; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * dx;
    double top = cap;
    for (const auto& h : hs) {
      if (!std::isfinite(h.c)) continue;
      if (h.b > 0) top = std::min(top, (h.c - h.a * x) / h.b);
    }
    area += std::max(top, 0.0) * dx;
  }
  return area;
}

}  // namespace oracle
