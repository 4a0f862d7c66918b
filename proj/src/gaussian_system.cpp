#include "dfnnc/gaussian_system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dfnnc {
namespace {

struct LogPdet {
  double value = 0.0;
  Eigen::Index rank = 0;
};

// Orthonormal basis (columns) of the row space of `rows`.
Eigen::MatrixXd row_space_basis(const Eigen::MatrixXd& rows) {
  const Eigen::Index n = rows.cols();
  if (rows.rows() == 0) return Eigen::MatrixXd(n, 0);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(rows.transpose());
  const auto& r = qr.matrixR();
  const Eigen::Index k = std::min(rows.rows(), n);
  const double lead = k > 0 ? std::abs(r(0, 0)) : 0.0;
  // Pivots approximate singular values; square them against the
  // eigenvalue tolerance.
  const double cutoff = std::sqrt(kRankTolerance * std::max(lead * lead, 1.0));
  Eigen::Index rank = 0;
  while (rank < k && std::abs(r(rank, rank)) > cutoff) ++rank;
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, rank);
  return q;
}

void project_out(Eigen::MatrixXd& rows, const Eigen::MatrixXd& basis) {
  if (rows.rows() == 0 || basis.cols() == 0) return;
  rows -= (rows * basis) * basis.transpose();
}

LogPdet log_pseudo_determinant(const Eigen::MatrixXd& gram, double cutoff) {
  LogPdet out;
  if (gram.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  for (double lambda : es.eigenvalues()) {
    if (lambda > cutoff) {
      out.value += std::log(lambda);
      ++out.rank;
    }
  }
  return out;
}

double max_eigenvalue(const Eigen::MatrixXd& gram) {
  if (gram.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

VarSet sorted(VarSet v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

GaussianSystem::GaussianSystem(std::size_t source_count) : sources_(source_count) {}

VarId GaussianSystem::add_variable(std::string name, std::span<const double> coefficients) {
  if (coefficients.size() != sources_) {
    throw std::invalid_argument("variable '" + name + "' has " +
                                std::to_string(coefficients.size()) + " coefficients, expected " +
                                std::to_string(sources_));
  }
  if (index_.contains(name)) {
    throw std::invalid_argument("duplicate variable '" + name + "'");
  }
  Eigen::RowVectorXd row(static_cast<Eigen::Index>(sources_));
  for (std::size_t i = 0; i < sources_; ++i) {
    if (!std::isfinite(coefficients[i])) {
      throw std::invalid_argument("variable '" + name + "' has a non-finite coefficient");
    }
    row(static_cast<Eigen::Index>(i)) = coefficients[i];
  }
  const double norm = row.norm();
  const VarId id = names_.size();
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  unit_.push_back(norm > 0.0 ? Eigen::RowVectorXd(row / norm) : row);
  raw_.push_back(std::move(row));
  return id;
}

VarId GaussianSystem::add_variable(std::string name, std::initializer_list<double> coefficients) {
  return add_variable(std::move(name), std::span<const double>(coefficients.begin(), coefficients.size()));
}

bool GaussianSystem::contains(std::string_view name) const { return index_.find(name) != index_.end(); }

std::optional<VarId> GaussianSystem::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VarId GaussianSystem::id(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
  return it->second;
}

VarSet GaussianSystem::vars(std::initializer_list<std::string_view> names) const {
  VarSet out;
  out.reserve(names.size());
  for (auto n : names) out.push_back(id(n));
  return out;
}

VarSet GaussianSystem::vars(std::span<const std::string> names) const {
  VarSet out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(id(n));
  return out;
}

double GaussianSystem::covariance(VarId a, VarId b) const { return raw_.at(a).dot(raw_.at(b)); }

void GaussianSystem::check(const VarSet& vars) const {
  for (VarId v : vars) {
    if (v >= names_.size()) throw std::invalid_argument("unknown variable id " + std::to_string(v));
  }
}

Eigen::MatrixXd GaussianSystem::unit_rows(const VarSet& vars) const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(vars.size()), static_cast<Eigen::Index>(sources_));
  for (std::size_t i = 0; i < vars.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = unit_[vars[i]];
  return m;
}

Entropy GaussianSystem::entropy(const VarSet& vars) const {
  check(vars);
  Eigen::MatrixXd g(static_cast<Eigen::Index>(vars.size()), static_cast<Eigen::Index>(sources_));
  for (std::size_t i = 0; i < vars.size(); ++i) g.row(static_cast<Eigen::Index>(i)) = raw_[vars[i]];
  const Eigen::MatrixXd sigma = g * g.transpose();
  const double cutoff = kRankTolerance * std::max(max_eigenvalue(sigma), 1.0);
  const LogPdet pdet = log_pseudo_determinant(sigma, cutoff);

  Entropy h;
  h.rank = static_cast<std::size_t>(pdet.rank);
  h.degenerate = h.rank < vars.size();
  const double two_pi_e = 2.0 * std::numbers::pi * std::numbers::e;
  h.nats = 0.5 * (static_cast<double>(h.rank) * std::log(two_pi_e) + pdet.value);
  return h;
}

double GaussianSystem::conditional_mutual_info_nats_unclamped(const VarSet& a_in, const VarSet& b_in,
                                                              const VarSet& c) const {
  check(a_in);
  check(b_in);
  check(c);
  // Canonical argument order makes I(A;B|C) and I(B;A|C) bit-identical.
  VarSet a = sorted(a_in);
  VarSet b = sorted(b_in);
  if (b < a) std::swap(a, b);
  if (a.empty() || b.empty()) return 0.0;

  // Condition on C by removing span(C) from every row: the sources are
  // i.i.d. standard normal, so this is the conditional law.
  const Eigen::MatrixXd c_basis = row_space_basis(unit_rows(c));
  Eigen::MatrixXd a_rows = unit_rows(a);
  Eigen::MatrixXd b_rows = unit_rows(b);
  project_out(a_rows, c_basis);
  project_out(b_rows, c_basis);

  // I(A;B|C) = h(B|C) - h(B|A,C); the 2 pi e factors cancel when ranks agree.
  const Eigen::MatrixXd b_given_c = b_rows * b_rows.transpose();
  const double cutoff = kRankTolerance * std::max(max_eigenvalue(b_given_c), 1.0);
  const LogPdet before = log_pseudo_determinant(b_given_c, cutoff);
  if (before.rank == 0) return 0.0;

  project_out(b_rows, row_space_basis(a_rows));
  const LogPdet after = log_pseudo_determinant(b_rows * b_rows.transpose(), cutoff);
  if (after.rank < before.rank) return kInfiniteInformation;
  return 0.5 * (before.value - after.value);
}

double GaussianSystem::conditional_mutual_info(const VarSet& a, const VarSet& b, const VarSet& c) const {
  const double nats = conditional_mutual_info_nats_unclamped(a, b, c);
  if (nats == kInfiniteInformation) return kInfiniteInformation;
  return std::max(nats, 0.0) * kBitsPerNat;
}

}  // namespace dfnnc
