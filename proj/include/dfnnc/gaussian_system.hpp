#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dfnnc {

/// Returned by conditional_mutual_info when the two sets are
/// deterministically related given the conditioning set.
inline constexpr double kInfiniteInformation = std::numeric_limits<double>::infinity();

/// Eigenvalues of a covariance below this fraction of max(largest, 1) are zero.
inline constexpr double kRankTolerance = 1e-10;

/// Differential entropy of a Gaussian vector, measured on its support.
struct Entropy {
  double nats = 0.0;
  std::size_t rank = 0;
  /// The variable set contains a deterministic linear relation.
  bool degenerate = false;
};

using VarId = std::size_t;
using VarSet = std::vector<VarId>;

/// Jointly Gaussian variables, each a fixed linear combination of
/// independent unit-variance Gaussian sources.
///
/// Variables are registered once and never modified, so a fully built
/// system can be shared between threads.
class GaussianSystem {
 public:
  explicit GaussianSystem(std::size_t source_count);

  /// Registers `name` = sum_i coefficients[i] * source_i.
  /// Throws std::invalid_argument on a duplicate name or a length mismatch.
  VarId add_variable(std::string name, std::span<const double> coefficients);
  VarId add_variable(std::string name, std::initializer_list<double> coefficients);

  std::size_t source_count() const noexcept { return sources_; }
  std::size_t variable_count() const noexcept { return names_.size(); }

  bool contains(std::string_view name) const;
  std::optional<VarId> find(std::string_view name) const;
  /// Throws std::invalid_argument for an unknown name.
  VarId id(std::string_view name) const;
  VarSet vars(std::initializer_list<std::string_view> names) const;
  VarSet vars(std::span<const std::string> names) const;

  const std::string& name(VarId v) const { return names_.at(v); }
  const Eigen::RowVectorXd& coefficients(VarId v) const { return raw_.at(v); }
  double covariance(VarId a, VarId b) const;

  /// 0.5 * ln((2 pi e)^r * pdet(Sigma)) with r the numerical rank.
  Entropy entropy(const VarSet& vars) const;

  /// I(A;B|C) in bits, clamped at 0. A variable may appear in more than one
  /// set; the result follows from the joint law either way (I(X;Y|X) = 0,
  /// I(X;X) = infinity).
  double conditional_mutual_info(const VarSet& a, const VarSet& b, const VarSet& c = {}) const;

  /// The same quantity in nats before clamping; exposed for tests.
  double conditional_mutual_info_nats_unclamped(const VarSet& a, const VarSet& b,
                                                const VarSet& c = {}) const;

 private:
  void check(const VarSet& vars) const;
  Eigen::MatrixXd unit_rows(const VarSet& vars) const;

  std::size_t sources_;
  std::vector<std::string> names_;
  std::map<std::string, VarId, std::less<>> index_;
  std::vector<Eigen::RowVectorXd> raw_;
  // Rows scaled to unit norm (zero rows stay zero). Mutual information is
  // invariant to per-variable scaling, and unit rows keep the rank
  // tolerance meaningful when compression noises span many decades.
  std::vector<Eigen::RowVectorXd> unit_;
};

/// Bits per nat.
inline constexpr double kBitsPerNat = 1.4426950408889634;

}  // namespace dfnnc
