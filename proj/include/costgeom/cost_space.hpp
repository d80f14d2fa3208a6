#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "costgeom/error.hpp"
#include "costgeom/numeric.hpp"

namespace costgeom {

using Index = std::size_t;

/// A labeled finite set with a dense n x n matrix of extended nonnegative
/// costs.
///
/// Construction only checks the shape: square matrix, unique labels and no
/// negative entries. Whether the matrix is a cost function (zero diagonal,
/// positive off-diagonal, triangle inequality) is a separate question answered
/// by validate_cost(), so the same type also carries raw weight matrices and
/// asymptotic costs with a nonzero diagonal.
///
/// The tolerance is used by float-mode comparisons only.
template <class T>
class CostSpace {
 public:
  using Scalar = T;
  using Cost = Extended<T>;

  CostSpace() = default;

  CostSpace(std::vector<std::string> labels, std::vector<std::vector<Cost>> rows,
            double tolerance = kDefaultTolerance)
      : labels_(std::move(labels)), tolerance_(tolerance) {
    const Index n = labels_.size();
    if (rows.size() != n) {
      throw InputError("cost matrix has " + std::to_string(rows.size()) + " rows but " +
                       std::to_string(n) + " labels");
    }
    if (!(tolerance_ > 0.0)) throw InputError("tolerance must be positive");
    costs_.reserve(n * n);
    for (Index i = 0; i < n; ++i) {
      if (rows[i].size() != n) {
        throw InputError("cost matrix is not square (row " + std::to_string(i) + ")");
      }
      for (Index j = 0; j < n; ++j) {
        const Cost& c = rows[i][j];
        if (c.is_finite() && c.value() < T(0)) {
          throw InputError("negative cost at (" + labels_[i] + ", " + labels_[j] + ")");
        }
        costs_.push_back(c);
      }
    }
    for (Index i = 0; i < n; ++i) {
      if (!index_.emplace(labels_[i], i).second) {
        throw InputError("duplicate label '" + labels_[i] + "'");
      }
    }
  }

  /// Labels "0", "1", ... for quick construction in code.
  static std::vector<std::string> default_labels(Index n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (Index i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
  }

  Index size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Index i) const { return labels_.at(i); }
  double tolerance() const { return tolerance_; }

  std::optional<Index> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Index index_of(const std::string& label) const {
    if (auto i = find(label)) return *i;
    throw ParameterError("unknown label '" + label + "'");
  }

  const Cost& operator()(Index i, Index j) const { return costs_[i * size() + j]; }

  std::vector<std::vector<Cost>> rows() const {
    std::vector<std::vector<Cost>> out(size(), std::vector<Cost>(size()));
    for (Index i = 0; i < size(); ++i)
      for (Index j = 0; j < size(); ++j) out[i][j] = (*this)(i, j);
    return out;
  }

  /// Same labels and tolerance, different matrix.
  CostSpace with_costs(std::vector<std::vector<Cost>> rows) const {
    return CostSpace(labels_, std::move(rows), tolerance_);
  }

  friend bool operator==(const CostSpace& a, const CostSpace& b) {
    return a.labels_ == b.labels_ && a.costs_ == b.costs_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Cost> costs_;
  std::unordered_map<std::string, Index> index_;
  double tolerance_ = kDefaultTolerance;
};

using RationalSpace = CostSpace<Rational>;
using FloatSpace = CostSpace<double>;

/// Converts between the exact and float backends.
template <class To, class From>
CostSpace<To> convert_space(const CostSpace<From>& space) {
  std::vector<std::vector<Extended<To>>> rows(space.size(),
                                              std::vector<Extended<To>>(space.size()));
  for (Index i = 0; i < space.size(); ++i) {
    for (Index j = 0; j < space.size(); ++j) {
      const auto& c = space(i, j);
      if (c.is_inf()) {
        rows[i][j] = Extended<To>::infinity();
      } else if constexpr (std::is_same_v<To, From>) {
        rows[i][j] = c;
      } else if constexpr (kIsExact<To>) {
        rows[i][j] = ScalarTraits<To>::from_double(to_double(c.value()));
      } else {
        rows[i][j] = to_double(c.value());
      }
    }
  }
  return CostSpace<To>(space.labels(), std::move(rows), space.tolerance());
}

}  // namespace costgeom
