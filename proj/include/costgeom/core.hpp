#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "costgeom/cost_space.hpp"

namespace costgeom {

/// A diagonal entry that is not zero (row == col) or an off-diagonal entry
/// that is not strictly positive (row != col).
template <class T>
struct IdentityViolation {
  Index row;
  Index col;
  Extended<T> value;
};

/// c(p,r) > c(p,q) + c(q,r); slack is the excess, INF when only the direct
/// leg is infinite.
template <class T>
struct TriangleViolation {
  Index p;
  Index q;
  Index r;
  Extended<T> slack;
};

template <class T>
struct ValidationReport {
  std::vector<IdentityViolation<T>> identity_violations;
  std::vector<TriangleViolation<T>> triangle_violations;
  Extended<T> max_identity_defect{};
  Extended<T> max_triangle_defect{};

  bool ok() const { return identity_violations.empty() && triangle_violations.empty(); }
};

/// Checks c(p,q) = 0 iff p = q and c(p,r) <= c(p,q) + c(q,r) for every
/// triple, listing every violation.
template <class T>
ValidationReport<T> validate_cost(const CostSpace<T>& space) {
  using Cost = Extended<T>;
  ValidationReport<T> report;
  const Index n = space.size();
  const double tau = space.tolerance();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Cost& c = space(i, j);
      if (i == j) {
        bool zero = c.is_finite() && !is_positive(c.value(), tau);
        if (!zero) report.identity_violations.push_back({i, j, c});
        report.max_identity_defect = max(report.max_identity_defect, c);
      } else if (c.is_finite() && !is_positive(c.value(), tau)) {
        report.identity_violations.push_back({i, j, c});
      }
    }
  }
  for (Index p = 0; p < n; ++p) {
    for (Index q = 0; q < n; ++q) {
      for (Index r = 0; r < n; ++r) {
        const Cost& direct = space(p, r);
        Cost detour = space(p, q) + space(q, r);
        if (detour.is_inf()) continue;
        if (direct.is_inf()) {
          report.triangle_violations.push_back({p, q, r, Cost::infinity()});
          report.max_triangle_defect = Cost::infinity();
          continue;
        }
        if (definitely_greater(direct.value(), detour.value(), tau, direct.value())) {
          Cost slack = direct - detour;
          report.triangle_violations.push_back({p, q, r, slack});
          report.max_triangle_defect = max(report.max_triangle_defect, slack);
        }
      }
    }
  }
  return report;
}

template <class T>
struct AsymptoticConstants {
  Extended<T> identity;  // max_p c(p,p)
  Extended<T> triangle;  // max positive slack over all-finite triples
};

/// Minimal constants for which the matrix is an O-cost function. Triples with
/// an infinite entry are skipped.
template <class T>
AsymptoticConstants<T> asymptotic_constants(const CostSpace<T>& space) {
  AsymptoticConstants<T> out{Extended<T>(0), Extended<T>(0)};
  const Index n = space.size();
  for (Index p = 0; p < n; ++p) out.identity = max(out.identity, space(p, p));
  for (Index p = 0; p < n; ++p) {
    for (Index q = 0; q < n; ++q) {
      const auto& direct = space(p, q);
      if (direct.is_inf()) continue;
      for (Index r = 0; r < n; ++r) {
        const auto& a = space(p, r);
        const auto& b = space(r, q);
        if (a.is_inf() || b.is_inf()) continue;
        T slack = direct.value() - a.value() - b.value();
        if (slack > T(0)) out.triangle = max(out.triangle, Extended<T>(slack));
      }
    }
  }
  return out;
}

template <class T>
struct BCostResult {
  bool holds = true;
  Extended<T> shift;  // B(f), the off-diagonal minimum
  std::optional<std::array<Index, 3>> witness;  // (p, q, r) with f^B(p,q) > f^B(p,r) + f^B(r,q)
};

/// Shifted triangle inequality f^B(p,q) <= f^B(p,r) + f^B(r,q) over pairwise
/// distinct triples, where f^B = f - min_{y != z} f(y,z).
template <class T>
BCostResult<T> is_b_cost(const CostSpace<T>& space) {
  const Index n = space.size();
  Extended<T> shift = Extended<T>::infinity();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j) shift = min(shift, space(i, j));
  if (shift.is_inf()) {
    throw DomainError("B-shift undefined: no finite off-diagonal entry");
  }
  BCostResult<T> result;
  result.shift = shift;
  const double tau = space.tolerance();
  for (Index p = 0; p < n; ++p) {
    for (Index q = 0; q < n; ++q) {
      if (q == p) continue;
      for (Index r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        Extended<T> lhs = space(p, q) - shift;
        Extended<T> rhs = (space(p, r) - shift) + (space(r, q) - shift);
        if (rhs.is_inf()) continue;
        bool violated = lhs.is_inf() ||
                        definitely_greater(lhs.value(), rhs.value(), tau, space(p, q).value());
        if (violated) {
          result.holds = false;
          result.witness = std::array<Index, 3>{p, q, r};
          return result;
        }
      }
    }
  }
  return result;
}

/// c(p,q) = w(p,q) + C for p != q. Always satisfies the triangle inequality
/// because any detour pays C twice.
template <class T>
CostSpace<T> lawvere_from_weights(const CostSpace<T>& weights, const T& bound) {
  const Index n = weights.size();
  auto rows = weights.rows();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const auto& w = rows[i][j];
      if (i == j) {
        if (w != Extended<T>(0)) throw InputError("weight diagonal must be zero");
        continue;
      }
      if (w.is_inf() || w.value() > bound) {
        throw ParameterError("weight at (" + weights.label(i) + ", " + weights.label(j) +
                             ") exceeds the bound " + format(bound));
      }
      rows[i][j] = Extended<T>(w.value() + bound);
    }
  }
  return weights.with_costs(std::move(rows));
}

/// d(x,y) = (c(x,y) + c(y,x)) / 2.
template <class T>
CostSpace<T> symmetrize(const CostSpace<T>& space) {
  const Index n = space.size();
  auto rows = space.rows();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      Extended<T> sum = space(i, j) + space(j, i);
      rows[i][j] = sum.is_inf() ? sum : Extended<T>(T(sum.value() / T(2)));
    }
  }
  return space.with_costs(std::move(rows));
}

/// c'(p,q) = c(q,p).
template <class T>
CostSpace<T> reverse(const CostSpace<T>& space) {
  const Index n = space.size();
  auto rows = space.rows();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) rows[i][j] = space(j, i);
  return space.with_costs(std::move(rows));
}

/// Exponent of an l_p product; infinity selects the max combination.
struct ProductScheme {
  double p = std::numeric_limits<double>::infinity();

  static ProductScheme max_scheme() { return {}; }
  static ProductScheme lp(double p) { return {p}; }
  bool is_max() const { return std::isinf(p); }
};

inline std::string product_label(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

/// Point (i, j) of a product lives at index i * n2 + j.
struct ProductIndex {
  Index n2;
  Index operator()(Index i, Index j) const { return i * n2 + j; }
  Index first(Index k) const { return k / n2; }
  Index second(Index k) const { return k % n2; }
};

namespace detail {

template <class T>
Extended<T> lp_combine(const Extended<T>& a, const Extended<T>& b, const ProductScheme& scheme) {
  if (a.is_inf() || b.is_inf()) return Extended<T>::infinity();
  if (scheme.is_max()) return max(a, b);
  if (scheme.p == 1.0) return a + b;
  // Fractional exponents have no exact rational value; evaluated in double.
  double x = to_double(a.value());
  double y = to_double(b.value());
  double v = std::pow(std::pow(x, scheme.p) + std::pow(y, scheme.p), 1.0 / scheme.p);
  if constexpr (kIsExact<T>) {
    return Extended<T>(ScalarTraits<T>::from_double(v));
  } else {
    return Extended<T>(v);
  }
}

}  // namespace detail

/// Product space on ordered pairs with the l_p combination of the component
/// costs. Labels are "(a,b)"; the tolerance is the larger of the two.
template <class T>
CostSpace<T> product(const CostSpace<T>& first, const CostSpace<T>& second,
                     ProductScheme scheme = ProductScheme::max_scheme()) {
  if (!(scheme.p >= 1.0)) throw ParameterError("product exponent must be >= 1");
  const Index n1 = first.size();
  const Index n2 = second.size();
  ProductIndex at{n2};
  std::vector<std::string> labels;
  labels.reserve(n1 * n2);
  for (Index i = 0; i < n1; ++i)
    for (Index j = 0; j < n2; ++j) labels.push_back(product_label(first.label(i), second.label(j)));
  std::vector<std::vector<Extended<T>>> rows(n1 * n2, std::vector<Extended<T>>(n1 * n2));
  for (Index a = 0; a < n1 * n2; ++a) {
    for (Index b = 0; b < n1 * n2; ++b) {
      rows[a][b] = detail::lp_combine(first(at.first(a), at.first(b)),
                                      second(at.second(a), at.second(b)), scheme);
    }
  }
  return CostSpace<T>(std::move(labels), std::move(rows),
                      std::max(first.tolerance(), second.tolerance()));
}

/// c2(f(p), f(q)) <= c1(p,q) for all p, q (cost-nonincreasing map).
template <class T>
bool is_cost_morphism(const std::vector<Index>& map, const CostSpace<T>& from,
                      const CostSpace<T>& to) {
  if (map.size() != from.size()) throw ParameterError("map is not total on the source");
  const double tau = std::max(from.tolerance(), to.tolerance());
  for (Index p = 0; p < from.size(); ++p) {
    for (Index q = 0; q < from.size(); ++q) {
      if (map[p] >= to.size() || map[q] >= to.size()) {
        throw ParameterError("map leaves the target");
      }
      const auto& image = to(map[p], map[q]);
      const auto& source = from(p, q);
      if (source.is_inf()) continue;
      if (image.is_inf()) return false;
      if (definitely_greater(image.value(), source.value(), tau, source.value())) return false;
    }
  }
  return true;
}

}  // namespace costgeom
