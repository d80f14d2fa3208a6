#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "costgeom/core.hpp"
#include "costgeom/cost_space.hpp"

namespace costgeom {

enum class BallDirection { kOutward, kInward };

/// B+(p,t) = {q : c(p,q) <= t}; B-(p,t) = {q : c(q,p) <= t}. Sorted indices.
template <class T>
std::vector<Index> ball(const CostSpace<T>& space, Index center, const T& radius,
                        BallDirection direction = BallDirection::kOutward) {
  if (center >= space.size()) throw ParameterError("ball center outside the space");
  if (radius < T(0)) throw ParameterError("ball radius must be nonnegative");
  const double tau = space.tolerance();
  std::vector<Index> out;
  for (Index q = 0; q < space.size(); ++q) {
    const auto& c = direction == BallDirection::kOutward ? space(center, q) : space(q, center);
    if (q == center || (c.is_finite() && !definitely_greater(c.value(), radius, tau, radius))) {
      out.push_back(q);
    }
  }
  return out;
}

/// Solution of r1 + r2 = c(x1,x2), r2 + r3 = c(x2,x3), r3 + r1 = c(x3,x1).
template <class T>
struct GromovRadii {
  T r1;
  T r2;
  T r3;

  const T& operator[](int i) const { return i == 0 ? r1 : (i == 1 ? r2 : r3); }
  bool all_positive() const { return r1 > T(0) && r2 > T(0) && r3 > T(0); }
};

namespace detail {

template <class T>
std::array<T, 3> triple_legs(const CostSpace<T>& space, Index x1, Index x2, Index x3) {
  const Index n = space.size();
  if (x1 >= n || x2 >= n || x3 >= n) throw ParameterError("triple point outside the space");
  if (x1 == x2 || x2 == x3 || x1 == x3) throw ParameterError("triple needs distinct points");
  const auto& c12 = space(x1, x2);
  const auto& c23 = space(x2, x3);
  const auto& c31 = space(x3, x1);
  if (c12.is_inf() || c23.is_inf() || c31.is_inf()) {
    throw DomainError("triple (" + space.label(x1) + "," + space.label(x2) + "," +
                      space.label(x3) + ") has an infinite leg");
  }
  return {c12.value(), c23.value(), c31.value()};
}

/// c / r with c/0 = INF for c > 0, 0/0 = 0 and c/INF = 0.
template <class T>
Extended<T> ratio(const Extended<T>& cost, const Extended<T>& radius) {
  if (radius.is_inf()) return Extended<T>(0);
  if (cost.is_inf()) return Extended<T>::infinity();
  if (radius.value() == T(0)) {
    return cost.value() == T(0) ? Extended<T>(0) : Extended<T>::infinity();
  }
  return Extended<T>(T(cost.value() / radius.value()));
}

inline double ratio(double cost, double radius) {
  if (std::isinf(radius)) return 0.0;
  if (radius == 0.0) return cost == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return cost / radius;
}

}  // namespace detail

/// Gromov radii of the ordered triple. Exact in rational mode; values may be
/// negative when one leg exceeds the sum of the other two.
template <class T>
GromovRadii<T> gromov_radii(const CostSpace<T>& space, Index x1, Index x2, Index x3) {
  auto [c12, c23, c31] = detail::triple_legs(space, x1, x2, x3);
  const T two(2);
  return {T((c12 + c31 - c23) / two), T((c12 + c23 - c31) / two), T((c23 + c31 - c12) / two)};
}

enum class CurvatureMethod { kClosedForm, kGridOracle };

inline std::string to_string(CurvatureMethod m) {
  return m == CurvatureMethod::kClosedForm ? "closed_form" : "grid_oracle";
}

template <class T>
struct CurvatureResult {
  Extended<T> rho;
  Index witness = 0;  // center attaining the inner minimum
  /// Gromov radii for the closed form; the maximizing radii for the oracle.
  GromovRadii<T> radii;
  CurvatureMethod method = CurvatureMethod::kClosedForm;
  /// Some Gromov radius is <= 0, so the closed form does not apply.
  bool boundary_flag = false;
};

namespace detail {

template <class T>
std::pair<Extended<T>, Index> inner_min(const CostSpace<T>& space, const std::array<Index, 3>& x,
                                        const std::array<Extended<T>, 3>& radii) {
  Extended<T> best = Extended<T>::infinity();
  Index witness = 0;
  for (Index y = 0; y < space.size(); ++y) {
    Extended<T> worst(0);
    for (int i = 0; i < 3; ++i) worst = max(worst, ratio(space(x[i], y), radii[i]));
    if (worst < best) {
      best = worst;
      witness = y;
    }
  }
  return {best, witness};
}

}  // namespace detail

/// Sup over r >= 0 with r1+r2 >= c(x1,x2), r2+r3 >= c(x2,x3), r3+r1 >= c(x3,x1)
/// of min_x max_i c(x_i,x)/r_i, evaluated on a grid. Computed in double.
///
/// The objective does not increase when any r_i grows, so the supremum lies
/// on the minimal boundary of the feasible set. That boundary is
/// one-dimensional: for r1 on the grid the minimal (r2, r3) are the corners
/// of the slice {r2 >= a, r3 >= b, r2 + r3 >= c(x2,x3)} with
/// a = max(0, c12 - r1), b = max(0, c31 - r1), plus the whole slice edge when
/// r1 = 0. grid_step is relative to the largest leg, so the result is scale
/// invariant.
template <class T>
CurvatureResult<T> grid_oracle_curvature(const CostSpace<T>& space, Index x1, Index x2, Index x3,
                                         double grid_step = 1e-3) {
  if (!(grid_step > 0.0)) throw ParameterError("grid step must be positive");
  auto legs = detail::triple_legs(space, x1, x2, x3);
  const double c12 = to_double(legs[0]);
  const double c23 = to_double(legs[1]);
  const double c31 = to_double(legs[2]);
  const std::array<Index, 3> x{x1, x2, x3};
  const Index n = space.size();
  // costs[i][y] = c(x_i, y) in double, INF where infinite
  std::array<std::vector<double>, 3> costs;
  for (int i = 0; i < 3; ++i) {
    costs[i].resize(n);
    for (Index y = 0; y < n; ++y) {
      const auto& c = space(x[i], y);
      costs[i][y] = c.is_inf() ? std::numeric_limits<double>::infinity() : to_double(c.value());
    }
  }
  auto objective = [&](double r1, double r2, double r3, Index& witness) {
    double best = std::numeric_limits<double>::infinity();
    const double r[3] = {r1, r2, r3};
    for (Index y = 0; y < n; ++y) {
      double worst = 0.0;
      for (int i = 0; i < 3; ++i) worst = std::max(worst, detail::ratio(costs[i][y], r[i]));
      if (worst < best) {
        best = worst;
        witness = y;
      }
    }
    return best;
  };

  const double scale = std::max({c12, c23, c31});
  const double h = grid_step * scale;
  double sup = -1.0;
  std::array<double, 3> arg{0, 0, 0};
  Index arg_witness = 0;
  auto consider = [&](double r1, double r2, double r3) {
    Index w = 0;
    double v = objective(r1, r2, r3, w);
    if (v > sup) {
      sup = v;
      arg = {r1, r2, r3};
      arg_witness = w;
    }
  };

  const double r1_max = std::max(c12, c31);
  const auto steps = static_cast<long long>(std::ceil(r1_max / h));
  // The grid plus the kinks of the boundary: the Gromov value of r1 and the
  // legs at which a or b reaches zero.
  std::vector<double> r1_values;
  for (long long k = 0; k <= steps; ++k) r1_values.push_back(std::min(r1_max, static_cast<double>(k) * h));
  for (double kink : {(c12 + c31 - c23) / 2, c12, c31}) {
    if (kink > 0.0 && kink < r1_max) r1_values.push_back(kink);
  }
  for (std::size_t k = 0; k < r1_values.size(); ++k) {
    const double r1 = r1_values[k];
    const double a = std::max(0.0, c12 - r1);
    const double b = std::max(0.0, c31 - r1);
    if (a + b >= c23) {
      consider(r1, a, b);
      continue;
    }
    consider(r1, a, c23 - a);
    consider(r1, c23 - b, b);
    if (k == 0) {
      const double hi = c23 - b;
      const auto inner = static_cast<long long>(std::ceil((hi - a) / h));
      for (long long m = 1; m < inner; ++m) {
        double r2 = a + static_cast<double>(m) * h;
        consider(r1, r2, c23 - r2);
      }
    }
  }
  if (std::isinf(sup)) {
    throw DomainError("degenerate triple: every feasible radius gives an infinite deviation");
  }

  // Grid values carry float noise; keep 12 significant digits.
  auto from_double = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return ScalarTraits<T>::parse(buf);
  };
  CurvatureResult<T> result;
  result.rho = Extended<T>(from_double(sup));
  result.witness = arg_witness;
  result.radii = {from_double(arg[0]), from_double(arg[1]), from_double(arg[2])};
  result.method = CurvatureMethod::kGridOracle;
  result.boundary_flag = !gromov_radii(space, x1, x2, x3).all_positive();
  return result;
}

/// Directed curvature of the ordered triple. With all Gromov radii positive
/// the sup is taken at the Gromov point and rho = min_x max_i c(x_i,x)/r_i
/// (exact in rational mode). Otherwise falls back to the grid oracle and
/// sets boundary_flag.
template <class T>
CurvatureResult<T> directed_curvature(const CostSpace<T>& space, Index x1, Index x2, Index x3,
                                      double fallback_grid_step = 1e-3) {
  GromovRadii<T> radii = gromov_radii(space, x1, x2, x3);
  if (!radii.all_positive()) {
    return grid_oracle_curvature(space, x1, x2, x3, fallback_grid_step);
  }
  auto [rho, witness] = detail::inner_min(
      space, {x1, x2, x3}, {Extended<T>(radii.r1), Extended<T>(radii.r2), Extended<T>(radii.r3)});
  CurvatureResult<T> result;
  result.rho = rho;
  result.witness = witness;
  result.radii = radii;
  result.method = CurvatureMethod::kClosedForm;
  result.boundary_flag = false;
  return result;
}

/// Directed curvature of d(x,y) = (c(x,y) + c(y,x)) / 2.
template <class T>
CurvatureResult<T> symmetrized_curvature(const CostSpace<T>& space, Index x1, Index x2, Index x3,
                                         double fallback_grid_step = 1e-3) {
  return directed_curvature(symmetrize(space), x1, x2, x3, fallback_grid_step);
}

/// Points x distinct from the triple with b(x1,x,x2), b(x2,x,x3) and
/// b(x3,x,x1). Depends on the ordering of the triple.
template <class T>
std::vector<Index> find_medians(const CostSpace<T>& space, Index x1, Index x2, Index x3) {
  auto legs = detail::triple_legs(space, x1, x2, x3);
  const double tau = space.tolerance();
  const std::array<Index, 3> x{x1, x2, x3};
  std::vector<Index> out;
  for (Index y = 0; y < space.size(); ++y) {
    if (y == x1 || y == x2 || y == x3) continue;
    bool median = true;
    for (int i = 0; i < 3 && median; ++i) {
      const auto& in = space(x[i], y);
      const auto& on = space(y, x[(i + 1) % 3]);
      median = in.is_finite() && on.is_finite() &&
               near_equal(legs[i], T(in.value() + on.value()), tau, legs[i]);
    }
    if (median) out.push_back(y);
  }
  return out;
}

/// A directed pair p -> q with an outward radius around p and an inward
/// radius around q. An infinite radius places no constraint.
template <class T>
struct PairRadii {
  Index p;
  Index q;
  Extended<T> r;
  Extended<T> r_prime;
};

template <class T>
struct DeviationResult {
  Extended<T> lambda;
  Index witness = 0;
};

/// Smallest scaling of all radii for which some point t lies in every
/// B+(p_i, lambda r_i) and B-(q_i, lambda r'_i):
/// lambda = min_t max_i max(c(p_i,t)/r_i, c(t,q_i)/r'_i).
template <class T>
DeviationResult<T> hyperconvexity_deviation(const CostSpace<T>& space,
                                            const std::vector<PairRadii<T>>& pairs) {
  if (pairs.empty()) throw ParameterError("no pairs given");
  bool any_positive = false;
  for (const auto& pr : pairs) {
    if (pr.p >= space.size() || pr.q >= space.size()) throw ParameterError("pair outside the space");
    for (const auto* r : {&pr.r, &pr.r_prime}) {
      if (r->is_finite() && r->value() < T(0)) throw ParameterError("radii must be nonnegative");
      if (r->is_inf() || r->value() > T(0)) any_positive = true;
    }
  }
  if (!any_positive) throw ParameterError("all radii are zero");
  DeviationResult<T> best{Extended<T>::infinity(), 0};
  for (Index t = 0; t < space.size(); ++t) {
    Extended<T> worst(0);
    for (const auto& pr : pairs) {
      worst = max(worst, detail::ratio(space(pr.p, t), pr.r));
      worst = max(worst, detail::ratio(space(t, pr.q), pr.r_prime));
    }
    if (worst < best.lambda) best = {worst, t};
  }
  if (best.lambda.is_inf()) throw DomainError("no point reaches every ball at any finite scale");
  return best;
}

template <class T>
struct ConvexityFailure {
  Index p;
  Index r;
  T split;  // t1 with no q satisfying c(p,q) <= t1 + eps and c(q,r) <= c(p,r) - t1 + eps
};

template <class T>
struct ConvexityReport {
  T epsilon;
  std::vector<ConvexityFailure<T>> failures;        // at epsilon
  std::vector<ConvexityFailure<T>> strict_failures;  // at epsilon = 0
  bool almost_chronodesic() const { return failures.empty(); }
  bool totally_convex() const { return strict_failures.empty(); }
};

namespace detail {

/// Every split t1 in [0, c(p,r)] is witnessed by some q iff the intervals
/// [c(p,q) - eps, c(p,r) - c(q,r) + eps] cover [0, c(p,r)]. Reports the
/// midpoint of each uncovered stretch.
template <class T>
std::vector<ConvexityFailure<T>> split_failures(const CostSpace<T>& space, const T& eps) {
  std::vector<ConvexityFailure<T>> out;
  const Index n = space.size();
  const double tau = space.tolerance();
  for (Index p = 0; p < n; ++p) {
    for (Index r = 0; r < n; ++r) {
      if (p == r || space(p, r).is_inf()) continue;
      const T& total = space(p, r).value();
      std::vector<std::pair<T, T>> cover;
      for (Index q = 0; q < n; ++q) {
        const auto& a = space(p, q);
        const auto& b = space(q, r);
        if (a.is_inf() || b.is_inf()) continue;
        T lo = std::max(T(0), T(a.value() - eps));
        T hi = std::min(total, T(total - b.value() + eps));
        if (!definitely_greater(lo, hi, tau, total)) cover.emplace_back(lo, hi);
      }
      std::sort(cover.begin(), cover.end());
      T reached(0);
      bool started = false;
      for (const auto& [lo, hi] : cover) {
        T gap_start = started ? reached : T(0);
        if (definitely_greater(lo, gap_start, tau, total)) {
          out.push_back({p, r, T((gap_start + lo) / T(2))});
        }
        if (!started || hi > reached) reached = hi;
        started = true;
      }
      if (!started) {
        out.push_back({p, r, T(total / T(2))});
      } else if (definitely_greater(total, reached, tau, total)) {
        out.push_back({p, r, T((reached + total) / T(2))});
      }
    }
  }
  return out;
}

}  // namespace detail

/// Checks, for every ordered pair with finite cost, that each split
/// t1 + t2 = c(p,r) is realized up to epsilon by an intermediate point.
template <class T>
ConvexityReport<T> convexity_checks(const CostSpace<T>& space, const T& epsilon) {
  if (epsilon < T(0)) throw ParameterError("epsilon must be nonnegative");
  ConvexityReport<T> report;
  report.epsilon = epsilon;
  report.failures = detail::split_failures(space, epsilon);
  report.strict_failures = detail::split_failures(space, T(0));
  return report;
}

}  // namespace costgeom
