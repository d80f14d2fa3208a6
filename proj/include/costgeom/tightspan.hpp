#pragma once

#include <string>
#include <utility>
#include <vector>

#include "costgeom/cost_space.hpp"

namespace costgeom {

/// Functions f, g on the labels, indexed like the space. Entries may be INF.
template <class T>
struct FunctionPair {
  std::vector<Extended<T>> f;
  std::vector<Extended<T>> g;

  friend bool operator==(const FunctionPair&, const FunctionPair&) = default;
};

/// Result of one tightening step. `warnings` names the labels whose
/// supremum ranged over nothing finite and were set to INF.
template <class T>
struct Tightened {
  std::vector<Extended<T>> values;
  std::vector<std::string> warnings;
};

namespace detail {

template <class T>
void check_function(const CostSpace<T>& space, const std::vector<Extended<T>>& h) {
  if (h.size() != space.size()) throw ParameterError("function size does not match the space");
  if (h.empty()) throw ParameterError("function on an empty set");
}

/// out(p) = max_q c(p,q) - h(q) over finite terms, read as rows (source)
/// or columns (target).
template <class T>
Tightened<T> tighten(const CostSpace<T>& space, const std::vector<Extended<T>>& h, bool rows) {
  check_function(space, h);
  const Index n = space.size();
  Tightened<T> out;
  out.values.assign(n, Extended<T>::infinity());
  for (Index p = 0; p < n; ++p) {
    bool found = false;
    T best(0);
    for (Index q = 0; q < n; ++q) {
      const auto& c = rows ? space(p, q) : space(q, p);
      if (c.is_inf() || h[q].is_inf()) continue;
      T v = c.value() - h[q].value();
      if (!found || v > best) best = v;
      found = true;
    }
    if (found) {
      out.values[p] = Extended<T>(best);
    } else {
      out.warnings.push_back(space.label(p));
    }
  }
  return out;
}

}  // namespace detail

/// f(p) = max_q (c(p,q) - g(q)), over q with c(p,q) and g(q) finite.
template <class T>
Tightened<T> tighten_f(const CostSpace<T>& space, const std::vector<Extended<T>>& g) {
  return detail::tighten(space, g, true);
}

/// Dual step g(q) = max_p (c(p,q) - f(p)). Not part of admissibility.
template <class T>
Tightened<T> tighten_g(const CostSpace<T>& space, const std::vector<Extended<T>>& f) {
  return detail::tighten(space, f, false);
}

template <class T>
struct AdmissibilityResult {
  bool admissible = false;
  Extended<T> defect;  // max |f(p) - sup_q (c(p,q) - g(q))|; INF when an INF side mismatches
};

namespace detail {

template <class T>
AdmissibilityResult<T> compare_tight(const CostSpace<T>& space, const std::vector<Extended<T>>& have,
                                     const std::vector<Extended<T>>& want) {
  const double tau = space.tolerance();
  AdmissibilityResult<T> r{true, Extended<T>(0)};
  for (Index p = 0; p < have.size(); ++p) {
    // INF in the given function: no finite constraint to check.
    if (have[p].is_inf()) continue;
    if (want[p].is_inf()) {
      r.admissible = false;
      r.defect = Extended<T>::infinity();
      continue;
    }
    T gap = abs_value(T(have[p].value() - want[p].value()));
    if (Extended<T>(gap) > r.defect) r.defect = Extended<T>(gap);
    if (!near_equal(have[p].value(), want[p].value(), tau, want[p].value())) r.admissible = false;
  }
  return r;
}

}  // namespace detail

/// Checks f(p) = sup_q (c(p,q) - g(q)) for every p with f(p) finite.
template <class T>
AdmissibilityResult<T> is_admissible_pair(const CostSpace<T>& space, const FunctionPair<T>& pair) {
  detail::check_function(space, pair.f);
  auto want = tighten_f(space, pair.g);
  return detail::compare_tight(space, pair.f, want.values);
}

/// Admissible and also g(q) = sup_p (c(p,q) - f(p)).
template <class T>
bool is_bitight(const CostSpace<T>& space, const FunctionPair<T>& pair) {
  if (!is_admissible_pair(space, pair).admissible) return false;
  detail::check_function(space, pair.g);
  auto want = tighten_g(space, pair.f);
  return detail::compare_tight(space, pair.g, want.values).admissible;
}

/// (c(., x), c(x, .)).
template <class T>
FunctionPair<T> kuratowski_pair(const CostSpace<T>& space, Index x) {
  if (x >= space.size()) throw ParameterError("point outside the space");
  FunctionPair<T> pair;
  for (Index p = 0; p < space.size(); ++p) {
    pair.f.push_back(space(p, x));
    pair.g.push_back(space(x, p));
  }
  return pair;
}

template <class T>
struct TightTrace {
  std::vector<FunctionPair<T>> pairs;
  bool converged = false;  // stopped because a pair repeated
  std::vector<std::string> warnings;
};

/// Alternates f = tighten_f(g), g = tighten_g(f) from g0 and records each
/// (f, g). Stops when a pair repeats or after max_iter pairs.
template <class T>
TightTrace<T> iterate_tight_pairs(const CostSpace<T>& space, std::vector<Extended<T>> g0,
                                  std::size_t max_iter) {
  if (max_iter < 1) throw ParameterError("max_iter must be at least 1");
  detail::check_function(space, g0);
  TightTrace<T> trace;
  std::vector<Extended<T>> g = std::move(g0);
  for (std::size_t step = 0; step < max_iter; ++step) {
    auto f = tighten_f(space, g);
    for (auto& w : f.warnings) trace.warnings.push_back("step " + std::to_string(step + 1) + ": f(" + w + ") = inf");
    FunctionPair<T> pair{std::move(f.values), g};
    for (const auto& previous : trace.pairs) {
      if (previous == pair) trace.converged = true;
    }
    trace.pairs.push_back(pair);
    if (trace.converged) break;
    auto next = tighten_g(space, pair.f);
    for (auto& w : next.warnings) trace.warnings.push_back("step " + std::to_string(step + 1) + ": g(" + w + ") = inf");
    g = std::move(next.values);
  }
  return trace;
}

}  // namespace costgeom
