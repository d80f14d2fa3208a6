// Test spaces and seeded random generators.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "costgeom/costgeom.hpp"

namespace fixtures {

using costgeom::CostSpace;
using costgeom::Extended;
using costgeom::Index;
using costgeom::Rational;

template <class T>
T frac(long long num, long long den) {
  if constexpr (costgeom::kIsExact<T>) {
    return T(Rational(num, den));
  } else {
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

template <class T>
using Matrix = std::vector<std::vector<Extended<T>>>;

template <class T>
CostSpace<T> make(std::vector<std::string> labels, Matrix<T> rows) {
  return CostSpace<T>(std::move(labels), std::move(rows), costgeom::kDefaultTolerance);
}

inline std::vector<std::string> grid_labels(Index n, const char* prefix) {
  std::vector<std::string> out;
  for (Index k = 0; k < n; ++k) out.push_back(prefix + std::to_string(k));
  return out;
}

/// Points k/(n-1) of [0,1]; c(s,t) = t - s forward, INF backward.
template <class T>
CostSpace<T> interval(Index n) {
  Matrix<T> rows(n, std::vector<Extended<T>>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      rows[i][j] = i <= j ? Extended<T>(frac<T>(j - i, n - 1)) : Extended<T>::infinity();
  return make<T>(grid_labels(n, "s"), rows);
}

/// Points k/n of the circle of circumference 1; c(s,t) = t - s or 1 + t - s.
template <class T>
CostSpace<T> circle(Index n) {
  Matrix<T> rows(n, std::vector<Extended<T>>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      rows[i][j] = Extended<T>(i <= j ? frac<T>(j - i, n) : frac<T>(n + j - i, n));
  return make<T>(grid_labels(n, "c"), rows);
}

/// Points k/(n-1) of [0,1]; c(p,q) = q - p forward, 2(p - q) backward.
template <class T>
CostSpace<T> hyp2(Index n) {
  Matrix<T> rows(n, std::vector<Extended<T>>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      rows[i][j] = Extended<T>(i <= j ? frac<T>(j - i, n - 1) : frac<T>(2 * (i - j), n - 1));
  return make<T>(grid_labels(n, "h"), rows);
}

/// Arrows p1->p2, p2->p3, p3->p4, p1->p4 with cost 1 and 10 backwards, then
/// minimal chain costs.
template <class T>
CostSpace<T> diagram14() {
  const auto inf = Extended<T>::infinity();
  Matrix<T> w = {{0, 1, inf, 1}, {10, 0, 1, inf}, {inf, 10, 0, 1}, {10, inf, 10, 0}};
  return costgeom::path_cost_closure(make<T>({"p1", "p2", "p3", "p4"}, w));
}

template <class T>
CostSpace<T> uniform(Index n) {
  Matrix<T> rows(n, std::vector<Extended<T>>(n, Extended<T>(1)));
  for (Index i = 0; i < n; ++i) rows[i][i] = Extended<T>(0);
  return make<T>(grid_labels(n, "u"), rows);
}

/// Three leaves a, b, c at cost 1 from a center t, pairwise cost 2.
template <class T>
CostSpace<T> tripod() {
  return make<T>({"a", "b", "c", "t"}, {{0, 2, 2, 1}, {2, 0, 2, 1}, {2, 2, 0, 1}, {1, 1, 1, 0}});
}

/// a -> b -> c -> a costs 1, reverse costs 2.
template <class T>
CostSpace<T> cycle3() {
  return make<T>({"a", "b", "c"}, {{0, 1, 2}, {2, 0, 1}, {1, 2, 0}});
}

/// Random weights in [lo, hi] off the diagonal; a fraction inf_prob of them
/// is INF. Not necessarily a cost function.
template <class T>
CostSpace<T> random_weights(std::mt19937_64& rng, Index n, int lo = 1, int hi = 20,
                            double inf_prob = 0.0) {
  std::uniform_int_distribution<int> w(lo, hi);
  std::bernoulli_distribution missing(inf_prob);
  Matrix<T> rows(n, std::vector<Extended<T>>(n, Extended<T>(0)));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j) rows[i][j] = missing(rng) ? Extended<T>::infinity() : Extended<T>(w(rng));
  return make<T>(grid_labels(n, "x"), rows);
}

/// Closure of random integer weights in [1, 20]: a cost space whose entries
/// stay in {1..20}.
template <class T>
CostSpace<T> random_space(std::mt19937_64& rng, Index n, double inf_prob = 0.0) {
  return costgeom::path_cost_closure(random_weights<T>(rng, n, 1, 20, inf_prob));
}

inline Index random_size(std::mt19937_64& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

}  // namespace fixtures
