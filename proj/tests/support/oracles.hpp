// Brute-force reference implementations, written independently of the
// library code they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "costgeom/costgeom.hpp"

namespace oracle {

using costgeom::CostSpace;
using costgeom::Extended;
using costgeom::Index;
using Triple = std::array<Index, 3>;

/// b(p,q,r) straight from the definition, exact types only.
template <class T>
std::set<Triple> betweenness(const CostSpace<T>& s) {
  std::set<Triple> out;
  const Index n = s.size();
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q)
      for (Index r = 0; r < n; ++r) {
        if (p == q || q == r || p == r) continue;
        if (s(p, q).is_inf() || s(q, r).is_inf() || s(p, r).is_inf()) continue;
        if (s(p, q).value() + s(q, r).value() == s(p, r).value()) out.insert({p, q, r});
      }
  return out;
}

/// Number of failed instances of the four betweenness axioms, checked over
/// all 4-tuples.
inline std::size_t axiom_failures(const std::set<Triple>& b, Index n) {
  auto in = [&](Index x, Index y, Index z) { return b.count({x, y, z}) > 0; };
  std::size_t fails = 0;
  for (const auto& [p, q, r] : b) {
    if (p == q || q == r || p == r) ++fails;
    if (in(q, p, r)) ++fails;
  }
  for (Index a = 0; a < n; ++a)
    for (Index b2 = 0; b2 < n; ++b2)
      for (Index c = 0; c < n; ++c)
        for (Index d = 0; d < n; ++d) {
          if (in(a, b2, c) && in(a, c, d) && !(in(a, b2, d) && in(b2, c, d))) ++fails;
          if (in(a, b2, d) && in(b2, c, d) && !(in(a, c, d) && in(a, b2, c))) ++fails;
        }
  return fails;
}

/// Removes adjacent x x^-1 pairs one at a time until none is left.
inline costgeom::GroupWord naive_reduce(costgeom::GroupWord w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
      if (w.letters[i].gen == w.letters[i + 1].gen && w.letters[i].exp == -w.letters[i + 1].exp) {
        w.letters.erase(w.letters.begin() + static_cast<std::ptrdiff_t>(i),
                        w.letters.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

/// Signed sum of generator endpoints.
inline std::vector<long long> psi(const costgeom::GroupWord& w, Index n) {
  std::vector<long long> v(n, 0);
  for (const auto& l : w.letters) {
    v[l.gen.target] += l.exp;
    v[l.gen.source] -= l.exp;
  }
  return v;
}

using Path = std::vector<std::string>;
using Terms = std::vector<std::pair<Path, long long>>;

/// Boundary on an unmerged term list, then collected.
inline std::map<Path, long long> boundary(const Terms& terms) {
  Terms faces;
  for (const auto& [path, c] : terms) {
    if (path.size() < 2) continue;
    for (std::size_t j = 0; j < path.size(); ++j) {
      Path face = path;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
      faces.push_back({face, (j % 2 == 0) ? c : -c});
    }
  }
  std::map<Path, long long> out;
  for (const auto& [p, c] : faces) out[p] += c;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline Terms to_terms(const std::map<Path, long long>& m) { return Terms(m.begin(), m.end()); }

/// All simple chains p -> q with at most max_edges edges that are all-pairs
/// tight, by exhaustive extension without pruning.
template <class T>
std::set<std::vector<Index>> tachistic_chains(const CostSpace<T>& s, Index p, Index q,
                                              std::size_t max_edges) {
  std::set<std::vector<Index>> out;
  const Index n = s.size();
  std::vector<Index> path{p};
  auto tight = [&](const std::vector<Index>& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j) {
        if (s(x[i], x[j]).is_inf()) return false;
        T sum(0);
        for (std::size_t m = i + 1; m <= j; ++m) {
          if (s(x[m - 1], x[m]).is_inf()) return false;
          sum += s(x[m - 1], x[m]).value();
        }
        if (sum != s(x[i], x[j]).value()) return false;
      }
    return true;
  };
  auto rec = [&](auto&& self) -> void {
    if (path.back() == q) {
      if (tight(path)) out.insert(path);
      return;
    }
    if (path.size() - 1 >= max_edges) return;
    for (Index y = 0; y < n; ++y) {
      if (std::find(path.begin(), path.end(), y) != path.end()) continue;
      path.push_back(y);
      self(self);
      path.pop_back();
    }
  };
  rec(rec);
  return out;
}

/// rho by a literal grid over (r1, r2, r3) in [0, R]^3 with a coarse step,
/// keeping feasible points. Double precision.
template <class T>
double curvature_grid3(const CostSpace<T>& s, Index x1, Index x2, Index x3, int steps) {
  const Index x[3] = {x1, x2, x3};
  const double c12 = costgeom::to_double(s(x1, x2).value());
  const double c23 = costgeom::to_double(s(x2, x3).value());
  const double c31 = costgeom::to_double(s(x3, x1).value());
  const double R = std::max({c12, c23, c31});
  const double inf = std::numeric_limits<double>::infinity();
  double sup = -1;
  for (int a = 0; a <= steps; ++a)
    for (int b = 0; b <= steps; ++b)
      for (int c = 0; c <= steps; ++c) {
        double r[3] = {R * a / steps, R * b / steps, R * c / steps};
        const double eps = 1e-12 * R;
        if (r[0] + r[1] < c12 - eps || r[1] + r[2] < c23 - eps || r[2] + r[0] < c31 - eps) continue;
        double best = inf;
        for (Index y = 0; y < s.size(); ++y) {
          double worst = 0;
          for (int i = 0; i < 3; ++i) {
            const auto& cost = s(x[i], y);
            double v = cost.is_inf() ? inf : costgeom::to_double(cost.value());
            double q = r[i] == 0 ? (v == 0 ? 0 : inf) : v / r[i];
            worst = std::max(worst, q);
          }
          best = std::min(best, worst);
        }
        sup = std::max(sup, best);
      }
  return sup;
}

}  // namespace oracle
