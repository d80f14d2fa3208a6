#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "costgeom/cost_space.hpp"

namespace costgeom {

/// A finite sequence of points x_0, ..., x_k given by label index.
///
/// A single point is the constant chain (the unit of composition); every
/// other chain has at least one edge.
struct Chain {
  std::vector<Index> points;

  Index front() const { return points.front(); }
  Index back() const { return points.back(); }
  std::size_t edges() const { return points.empty() ? 0 : points.size() - 1; }

  friend bool operator==(const Chain&, const Chain&) = default;
  friend auto operator<=>(const Chain&, const Chain&) = default;
};

inline void check_chain(const Chain& chain, Index n) {
  if (chain.points.empty()) throw ParameterError("empty chain");
  for (Index x : chain.points) {
    if (x >= n) throw ParameterError("chain point outside the space");
  }
}

/// Sum of consecutive costs. Throws DomainError on an infinite edge.
template <class T>
T chain_length(const CostSpace<T>& space, const Chain& chain) {
  check_chain(chain, space.size());
  T total(0);
  for (std::size_t m = 1; m < chain.points.size(); ++m) {
    const auto& c = space(chain.points[m - 1], chain.points[m]);
    if (c.is_inf()) {
      throw DomainError("unreachable edge " + space.label(chain.points[m - 1]) + " -> " +
                        space.label(chain.points[m]));
    }
    total += c.value();
  }
  return total;
}

/// Concatenation of c1 and c2 sharing the junction point.
inline Chain compose_chains(const Chain& first, const Chain& second) {
  if (first.points.empty() || second.points.empty()) throw ParameterError("empty chain");
  if (first.back() != second.front()) {
    throw ParameterError("chains do not meet: composition needs last(c1) == first(c2)");
  }
  Chain out = first;
  out.points.insert(out.points.end(), second.points.begin() + 1, second.points.end());
  return out;
}

/// All-pairs minimal chain cost (min-plus transitive closure). Missing edges
/// are INF and stay INF when unreachable. Runs Floyd-Warshall, O(n^3).
template <class T>
CostSpace<T> path_cost_closure(const CostSpace<T>& weights) {
  const Index n = weights.size();
  auto d = weights.rows();
  for (Index i = 0; i < n; ++i) {
    if (d[i][i] != Extended<T>(0)) {
      throw InputError("weight diagonal must be zero at " + weights.label(i));
    }
  }
  for (Index k = 0; k < n; ++k) {
    for (Index i = 0; i < n; ++i) {
      if (d[i][k].is_inf()) continue;
      for (Index j = 0; j < n; ++j) {
        if (d[k][j].is_inf()) continue;
        Extended<T> via = d[i][k] + d[k][j];
        if (via < d[i][j]) d[i][j] = via;
      }
    }
  }
  return weights.with_costs(std::move(d));
}

/// All-pairs tightness: c(x_i, x_j) equals the chain length between them for
/// every i < j. Timestamps are the cumulative lengths.
template <class T>
bool is_tachistic(const CostSpace<T>& space, const Chain& chain) {
  check_chain(chain, space.size());
  const auto& x = chain.points;
  // cumulative[m] = length of x_0..x_m
  std::vector<T> cumulative(x.size(), T(0));
  for (std::size_t m = 1; m < x.size(); ++m) {
    const auto& c = space(x[m - 1], x[m]);
    if (c.is_inf()) throw DomainError("chain has an infinite edge");
    cumulative[m] = cumulative[m - 1] + c.value();
  }
  const double tau = space.tolerance();
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const auto& direct = space(x[i], x[j]);
      T along = cumulative[j] - cumulative[i];
      if (direct.is_inf() || !near_equal(direct.value(), along, tau, along)) return false;
    }
  }
  return true;
}

/// Local tightness: every consecutive triple satisfies
/// c(x_{i-1}, x_i) + c(x_i, x_{i+1}) = c(x_{i-1}, x_{i+1}).
/// A one-edge chain with finite cost is trivially tight.
template <class T>
bool is_chronodesic_tight(const CostSpace<T>& space, const Chain& chain) {
  check_chain(chain, space.size());
  const auto& x = chain.points;
  for (std::size_t m = 1; m < x.size(); ++m) {
    if (space(x[m - 1], x[m]).is_inf()) return false;
  }
  const double tau = space.tolerance();
  for (std::size_t m = 1; m + 1 < x.size(); ++m) {
    const auto& direct = space(x[m - 1], x[m + 1]);
    T along = space(x[m - 1], x[m]).value() + space(x[m], x[m + 1]).value();
    if (direct.is_inf() || !near_equal(direct.value(), along, tau, along)) return false;
  }
  return true;
}

struct TachisticChain {
  Chain chain;
  /// No single point of the space can be inserted while keeping the chain
  /// tachistic. This is the finite, single-insertion form of
  /// non-extendability; larger supersets are not searched.
  bool maximal = false;
};

namespace detail {

template <class T>
bool insertion_keeps_tight(const CostSpace<T>& space, const Chain& chain) {
  for (std::size_t m = 0; m + 1 < chain.points.size(); ++m) {
    for (Index y = 0; y < space.size(); ++y) {
      if (std::find(chain.points.begin(), chain.points.end(), y) != chain.points.end()) continue;
      if (space(chain.points[m], y).is_inf() || space(y, chain.points[m + 1]).is_inf()) continue;
      Chain extended = chain;
      extended.points.insert(extended.points.begin() + static_cast<std::ptrdiff_t>(m) + 1, y);
      if (is_tachistic(space, extended)) return true;
    }
  }
  return false;
}

}  // namespace detail

/// Every tachistic chain from p to q with at most max_edges edges, sorted by
/// point sequence.
///
/// The search extends prefixes that are already all-pairs tight and keeps a
/// prefix ending at x only while c(p,q) = length(prefix) + c(x,q), which any
/// tachistic completion requires.
template <class T>
std::vector<TachisticChain> enumerate_tachistic_chains(const CostSpace<T>& space, Index p, Index q,
                                                       std::size_t max_edges) {
  const Index n = space.size();
  if (p >= n || q >= n) throw ParameterError("endpoint outside the space");
  if (p == q) throw ParameterError("tachistic chains need distinct endpoints");
  std::vector<TachisticChain> out;
  if (space(p, q).is_inf() || max_edges == 0) return out;
  const double tau = space.tolerance();
  const T& target = space(p, q).value();

  std::vector<Index> prefix{p};
  std::vector<char> used(n, 0);
  used[p] = 1;
  // cumulative[m] = length of prefix[0..m]
  std::vector<T> cumulative{T(0)};

  auto recurse = [&](auto&& self) -> void {
    const Index last = prefix.back();
    if (prefix.size() - 1 >= max_edges) return;
    for (Index y = 0; y < n; ++y) {
      if (used[y] || space(last, y).is_inf()) continue;
      T length = cumulative.back() + space(last, y).value();
      bool tight = true;
      for (std::size_t i = 0; i < prefix.size() && tight; ++i) {
        const auto& direct = space(prefix[i], y);
        T along = length - cumulative[i];
        tight = direct.is_finite() && near_equal(direct.value(), along, tau, along);
      }
      if (!tight) continue;
      if (y == q) {
        Chain chain{prefix};
        chain.points.push_back(q);
        out.push_back({chain, false});
        continue;
      }
      if (space(y, q).is_inf() ||
          !near_equal(target, T(length + space(y, q).value()), tau, target)) {
        continue;
      }
      prefix.push_back(y);
      cumulative.push_back(length);
      used[y] = 1;
      self(self);
      used[y] = 0;
      cumulative.pop_back();
      prefix.pop_back();
    }
  };
  recurse(recurse);

  for (auto& entry : out) entry.maximal = !detail::insertion_keeps_tight(space, entry.chain);
  std::sort(out.begin(), out.end(),
            [](const TachisticChain& a, const TachisticChain& b) { return a.chain < b.chain; });
  return out;
}

/// Formal integer combination of vertex sequences. Zero coefficients are
/// never stored, so the zero sum is the empty map.
class PathChainSum {
 public:
  using Path = std::vector<std::string>;

  PathChainSum() = default;
  PathChainSum(std::initializer_list<std::pair<const Path, long long>> terms) {
    for (const auto& [path, coeff] : terms) add(path, coeff);
  }

  static PathChainSum single(Path path, long long coeff = 1) {
    PathChainSum s;
    s.add(std::move(path), coeff);
    return s;
  }

  void add(const Path& path, long long coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(path, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  PathChainSum& operator+=(const PathChainSum& other) {
    for (const auto& [path, coeff] : other.terms_) add(path, coeff);
    return *this;
  }

  friend PathChainSum operator+(PathChainSum a, const PathChainSum& b) { return a += b; }
  friend PathChainSum operator-(PathChainSum a, const PathChainSum& b) {
    for (const auto& [path, coeff] : b.terms_) a.add(path, -coeff);
    return a;
  }

  const std::map<Path, long long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  long long coefficient(const Path& path) const {
    auto it = terms_.find(path);
    return it == terms_.end() ? 0 : it->second;
  }

  friend bool operator==(const PathChainSum&, const PathChainSum&) = default;

 private:
  std::map<Path, long long> terms_;
};

/// d(v_0, ..., v_n) = sum_j (-1)^j (v_0, ..., omit v_j, ..., v_n), extended
/// linearly. A single-vertex path (and the empty path) maps to zero.
inline PathChainSum boundary(const PathChainSum& sum) {
  PathChainSum out;
  for (const auto& [path, coeff] : sum.terms()) {
    if (path.size() < 2) continue;
    for (std::size_t j = 0; j < path.size(); ++j) {
      PathChainSum::Path face;
      face.reserve(path.size() - 1);
      for (std::size_t m = 0; m < path.size(); ++m)
        if (m != j) face.push_back(path[m]);
      out.add(face, j % 2 == 0 ? coeff : -coeff);
    }
  }
  return out;
}

}  // namespace costgeom
