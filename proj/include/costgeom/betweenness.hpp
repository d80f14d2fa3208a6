#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "costgeom/cost_space.hpp"

namespace costgeom {

/// (p, q, r) read as "q is between p and r".
using Triple = std::array<Index, 3>;

/// A three-point relation on a labeled ground set.
///
/// Triples are kept sorted (lexicographic by index) so iteration and
/// serialization are deterministic. Entries must be pairwise distinct; a
/// relation violating that is rejected at construction.
class BetweennessRelation {
 public:
  BetweennessRelation() = default;

  BetweennessRelation(std::vector<std::string> ground, std::vector<Triple> triples)
      : ground_(std::move(ground)), member_(ground_.size() * ground_.size() * ground_.size(), 0) {
    const Index n = ground_.size();
    for (const auto& t : triples) {
      for (Index x : t) {
        if (x >= n) throw ParameterError("triple index outside the ground set");
      }
      if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
        throw ParameterError("betweenness triples must have distinct entries");
      }
      member_[key(t)] = 1;
    }
    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
    triples_ = std::move(triples);
  }

  const std::vector<std::string>& ground() const { return ground_; }
  Index ground_size() const { return ground_.size(); }
  const std::vector<Triple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }

  bool contains(Index p, Index q, Index r) const {
    const Index n = ground_.size();
    if (p >= n || q >= n || r >= n) return false;
    return member_[key({p, q, r})] != 0;
  }
  bool contains(const Triple& t) const { return contains(t[0], t[1], t[2]); }

  friend bool operator==(const BetweennessRelation& a, const BetweennessRelation& b) {
    return a.ground_ == b.ground_ && a.triples_ == b.triples_;
  }

 private:
  Index key(const Triple& t) const {
    const Index n = ground_.size();
    return (t[0] * n + t[1]) * n + t[2];
  }

  std::vector<std::string> ground_;
  std::vector<Triple> triples_;
  std::vector<char> member_;
};

/// q is between p and r iff p, q, r are distinct, all three legs are finite
/// and c(p,r) = c(p,q) + c(q,r). Float mode uses the relative tolerance
/// tau * max(1, c(p,r)).
template <class T>
BetweennessRelation derive_betweenness(const CostSpace<T>& space) {
  const Index n = space.size();
  const double tau = space.tolerance();
  std::vector<Triple> triples;
  for (Index p = 0; p < n; ++p) {
    for (Index r = 0; r < n; ++r) {
      if (r == p || space(p, r).is_inf()) continue;
      const T& direct = space(p, r).value();
      for (Index q = 0; q < n; ++q) {
        if (q == p || q == r) continue;
        const auto& a = space(p, q);
        const auto& b = space(q, r);
        if (a.is_inf() || b.is_inf()) continue;
        if (near_equal(direct, T(a.value() + b.value()), tau, direct)) {
          triples.push_back({p, q, r});
        }
      }
    }
  }
  return BetweennessRelation(space.labels(), std::move(triples));
}

enum class BetweennessAxiom {
  kDistinct,       // b(p,q,r) implies p, q, r distinct
  kAntisymmetric,  // b(p,q,r) implies not b(q,p,r)
  kOuterChain,     // 123 and 134 imply 124 and 234
  kInnerChain,     // 124 and 234 imply 134 and 123
};

inline std::string to_string(BetweennessAxiom axiom) {
  switch (axiom) {
    case BetweennessAxiom::kDistinct: return "distinct";
    case BetweennessAxiom::kAntisymmetric: return "antisymmetry";
    case BetweennessAxiom::kOuterChain: return "123+134=>124+234";
    case BetweennessAxiom::kInnerChain: return "124+234=>134+123";
  }
  return "?";
}

/// One failed instance: the premises that held and the conclusion that is
/// missing (or, for antisymmetry, present).
struct AxiomViolation {
  BetweennessAxiom axiom;
  std::vector<Triple> premises;
  Triple conclusion;
};

struct BetweennessAxiomReport {
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
  std::size_t count(BetweennessAxiom axiom) const {
    return static_cast<std::size_t>(std::count_if(
        violations.begin(), violations.end(),
        [axiom](const AxiomViolation& v) { return v.axiom == axiom; }));
  }
};

/// Exhaustive check of the four betweenness axioms. Only the listed
/// implications are tested; "123 and 234 imply 124 or 134" is not an axiom.
inline BetweennessAxiomReport check_axioms(const BetweennessRelation& rel) {
  BetweennessAxiomReport report;
  const Index n = rel.ground_size();
  auto missing = [&](const Triple& t) {
    return t[0] == t[1] || t[1] == t[2] || t[0] == t[2] || !rel.contains(t);
  };
  for (const Triple& t : rel.triples()) {
    const auto [p, q, r] = t;
    if (p == q || q == r || p == r) {
      report.violations.push_back({BetweennessAxiom::kDistinct, {t}, t});
    }
    if (rel.contains(q, p, r)) {
      report.violations.push_back({BetweennessAxiom::kAntisymmetric, {t}, {q, p, r}});
    }
    // t = 123; look for 134 = (p, r, s).
    for (Index s = 0; s < n; ++s) {
      if (!rel.contains(p, r, s)) continue;
      for (Triple conclusion : {Triple{p, q, s}, Triple{q, r, s}}) {
        if (missing(conclusion)) {
          report.violations.push_back(
              {BetweennessAxiom::kOuterChain, {t, Triple{p, r, s}}, conclusion});
        }
      }
    }
    // t = 124 = (p, q, s) with s = r; look for 234 = (q, x, s).
    for (Index x = 0; x < n; ++x) {
      if (!rel.contains(q, x, r)) continue;
      for (Triple conclusion : {Triple{p, x, r}, Triple{p, q, x}}) {
        if (missing(conclusion)) {
          report.violations.push_back(
              {BetweennessAxiom::kInnerChain, {t, Triple{q, x, r}}, conclusion});
        }
      }
    }
  }
  return report;
}

/// Betweenness of a strict partial order: b(p,q,r) iff p < q < r.
///
/// `less` lists the pairs (a, b) with a < b. The relation must be irreflexive
/// and transitive; otherwise ParameterError.
inline BetweennessRelation betweenness_from_order(
    std::vector<std::string> elements, const std::vector<std::pair<Index, Index>>& less) {
  const Index n = elements.size();
  std::vector<char> lt(n * n, 0);
  for (auto [a, b] : less) {
    if (a >= n || b >= n) throw ParameterError("order pair outside the element list");
    if (a == b) throw ParameterError("order is not irreflexive at " + elements[a]);
    lt[a * n + b] = 1;
  }
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (!lt[a * n + b]) continue;
      if (lt[b * n + a]) {
        throw ParameterError("order is cyclic between " + elements[a] + " and " + elements[b]);
      }
      for (Index c = 0; c < n; ++c) {
        if (lt[b * n + c] && !lt[a * n + c]) {
          throw ParameterError("order is not transitive: " + elements[a] + " < " + elements[b] +
                               " < " + elements[c]);
        }
      }
    }
  }
  std::vector<Triple> triples;
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q)
      if (lt[p * n + q])
        for (Index r = 0; r < n; ++r)
          if (lt[q * n + r]) triples.push_back({p, q, r});
  return BetweennessRelation(std::move(elements), std::move(triples));
}

/// Relabels a relation along a permutation: triple (p,q,r) becomes
/// (perm[p], perm[q], perm[r]) on the permuted ground.
inline BetweennessRelation permute(const BetweennessRelation& rel, const std::vector<Index>& perm) {
  const Index n = rel.ground_size();
  if (perm.size() != n) throw ParameterError("permutation size mismatch");
  std::vector<std::string> ground(n);
  for (Index i = 0; i < n; ++i) ground[perm[i]] = rel.ground()[i];
  std::vector<Triple> triples;
  triples.reserve(rel.size());
  for (const auto& t : rel.triples()) triples.push_back({perm[t[0]], perm[t[1]], perm[t[2]]});
  return BetweennessRelation(std::move(ground), std::move(triples));
}

/// True when the map sends every triple of `from` to a triple of `to`.
inline bool preserves_betweenness(const std::vector<Index>& map, const BetweennessRelation& from,
                                  const BetweennessRelation& to) {
  if (map.size() != from.ground_size()) throw ParameterError("map is not total on the source");
  for (const auto& t : from.triples()) {
    if (!to.contains(map[t[0]], map[t[1]], map[t[2]])) return false;
  }
  return true;
}

}  // namespace costgeom
