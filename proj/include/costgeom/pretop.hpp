#pragma once

#include <cstdint>
#include <initializer_list>
#include <type_traits>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "costgeom/core.hpp"
#include "costgeom/cost_space.hpp"

namespace costgeom {

using Subset = boost::dynamic_bitset<>;

/// Largest ground set on which subset-wise operations enumerate all 2^n
/// subsets.
inline constexpr Index kMaxExhaustiveGround = 16;

inline Subset make_subset(Index n, std::initializer_list<Index> members) {
  Subset s(n);
  for (Index i : members) s.set(i);
  return s;
}

inline Subset subset_from_mask(Index n, std::uint64_t mask) {
  Subset s(n);
  for (Index i = 0; i < n; ++i)
    if ((mask >> i) & 1U) s.set(i);
  return s;
}

/// A preclosure determined by the closures of singletons:
/// cl(A) = union of step rows over a in A. Axioms (i)-(iii) hold by
/// construction; the diagonal must be set.
class AdditivePreclosure {
 public:
  AdditivePreclosure() = default;

  AdditivePreclosure(std::vector<std::string> ground, std::vector<Subset> rows)
      : ground_(std::move(ground)), rows_(std::move(rows)) {
    const Index n = ground_.size();
    if (rows_.size() != n) throw InputError("step matrix row count differs from ground size");
    for (Index i = 0; i < n; ++i) {
      if (rows_[i].size() != n) throw InputError("step matrix is not square");
      if (!rows_[i].test(i)) {
        throw InputError("step matrix diagonal must be set (A is contained in its closure)");
      }
    }
  }

  static AdditivePreclosure identity(std::vector<std::string> ground) {
    const Index n = ground.size();
    std::vector<Subset> rows(n, Subset(n));
    for (Index i = 0; i < n; ++i) rows[i].set(i);
    return AdditivePreclosure(std::move(ground), std::move(rows));
  }

  const std::vector<std::string>& ground() const { return ground_; }
  Index size() const { return ground_.size(); }
  const Subset& row(Index i) const { return rows_.at(i); }
  const std::vector<Subset>& rows() const { return rows_; }
  bool step(Index i, Index j) const { return rows_.at(i).test(j); }

  Subset closure(const Subset& set) const {
    Subset out(size());
    for (auto i = set.find_first(); i != Subset::npos; i = set.find_next(i)) out |= rows_[i];
    return out;
  }

  friend bool operator==(const AdditivePreclosure&, const AdditivePreclosure&) = default;

 private:
  std::vector<std::string> ground_;
  std::vector<Subset> rows_;
};

/// An arbitrary subset-to-subset rule. Nothing beyond the signature is
/// assumed; check_axioms() reports which preclosure axioms it satisfies.
class GeneralPreclosure {
 public:
  using Rule = std::function<Subset(const Subset&)>;

  GeneralPreclosure(std::vector<std::string> ground, Rule rule, std::string description)
      : ground_(std::move(ground)), rule_(std::move(rule)), description_(std::move(description)) {}

  /// Explicit table indexed by subset bitmask (bit i = ground element i).
  static GeneralPreclosure from_table(std::vector<std::string> ground,
                                      std::vector<std::uint64_t> table) {
    const Index n = ground.size();
    if (n > kMaxExhaustiveGround) throw SizeError("explicit closure tables need |X| <= 16");
    if (table.size() != (std::size_t{1} << n)) {
      throw InputError("closure table must have 2^n entries");
    }
    auto rule = [n, table = std::move(table)](const Subset& s) {
      std::uint64_t mask = 0;
      for (auto i = s.find_first(); i != Subset::npos; i = s.find_next(i)) mask |= std::uint64_t{1} << i;
      return subset_from_mask(n, table[mask]);
    };
    return GeneralPreclosure(std::move(ground), std::move(rule), "table");
  }

  static GeneralPreclosure from_additive(const AdditivePreclosure& pre) {
    return GeneralPreclosure(pre.ground(), [pre](const Subset& s) { return pre.closure(s); },
                             "additive");
  }

  const std::vector<std::string>& ground() const { return ground_; }
  Index size() const { return ground_.size(); }
  const std::string& description() const { return description_; }
  Subset closure(const Subset& set) const { return rule_(set); }

 private:
  std::vector<std::string> ground_;
  Rule rule_;
  std::string description_;
};

template <class P>
inline constexpr bool kIsAdditive = std::is_same_v<P, AdditivePreclosure>;

/// cl_r(A) = {q : c(p,q) <= r for some p in A}.
template <class T>
AdditivePreclosure preclosure_from_cost(const CostSpace<T>& space, const T& radius) {
  if (radius < T(0)) throw ParameterError("radius must be nonnegative");
  const Index n = space.size();
  const double tau = space.tolerance();
  std::vector<Subset> rows(n, Subset(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const auto& c = space(i, j);
      if (i == j || (c.is_finite() && !definitely_greater(c.value(), radius, tau, radius))) {
        rows[i].set(j);
      }
    }
  }
  return AdditivePreclosure(space.labels(), std::move(rows));
}

/// Intersection of cl_r over all r > 0: q is reached from p iff c(p,q) = 0.
/// On a cost space with a positive minimal off-diagonal cost this is the
/// identity operator.
template <class T>
AdditivePreclosure preclosure_from_cost_limit(const CostSpace<T>& space) {
  const Index n = space.size();
  const double tau = space.tolerance();
  std::vector<Subset> rows(n, Subset(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const auto& c = space(i, j);
      if (i == j || (c.is_finite() && !is_positive(c.value(), tau))) rows[i].set(j);
    }
  }
  return AdditivePreclosure(space.labels(), std::move(rows));
}

/// cl{v} = {v} and the out-neighbours of v.
inline AdditivePreclosure preclosure_from_digraph(std::vector<std::string> vertices,
                                                  const std::vector<std::pair<Index, Index>>& edges) {
  const Index n = vertices.size();
  std::vector<Subset> rows(n, Subset(n));
  for (Index i = 0; i < n; ++i) rows[i].set(i);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw InputError("edge endpoint outside the vertex list");
    rows[a].set(b);
  }
  return AdditivePreclosure(std::move(vertices), std::move(rows));
}

/// Connects each x with every other element of cl{x}. Edges are sorted.
inline std::vector<std::pair<Index, Index>> digraph_from_preclosure(const AdditivePreclosure& pre) {
  std::vector<std::pair<Index, Index>> edges;
  for (Index i = 0; i < pre.size(); ++i)
    for (Index j = 0; j < pre.size(); ++j)
      if (i != j && pre.step(i, j)) edges.emplace_back(i, j);
  return edges;
}

struct PreclosureReport {
  bool empty_closed = true;  // (i)   cl(empty) = empty
  bool extensive = true;     // (ii)  A subset of cl(A)
  bool additive = true;      // (iii) cl(A u B) = cl(A) u cl(B)
  bool idempotent = true;    // (iv)  cl(cl(A)) = cl(A)
  bool monotone = true;      // A subset of B implies cl(A) subset of cl(B)
  bool sampled = false;      // true when the ground was too large to enumerate

  bool is_preclosure() const { return empty_closed && extensive && additive; }
  bool is_topology() const { return is_preclosure() && idempotent; }
};

/// Axioms of an additive preclosure: (i)-(iii) hold by construction and (iv)
/// holds iff the step relation is transitive.
inline PreclosureReport check_axioms(const AdditivePreclosure& pre) {
  PreclosureReport report;
  for (Index i = 0; i < pre.size() && report.idempotent; ++i) {
    for (auto j = pre.row(i).find_first(); j != Subset::npos; j = pre.row(i).find_next(j)) {
      if (!pre.row(j).is_subset_of(pre.row(i))) {
        report.idempotent = false;
        break;
      }
    }
  }
  return report;
}

namespace detail {

inline void check_subset(const GeneralPreclosure& pre, const Subset& set, PreclosureReport& report) {
  const Index n = pre.size();
  Subset closed = pre.closure(set);
  if (closed.size() != n) throw InputError("closure rule returned a subset of the wrong size");
  if (!set.is_subset_of(closed)) report.extensive = false;
  Subset unions(n);
  for (auto i = set.find_first(); i != Subset::npos; i = set.find_next(i)) {
    Subset single(n);
    single.set(i);
    unions |= pre.closure(single);
  }
  if (set.any() && unions != closed) report.additive = false;
  for (Index x = 0; x < n; ++x) {
    if (set.test(x)) continue;
    Subset bigger = set;
    bigger.set(x);
    if (!closed.is_subset_of(pre.closure(bigger))) report.monotone = false;
  }
  if (pre.closure(closed) != closed) report.idempotent = false;
}

}  // namespace detail

/// Exhaustive axiom scan over all subsets for |X| <= 16. Additivity on a
/// finite ground is checked in the equivalent form cl(A) = union of cl{a}.
/// Larger grounds are checked on `samples` random subsets and flagged.
inline PreclosureReport check_axioms(const GeneralPreclosure& pre, std::size_t samples = 4096,
                                     std::uint64_t seed = 1) {
  PreclosureReport report;
  const Index n = pre.size();
  if (pre.closure(Subset(n)).any()) {
    report.empty_closed = false;
    report.additive = false;
  }
  if (n <= kMaxExhaustiveGround) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      detail::check_subset(pre, subset_from_mask(n, mask), report);
    }
    return report;
  }
  report.sampled = true;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t k = 0; k < samples; ++k) {
    Subset s(n);
    for (Index i = 0; i < n; ++i)
      if (coin(rng)) s.set(i);
    detail::check_subset(pre, s, report);
  }
  return report;
}

/// Image of a subset under a label map into a ground of size m.
inline Subset image(const std::vector<Index>& map, const Subset& set, Index m) {
  Subset out(m);
  for (auto i = set.find_first(); i != Subset::npos; i = set.find_next(i)) out.set(map.at(i));
  return out;
}

/// f(cl B) is contained in cl f(B) for every B. With two additive operators
/// singletons suffice; otherwise every subset of the domain is checked.
template <class PX, class PZ>
bool is_continuous(const std::vector<Index>& map, const PX& pre_x, const PZ& pre_z) {
  const Index n = pre_x.size();
  const Index m = pre_z.size();
  if (map.size() != n) throw ParameterError("map is not total on the domain");
  for (Index x : map)
    if (x >= m) throw ParameterError("map leaves the codomain");
  if constexpr (kIsAdditive<PX> && kIsAdditive<PZ>) {
    for (Index x = 0; x < n; ++x) {
      if (!image(map, pre_x.row(x), m).is_subset_of(pre_z.row(map[x]))) return false;
    }
    return true;
  } else {
    if (n > kMaxExhaustiveGround) throw SizeError("continuity of a general preclosure needs |X| <= 16");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      Subset b = subset_from_mask(n, mask);
      if (!image(map, pre_x.closure(b), m).is_subset_of(pre_z.closure(image(map, b, m)))) {
        return false;
      }
    }
    return true;
  }
}

enum class Fineness { kEqual, kFiner, kCoarser, kIncomparable };

inline std::string to_string(Fineness f) {
  switch (f) {
    case Fineness::kEqual: return "equal";
    case Fineness::kFiner: return "finer";
    case Fineness::kCoarser: return "coarser";
    case Fineness::kIncomparable: return "incomparable";
  }
  return "?";
}

/// pre1 is finer than pre2 when cl1(A) is contained in cl2(A) for all A.
template <class P1, class P2>
Fineness compare(const P1& pre1, const P2& pre2) {
  if (pre1.ground() != pre2.ground()) throw ParameterError("preclosures live on different grounds");
  const Index n = pre1.size();
  bool finer = true;
  bool coarser = true;
  auto visit = [&](const Subset& a, const Subset& b) {
    if (!a.is_subset_of(b)) finer = false;
    if (!b.is_subset_of(a)) coarser = false;
  };
  if constexpr (kIsAdditive<P1> && kIsAdditive<P2>) {
    for (Index i = 0; i < n; ++i) visit(pre1.row(i), pre2.row(i));
  } else {
    if (n > kMaxExhaustiveGround) throw SizeError("comparing general preclosures needs |X| <= 16");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      Subset s = subset_from_mask(n, mask);
      visit(pre1.closure(s), pre2.closure(s));
    }
  }
  if (finer && coarser) return Fineness::kEqual;
  if (finer) return Fineness::kFiner;
  if (coarser) return Fineness::kCoarser;
  return Fineness::kIncomparable;
}

inline std::vector<std::string> product_ground(const std::vector<std::string>& a,
                                               const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(product_label(x, y));
  return out;
}

/// cl(B) = cl1(pi1 B) x cl2(pi2 B) for every subset B. Agrees with the
/// additive product on singletons and rectangles, and is not additive on
/// other unions.
inline GeneralPreclosure product_rectangle(const AdditivePreclosure& first,
                                           const AdditivePreclosure& second) {
  const Index n1 = first.size();
  const Index n2 = second.size();
  auto rule = [first, second, n1, n2](const Subset& b) {
    ProductIndex at{n2};
    Subset p1(n1), p2(n2);
    for (auto k = b.find_first(); k != Subset::npos; k = b.find_next(k)) {
      p1.set(at.first(k));
      p2.set(at.second(k));
    }
    Subset c1 = first.closure(p1);
    Subset c2 = second.closure(p2);
    Subset out(n1 * n2);
    for (auto i = c1.find_first(); i != Subset::npos; i = c1.find_next(i))
      for (auto j = c2.find_first(); j != Subset::npos; j = c2.find_next(j)) out.set(at(i, j));
    return out;
  };
  return GeneralPreclosure(product_ground(first.ground(), second.ground()), std::move(rule),
                           "rectangle-product");
}

/// Additive product: cl{(x,y)} = cl{x} x cl{y}, extended by unions.
inline AdditivePreclosure product_additive(const AdditivePreclosure& first,
                                           const AdditivePreclosure& second) {
  const Index n1 = first.size();
  const Index n2 = second.size();
  ProductIndex at{n2};
  std::vector<Subset> rows(n1 * n2, Subset(n1 * n2));
  for (Index x = 0; x < n1; ++x) {
    for (Index y = 0; y < n2; ++y) {
      Subset& row = rows[at(x, y)];
      for (auto i = first.row(x).find_first(); i != Subset::npos; i = first.row(x).find_next(i))
        for (auto j = second.row(y).find_first(); j != Subset::npos; j = second.row(y).find_next(j))
          row.set(at(i, j));
    }
  }
  return AdditivePreclosure(product_ground(first.ground(), second.ground()), std::move(rows));
}

/// Projection of the product ground of sizes n1 x n2 onto a factor.
inline std::vector<Index> projection(Index n1, Index n2, int factor) {
  ProductIndex at{n2};
  std::vector<Index> map(n1 * n2);
  for (Index k = 0; k < n1 * n2; ++k) map[k] = factor == 1 ? at.first(k) : at.second(k);
  return map;
}

/// Points that carry a nonconstant loop: a continuous map from a discretized
/// interval (one-step radius) is a walk in the step graph, so a nonconstant
/// loop at p exists iff p lies on a directed cycle through another point.
inline std::vector<Index> loop_points(const AdditivePreclosure& pre) {
  const Index n = pre.size();
  // reach = transitive closure of the step relation
  std::vector<Subset> reach = pre.rows();
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i)
      if (reach[i].test(k)) reach[i] |= reach[k];
  std::vector<Index> out;
  for (Index p = 0; p < n; ++p) {
    for (Index q = 0; q < n; ++q) {
      if (q != p && reach[p].test(q) && reach[q].test(p)) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

}  // namespace costgeom
