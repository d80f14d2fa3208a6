#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "costgeom/betweenness.hpp"
#include "costgeom/cost_space.hpp"

namespace costgeom {

/// The pair symbol X_{source,target}, source != target.
struct Generator {
  Index source;
  Index target;

  friend bool operator==(const Generator&, const Generator&) = default;
  friend auto operator<=>(const Generator&, const Generator&) = default;
};

struct Letter {
  Generator gen;
  int exp = 1;  // +1 or -1

  Letter inverse() const { return {gen, -exp}; }
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// A word in the free group on the pair symbols. Not necessarily reduced;
/// free_reduce() gives the canonical form.
struct GroupWord {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  GroupWord inverse() const {
    GroupWord out;
    out.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.letters.push_back(it->inverse());
    return out;
  }

  friend GroupWord operator*(GroupWord a, const GroupWord& b) {
    a.letters.insert(a.letters.end(), b.letters.begin(), b.letters.end());
    return a;
  }

  friend bool operator==(const GroupWord&, const GroupWord&) = default;
};

inline GroupWord make_letter(Index source, Index target, int exp = 1) {
  if (source == target) throw ParameterError("generator needs distinct endpoints");
  if (exp != 1 && exp != -1) throw ParameterError("letter exponent must be +1 or -1");
  return GroupWord{{Letter{{source, target}, exp}}};
}

/// Cancels adjacent letter/inverse pairs until none remain. Single pass with a
/// stack; the result does not depend on the cancellation order.
inline GroupWord free_reduce(const GroupWord& word) {
  GroupWord out;
  out.letters.reserve(word.letters.size());
  for (const Letter& l : word.letters) {
    if (!out.letters.empty() && out.letters.back() == l.inverse()) {
      out.letters.pop_back();
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

/// X_{p,r} X_{q,r}^{-1} X_{p,q}^{-1}, trivial in the quotient whenever
/// b(p,q,r).
inline GroupWord relator(Index p, Index q, Index r) {
  if (p == q || q == r || p == r) throw ParameterError("relator needs distinct points");
  return GroupWord{{Letter{{p, r}, 1}, Letter{{q, r}, -1}, Letter{{p, q}, -1}}};
}

/// Zero-sum integer vector indexed by label.
class IntVectorG0 {
 public:
  explicit IntVectorG0(Index n = 0) : coeffs_(n, 0) {}

  static IntVectorG0 from_coefficients(std::vector<long long> coeffs) {
    long long sum = std::accumulate(coeffs.begin(), coeffs.end(), 0LL);
    if (sum != 0) throw ParameterError("vector is not in G0: coefficients sum to " + std::to_string(sum));
    IntVectorG0 g;
    g.coeffs_ = std::move(coeffs);
    return g;
  }

  Index size() const { return coeffs_.size(); }
  long long operator[](Index i) const { return coeffs_.at(i); }
  const std::vector<long long>& coefficients() const { return coeffs_; }

  /// sum_s |n_s|
  long long norm() const {
    long long total = 0;
    for (long long c : coeffs_) total += c < 0 ? -c : c;
    return total;
  }
  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](long long c) { return c == 0; });
  }

  /// Adds exp * (delta_target - delta_source).
  void add_generator(const Generator& g, int exp) {
    coeffs_.at(g.target) += exp;
    coeffs_.at(g.source) -= exp;
  }

  friend IntVectorG0 operator+(IntVectorG0 a, const IntVectorG0& b) {
    if (a.size() != b.size()) throw ParameterError("G0 vectors over different grounds");
    for (Index i = 0; i < a.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
  }

  friend bool operator==(const IntVectorG0&, const IntVectorG0&) = default;

 private:
  std::vector<long long> coeffs_;
};

/// psi(X_{s,t}) = delta_t - delta_s, extended as a homomorphism into the
/// zero-sum vectors on a ground of size n.
inline IntVectorG0 psi(const GroupWord& word, Index ground_size) {
  IntVectorG0 out(ground_size);
  for (const Letter& l : word.letters) {
    if (l.gen.source >= ground_size || l.gen.target >= ground_size) {
      throw ParameterError("letter outside the ground set");
    }
    out.add_generator(l.gen, l.exp);
  }
  return out;
}

/// A word w with psi(w) = g, built by induction on N = sum |n_s|: take the
/// least s with n_s < 0 and the least t with n_t > 0, solve for
/// g + delta_s - delta_t, then append X_{s,t}. The word has N/2 letters.
inline GroupWord psi_preimage(const IntVectorG0& g) {
  std::vector<long long> rest = g.coefficients();
  if (std::accumulate(rest.begin(), rest.end(), 0LL) != 0) {
    throw ParameterError("vector is not in G0");
  }
  std::vector<Letter> chosen;
  for (;;) {
    auto s = std::find_if(rest.begin(), rest.end(), [](long long c) { return c < 0; });
    auto t = std::find_if(rest.begin(), rest.end(), [](long long c) { return c > 0; });
    if (s == rest.end() || t == rest.end()) break;
    Index si = static_cast<Index>(s - rest.begin());
    Index ti = static_cast<Index>(t - rest.begin());
    chosen.push_back({{si, ti}, 1});
    ++rest[si];
    --rest[ti];
  }
  // The first choice is the outermost induction step, so it comes last.
  std::reverse(chosen.begin(), chosen.end());
  return GroupWord{std::move(chosen)};
}

/// sum over letters of exp * c(source, target). Every letter must have finite
/// cost; the homomorphism lives on the subgroup of finite-cost generators.
template <class T>
T cost_hom(const GroupWord& word, const CostSpace<T>& space) {
  T total(0);
  for (const Letter& l : word.letters) {
    if (l.gen.source >= space.size() || l.gen.target >= space.size()) {
      throw ParameterError("letter outside the space");
    }
    const auto& c = space(l.gen.source, l.gen.target);
    if (c.is_inf()) {
      throw DomainError("letter X_{" + space.label(l.gen.source) + "," +
                        space.label(l.gen.target) + "} has infinite cost");
    }
    if (l.exp > 0) {
      total += c.value();
    } else {
      total -= c.value();
    }
  }
  return total;
}

/// Homomorphism induced by a betweenness-preserving map: each letter is
/// relabeled along the map; a letter whose endpoints collapse maps to the
/// identity. Throws ParameterError if the map does not preserve betweenness.
inline GroupWord induced_homomorphism(const GroupWord& word, const std::vector<Index>& map,
                                      const BetweennessRelation& from,
                                      const BetweennessRelation& to) {
  if (!preserves_betweenness(map, from, to)) {
    throw ParameterError("map does not preserve betweenness");
  }
  GroupWord out;
  for (const Letter& l : word.letters) {
    Index s = map.at(l.gen.source);
    Index t = map.at(l.gen.target);
    if (s != t) out.letters.push_back({{s, t}, l.exp});
  }
  return out;
}

/// A ground set whose quotient group is free on a known base, with an explicit
/// expression of every other generator as a product of base letters.
///
/// Two families are supported:
///  - cycle(n): points w1..wn on a directed cycle; base letters X_{w_k,w_{k+1}}
///    and X_{w_k,w_{k+d}} = product of the d adjacent letters along the cycle.
///  - unique-path digraph: at most one directed path between any two distinct
///    vertices; base letters are the edges and the unreachable pairs, and a
///    reachable non-edge pair expands along its path.
class RewriteStructure {
 public:
  static RewriteStructure cycle(Index n) {
    if (n < 2) throw StructureError("cycle structure needs n >= 2");
    RewriteStructure s;
    s.kind_ = Kind::kCycle;
    for (Index k = 1; k <= n; ++k) s.ground_.push_back("w" + std::to_string(k));
    s.init_tables();
    for (Index k = 0; k < n; ++k) {
      for (Index d = 1; d < n; ++d) {
        Index t = (k + d) % n;
        std::vector<Letter> path;
        for (Index j = 0; j < d; ++j) path.push_back({{(k + j) % n, (k + j + 1) % n}, 1});
        s.set(k, t, d == 1, std::move(path));
      }
    }
    return s;
  }

  /// Vertices are listed explicitly; edges are (from, to) index pairs.
  static RewriteStructure digraph(std::vector<std::string> vertices,
                                  const std::vector<std::pair<Index, Index>>& edges) {
    const Index n = vertices.size();
    RewriteStructure s;
    s.kind_ = Kind::kDigraph;
    s.ground_ = std::move(vertices);
    s.edges_ = edges;
    std::vector<std::vector<Index>> out(n);
    for (auto [a, b] : edges) {
      if (a >= n || b >= n) throw StructureError("edge endpoint outside the vertex list");
      if (a == b) throw StructureError("self-loop at " + s.ground_[a]);
      if (std::find(out[a].begin(), out[a].end(), b) != out[a].end()) {
        throw StructureError("duplicate edge " + s.ground_[a] + " -> " + s.ground_[b]);
      }
      out[a].push_back(b);
    }
    std::sort(s.edges_.begin(), s.edges_.end());
    auto order = topological_order(out, s.ground_);
    // paths[u][v] = number of directed paths u -> v, capped at 2.
    std::vector<std::vector<int>> paths(n, std::vector<int>(n, 0));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      Index u = *it;
      for (Index v : out[u]) {
        paths[u][v] = std::min(2, paths[u][v] + 1);
        for (Index w = 0; w < n; ++w) paths[u][w] = std::min(2, paths[u][w] + paths[v][w]);
      }
    }
    for (Index u = 0; u < n; ++u) {
      for (Index v = 0; v < n; ++v) {
        if (u != v && paths[u][v] > 1) {
          throw StructureError("two distinct paths from " + s.ground_[u] + " to " + s.ground_[v]);
        }
      }
    }
    s.init_tables();
    for (Index u = 0; u < n; ++u) {
      for (Index v = 0; v < n; ++v) {
        if (u == v) continue;
        bool is_edge = std::find(out[u].begin(), out[u].end(), v) != out[u].end();
        if (is_edge || paths[u][v] == 0) {
          s.set(u, v, true, {Letter{{u, v}, 1}});
          continue;
        }
        std::vector<Letter> path;
        Index at = u;
        while (at != v) {
          Index next = n;
          for (Index w : out[at]) {
            if (w == v || paths[w][v] > 0) {
              next = w;
              break;
            }
          }
          path.push_back({{at, next}, 1});
          at = next;
        }
        s.set(u, v, false, std::move(path));
      }
    }
    return s;
  }

  const std::vector<std::string>& ground() const { return ground_; }
  Index size() const { return ground_.size(); }
  bool is_cycle() const { return kind_ == Kind::kCycle; }
  const std::vector<std::pair<Index, Index>>& edges() const { return edges_; }

  bool is_base(const Generator& g) const {
    check(g);
    return base_[g.source * size() + g.target] != 0;
  }

  /// The product of base letters equal to X_g in the quotient.
  const std::vector<Letter>& expansion(const Generator& g) const {
    check(g);
    return expansion_[g.source * size() + g.target];
  }

  /// The betweenness relation whose relators define the quotient: cyclic
  /// order on the cycle, "v lies on the path from u to w" on the digraph.
  BetweennessRelation betweenness() const {
    std::vector<Triple> triples;
    const Index n = size();
    for (Index p = 0; p < n; ++p) {
      for (Index r = 0; r < n; ++r) {
        if (p == r) continue;
        const auto& path = expansion({p, r});
        // Interior points of the expansion path lie between p and r.
        for (std::size_t m = 1; m < path.size(); ++m) triples.push_back({p, path[m].gen.source, r});
      }
    }
    return BetweennessRelation(ground_, std::move(triples));
  }

 private:
  enum class Kind { kCycle, kDigraph };

  static std::vector<Index> topological_order(const std::vector<std::vector<Index>>& out,
                                              const std::vector<std::string>& names) {
    const Index n = out.size();
    std::vector<int> indegree(n, 0);
    for (const auto& row : out)
      for (Index v : row) ++indegree[v];
    std::vector<Index> order;
    std::vector<Index> ready;
    for (Index v = 0; v < n; ++v)
      if (indegree[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
      Index u = ready.back();
      ready.pop_back();
      order.push_back(u);
      for (Index v : out[u])
        if (--indegree[v] == 0) ready.push_back(v);
    }
    if (order.size() != n) {
      Index culprit = 0;
      while (culprit < n && indegree[culprit] == 0) ++culprit;
      throw StructureError("directed cycle through " + names[culprit] +
                           " (more than one path between its vertices)");
    }
    return order;
  }

  void init_tables() {
    const Index n = size();
    base_.assign(n * n, 0);
    expansion_.assign(n * n, {});
  }

  void set(Index s, Index t, bool base, std::vector<Letter> path) {
    base_[s * size() + t] = base ? 1 : 0;
    expansion_[s * size() + t] = std::move(path);
  }

  void check(const Generator& g) const {
    if (g.source >= size() || g.target >= size() || g.source == g.target) {
      throw StructureError("letter is not expressible in this structure");
    }
  }

  Kind kind_ = Kind::kCycle;
  std::vector<std::string> ground_;
  std::vector<std::pair<Index, Index>> edges_;
  std::vector<char> base_;
  std::vector<std::vector<Letter>> expansion_;
};

/// Replaces the letter at `pos` by its base expansion (inverted for exponent
/// -1). Base letters are left alone. Returns whether anything changed.
inline bool substitute_at(GroupWord& word, std::size_t pos, const RewriteStructure& structure) {
  const Letter l = word.letters.at(pos);
  if (structure.is_base(l.gen)) return false;
  GroupWord piece{structure.expansion(l.gen)};
  if (l.exp < 0) piece = piece.inverse();
  word.letters.erase(word.letters.begin() + static_cast<std::ptrdiff_t>(pos));
  word.letters.insert(word.letters.begin() + static_cast<std::ptrdiff_t>(pos), piece.letters.begin(),
                      piece.letters.end());
  return true;
}

/// Cancels letters pos and pos+1 if they are mutually inverse.
inline bool cancel_at(GroupWord& word, std::size_t pos) {
  if (pos + 1 >= word.letters.size()) return false;
  if (word.letters[pos] != word.letters[pos + 1].inverse()) return false;
  word.letters.erase(word.letters.begin() + static_cast<std::ptrdiff_t>(pos),
                     word.letters.begin() + static_cast<std::ptrdiff_t>(pos) + 2);
  return true;
}

/// Normal form in the quotient: substitute every non-base letter, then freely
/// reduce. Since the quotient is free on the base letters, equal elements
/// have equal normal forms.
inline GroupWord rewrite_to_base(const GroupWord& word, const RewriteStructure& structure) {
  GroupWord out;
  for (const Letter& l : word.letters) {
    GroupWord piece{structure.expansion(l.gen)};
    if (l.exp < 0) piece = piece.inverse();
    out.letters.insert(out.letters.end(), piece.letters.begin(), piece.letters.end());
  }
  return free_reduce(out);
}

inline bool words_equal(const GroupWord& a, const GroupWord& b, const RewriteStructure& structure) {
  return rewrite_to_base(a, structure) == rewrite_to_base(b, structure);
}

}  // namespace costgeom
