#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace costgeom;

namespace {

GroupWord random_word(std::mt19937_64& rng, Index n, std::size_t length) {
  std::uniform_int_distribution<Index> pick(0, n - 1);
  std::bernoulli_distribution flip(0.5);
  GroupWord w;
  while (w.size() < length) {
    Index s = pick(rng), t = pick(rng);
    if (s == t) continue;
    w.letters.push_back({{s, t}, flip(rng) ? 1 : -1});
  }
  return w;
}

/// Applies substitutions and cancellations at random positions until none
/// applies.
GroupWord rewrite_randomly(GroupWord w, const RewriteStructure& s, std::mt19937_64& rng) {
  for (;;) {
    std::vector<std::pair<int, std::size_t>> moves;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!s.is_base(w.letters[i].gen)) moves.push_back({0, i});
      if (i + 1 < w.size() && w.letters[i] == w.letters[i + 1].inverse()) moves.push_back({1, i});
    }
    if (moves.empty()) return w;
    auto [kind, pos] = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
    bool changed = kind == 0 ? substitute_at(w, pos, s) : cancel_at(w, pos);
    EXPECT_TRUE(changed);
  }
}

}  // namespace

TEST(FreeReduce, Basics) {
  auto w = make_letter(0, 1) * make_letter(0, 1, -1);
  EXPECT_TRUE(free_reduce(w).empty());
  auto r = make_letter(0, 1) * make_letter(1, 2) * make_letter(0, 1);
  EXPECT_EQ(free_reduce(r), r);
  EXPECT_THROW(make_letter(1, 1), ParameterError);
}

TEST(FreeReduce, MatchesNaiveOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    // small ground so cancellations are frequent
    auto w = random_word(rng, 3, 40);
    EXPECT_EQ(free_reduce(w), oracle::naive_reduce(w));
  }
}

TEST(Relator, Shape) {
  auto r = relator(0, 1, 2);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r.letters[0], (Letter{{0, 2}, 1}));
  EXPECT_EQ(r.letters[1], (Letter{{1, 2}, -1}));
  EXPECT_EQ(r.letters[2], (Letter{{0, 1}, -1}));
  EXPECT_THROW(relator(0, 0, 1), ParameterError);
}

TEST(Psi, Values) {
  EXPECT_EQ(psi(make_letter(1, 3), 4).coefficients(), (std::vector<long long>{0, -1, 0, 1}));
  EXPECT_TRUE(psi(GroupWord{}, 4).is_zero());
  for (Index p = 0; p < 10; ++p)
    for (Index q = 0; q < 10; ++q)
      for (Index r = 0; r < 10; ++r)
        if (p != q && q != r && p != r) EXPECT_TRUE(psi(relator(p, q, r), 10).is_zero());
}

TEST(Psi, HomomorphismAndOracle) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_word(rng, 6, 12), b = random_word(rng, 6, 9);
    EXPECT_EQ(psi(a * b, 6), psi(a, 6) + psi(b, 6));
    EXPECT_EQ(psi(a, 6).coefficients(), oracle::psi(a, 6));
  }
}

TEST(Psi, Preimage) {
  EXPECT_TRUE(psi_preimage(IntVectorG0::from_coefficients({0, 0, 0})).empty());
  EXPECT_EQ(psi_preimage(IntVectorG0::from_coefficients({0, -1, 0, 1})), make_letter(1, 3));
  EXPECT_THROW(IntVectorG0::from_coefficients({1, 0}), ParameterError);

  std::mt19937_64 rng(41);
  std::uniform_int_distribution<Index> pick(0, 7);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<long long> c(8, 0);
    int moves = std::uniform_int_distribution<int>(0, 10)(rng);
    for (int k = 0; k < moves; ++k) {
      Index s = pick(rng), t = pick(rng);
      --c[s];
      ++c[t];
    }
    auto g = IntVectorG0::from_coefficients(c);
    ASSERT_LE(g.norm(), 20);
    auto w = psi_preimage(g);
    EXPECT_EQ(psi(w, 8), g);
    EXPECT_EQ(static_cast<long long>(w.size()) * 2, g.norm());
  }
}

TEST(CostHom, Values) {
  auto iv = fixtures::interval<Rational>(11);
  EXPECT_EQ(cost_hom(make_letter(2, 7), iv), Rational(1, 2));
  EXPECT_EQ(cost_hom(make_letter(2, 7).inverse(), iv), Rational(-1, 2));
  EXPECT_THROW(cost_hom(make_letter(7, 2), iv), DomainError);
  EXPECT_EQ(cost_hom(relator(1, 4, 9), iv), Rational(0));
}

TEST(CostHom, RelatorsOfBetweenTriplesVanish) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = fixtures::random_space<Rational>(rng, fixtures::random_size(rng, 3, 8));
    auto rel = derive_betweenness(s);
    for (const auto& [p, q, r] : rel.triples()) {
      EXPECT_EQ(cost_hom(relator(p, q, r), s), Rational(0));
    }
    auto a = random_word(rng, s.size(), 10), b = random_word(rng, s.size(), 7);
    EXPECT_EQ(cost_hom(a * b, s), cost_hom(a, s) + cost_hom(b, s));
  }
}

TEST(Induced, RelabelsAndChecksPreservation) {
  auto order = betweenness_from_order({"a", "b", "c"}, {{0, 1}, {0, 2}, {1, 2}});
  auto w = make_letter(0, 2) * make_letter(1, 2, -1);
  // the identity map preserves everything
  EXPECT_EQ(induced_homomorphism(w, {0, 1, 2}, order, order), w);
  // reversing the order does not
  auto rev = betweenness_from_order({"a", "b", "c"}, {{2, 1}, {2, 0}, {1, 0}});
  EXPECT_EQ(induced_homomorphism(w, {0, 1, 2}, order, order), w);
  EXPECT_THROW(induced_homomorphism(w, {0, 2, 1}, order, order), ParameterError);
  EXPECT_EQ(induced_homomorphism(w, {2, 1, 0}, order, rev), make_letter(2, 0) * make_letter(1, 0, -1));
}

TEST(Rewrite, CycleExpansions) {
  for (Index n = 2; n <= 10; ++n) {
    auto s = RewriteStructure::cycle(n);
    for (Index k = 0; k < n; ++k)
      for (Index d = 1; d < n; ++d) {
        auto w = rewrite_to_base(make_letter(k, (k + d) % n), s);
        ASSERT_EQ(w.size(), d);
        for (Index j = 0; j < d; ++j) EXPECT_EQ(w.letters[j], (Letter{{(k + j) % n, (k + j + 1) % n}, 1}));
      }
    auto rel = s.betweenness();
    for (const auto& [p, q, r] : rel.triples()) EXPECT_TRUE(rewrite_to_base(relator(p, q, r), s).empty());
    if (n >= 3) EXPECT_GT(rel.size(), 0u);
  }
  auto c5 = RewriteStructure::cycle(5);
  EXPECT_EQ(rewrite_to_base(make_letter(0, 2), c5), make_letter(0, 1) * make_letter(1, 2));
  EXPECT_TRUE(words_equal(make_letter(0, 2), make_letter(0, 1) * make_letter(1, 2), c5));
  EXPECT_FALSE(words_equal(make_letter(0, 1), make_letter(1, 2), c5));
  EXPECT_THROW(RewriteStructure::cycle(1), StructureError);
}

TEST(Rewrite, CycleBetweennessMatchesCircleCost) {
  // the cyclic cost on n points derives the same betweenness as the structure
  for (Index n = 3; n <= 9; ++n) {
    auto rel = RewriteStructure::cycle(n).betweenness();
    auto cost = derive_betweenness(fixtures::circle<Rational>(n));
    EXPECT_EQ(std::set<Triple>(rel.triples().begin(), rel.triples().end()),
              std::set<Triple>(cost.triples().begin(), cost.triples().end()));
  }
}

TEST(Rewrite, Digraph) {
  auto s = RewriteStructure::digraph({"a", "b", "c"}, {{0, 1}, {1, 2}});
  EXPECT_EQ(rewrite_to_base(make_letter(0, 2), s), make_letter(0, 1) * make_letter(1, 2));
  EXPECT_EQ(rewrite_to_base(make_letter(2, 0), s), make_letter(2, 0));
  EXPECT_TRUE(s.is_base({2, 0}));
  EXPECT_FALSE(s.is_base({0, 2}));
  EXPECT_THROW(RewriteStructure::digraph({"a", "b", "c", "d"}, {{0, 1}, {1, 3}, {0, 2}, {2, 3}}),
               StructureError);
  EXPECT_THROW(RewriteStructure::digraph({"a", "b"}, {{0, 1}, {1, 0}}), StructureError);
  EXPECT_THROW(RewriteStructure::digraph({"a"}, {{0, 0}}), StructureError);
}

TEST(Rewrite, RandomOrdersAreConfluent) {
  std::mt19937_64 rng(47);
  int built = 0;
  while (built < 20) {
    const Index n = fixtures::random_size(rng, 3, 8);
    std::vector<std::pair<Index, Index>> edges;
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (int tries = 0; tries < 20; ++tries) {
      Index a = pick(rng), b = pick(rng);
      if (a == b || std::find(edges.begin(), edges.end(), std::make_pair(a, b)) != edges.end()) continue;
      edges.emplace_back(a, b);
      try {
        RewriteStructure::digraph(fixtures::grid_labels(n, "v"), edges);
      } catch (const StructureError&) {
        edges.pop_back();
      }
    }
    auto s = RewriteStructure::digraph(fixtures::grid_labels(n, "v"), edges);
    ++built;
    for (int w = 0; w < 10; ++w) {
      auto word = random_word(rng, n, 12);
      auto a = rewrite_randomly(word, s, rng);
      auto b = rewrite_randomly(word, s, rng);
      EXPECT_EQ(a, b);
      EXPECT_EQ(a, rewrite_to_base(word, s));
      EXPECT_EQ(psi(a, n), psi(word, n));
    }
    auto rel = s.betweenness();
    for (const auto& [p, q, r] : rel.triples()) {
      EXPECT_TRUE(rewrite_to_base(relator(p, q, r), s).empty());
    }
  }
}

TEST(Rewrite, CostHomInvariantOnCycle) {
  std::mt19937_64 rng(53);
  for (Index n = 3; n <= 8; ++n) {
    auto s = RewriteStructure::cycle(n);
    auto cost = fixtures::circle<Rational>(n);
    for (int t = 0; t < 10; ++t) {
      auto w = random_word(rng, n, 10);
      EXPECT_EQ(cost_hom(rewrite_to_base(w, s), cost), cost_hom(w, cost));
      // conjugating by a relator does not change the element
      auto rel = s.betweenness();
      if (rel.size() == 0) continue;
      const auto& tr = rel.triples()[t % rel.size()];
      auto r = relator(tr[0], tr[1], tr[2]);
      EXPECT_TRUE(words_equal(w * r * w.inverse() * w, w, s));
    }
  }
}
