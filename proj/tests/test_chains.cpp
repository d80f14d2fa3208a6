#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace costgeom;

TEST(Chains, DiagramChainIsChronodesicNotTachistic) {
  auto s = fixtures::diagram14<Rational>();
  Chain c{{0, 1, 2, 3}};
  EXPECT_EQ(chain_length(s, c), Rational(3));
  EXPECT_TRUE(is_chronodesic_tight(s, c));
  EXPECT_FALSE(is_tachistic(s, c));
}

TEST(Chains, DiagramClosureValues) {
  auto s = fixtures::diagram14<Rational>();
  EXPECT_EQ(s(0, 2), Extended<Rational>(2));
  EXPECT_EQ(s(1, 3), Extended<Rational>(2));
  EXPECT_EQ(s(0, 3), Extended<Rational>(1));
  EXPECT_EQ(s(2, 0), Extended<Rational>(11));
  // brute force over simple chains of the raw weights
  auto inf = Extended<Rational>::infinity();
  fixtures::Matrix<Rational> w = {{0, 1, inf, 1}, {10, 0, 1, inf}, {inf, 10, 0, 1}, {10, inf, 10, 0}};
  for (Index p = 0; p < 4; ++p)
    for (Index q = 0; q < 4; ++q) {
      if (p == q) continue;
      Extended<Rational> best = inf;
      std::vector<Index> others;
      for (Index x = 0; x < 4; ++x)
        if (x != p && x != q) others.push_back(x);
      // direct, one stop, two stops
      best = min(best, w[p][q]);
      for (Index a : others) best = min(best, w[p][a] + w[a][q]);
      for (Index a : others)
        for (Index b : others)
          if (a != b) best = min(best, w[p][a] + w[a][b] + w[b][q]);
      EXPECT_EQ(s(p, q), best);
    }
}

TEST(Chains, SingleEdge) {
  auto s = fixtures::cycle3<Rational>();
  Chain c{{0, 2}};
  EXPECT_EQ(chain_length(s, c), Rational(2));
  EXPECT_TRUE(is_tachistic(s, c));
  EXPECT_TRUE(is_chronodesic_tight(s, c));
  Chain bad{{0, 1, 0}};
  EXPECT_FALSE(is_chronodesic_tight(s, bad));
}

TEST(Chains, InfiniteEdge) {
  auto s = fixtures::interval<Rational>(4);
  EXPECT_THROW(chain_length(s, Chain{{2, 1}}), DomainError);
  EXPECT_FALSE(is_chronodesic_tight(s, Chain{{2, 1}}));
  EXPECT_TRUE(is_tachistic(s, Chain{{0, 1, 2, 3}}));
}

TEST(Chains, ClosureProperties) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    auto w = fixtures::random_weights<Rational>(rng, fixtures::random_size(rng, 2, 8), 0, 20, 0.3);
    auto c = path_cost_closure(w);
    EXPECT_EQ(path_cost_closure(c), c);
    for (Index i = 0; i < w.size(); ++i)
      for (Index j = 0; j < w.size(); ++j) EXPECT_LE(c(i, j), w(i, j));
    auto k = asymptotic_constants(c);
    EXPECT_EQ(k.triangle, Extended<Rational>(0));
  }
  auto valid = fixtures::hyp2<Rational>(6);
  EXPECT_EQ(path_cost_closure(valid), valid);
  EXPECT_THROW(path_cost_closure(fixtures::make<Rational>({"a", "b"}, {{1, 1}, {1, 0}})), InputError);
}

TEST(Chains, EnumerateInterval) {
  auto s = fixtures::interval<Rational>(6);
  auto found = enumerate_tachistic_chains(s, 0, 5, 10);
  auto want = oracle::tachistic_chains(s, 0, 5, 10);
  ASSERT_EQ(found.size(), 16u);  // every increasing subsequence through the 4 inner points
  ASSERT_EQ(want.size(), 16u);
  std::size_t maximal = 0;
  for (const auto& c : found) {
    EXPECT_TRUE(want.count(c.chain.points));
    if (c.maximal) {
      ++maximal;
      EXPECT_EQ(c.chain.points, (std::vector<Index>{0, 1, 2, 3, 4, 5}));
    }
  }
  EXPECT_EQ(maximal, 1u);
  EXPECT_TRUE(std::is_sorted(found.begin(), found.end(),
                             [](const auto& a, const auto& b) { return a.chain < b.chain; }));
}

TEST(Chains, EnumerateDiagram) {
  auto s = fixtures::diagram14<Rational>();
  auto found = enumerate_tachistic_chains(s, 0, 3, 4);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].chain.points, (std::vector<Index>{0, 3}));
  EXPECT_THROW(enumerate_tachistic_chains(s, 1, 1, 3), ParameterError);
  auto iv = fixtures::interval<Rational>(4);
  EXPECT_TRUE(enumerate_tachistic_chains(iv, 3, 0, 5).empty());
}

TEST(Chains, EnumerateMatchesOracle) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = fixtures::random_space<Rational>(rng, fixtures::random_size(rng, 2, 7), 0.15);
    Index p = 0, q = s.size() - 1;
    auto found = enumerate_tachistic_chains(s, p, q, 6);
    auto want = oracle::tachistic_chains(s, p, q, 6);
    std::set<std::vector<Index>> got;
    for (const auto& c : found) {
      got.insert(c.chain.points);
      EXPECT_TRUE(is_chronodesic_tight(s, c.chain));
    }
    EXPECT_EQ(got, want);
  }
}

TEST(Chains, Compose) {
  EXPECT_EQ(compose_chains(Chain{{0, 1}}, Chain{{1, 2}}).points, (std::vector<Index>{0, 1, 2}));
  EXPECT_EQ(compose_chains(Chain{{0, 1}}, Chain{{1}}).points, (std::vector<Index>{0, 1}));
  EXPECT_EQ(compose_chains(Chain{{0}}, Chain{{0, 2}}).points, (std::vector<Index>{0, 2}));
  EXPECT_THROW(compose_chains(Chain{{0, 1}}, Chain{{2, 1}}), ParameterError);

  std::mt19937_64 rng(17);
  auto s = fixtures::random_space<Rational>(rng, 6);
  std::uniform_int_distribution<Index> pick(0, 5);
  for (int trial = 0; trial < 50; ++trial) {
    auto make_chain = [&](Index start) {
      Chain c{{start}};
      for (int k = 0; k < 3; ++k) c.points.push_back(pick(rng));
      c.points.erase(std::unique(c.points.begin(), c.points.end()), c.points.end());
      return c;
    };
    Chain a = make_chain(pick(rng));
    Chain b = make_chain(a.back());
    Chain c = make_chain(b.back());
    EXPECT_EQ(compose_chains(compose_chains(a, b), c), compose_chains(a, compose_chains(b, c)));
    EXPECT_EQ(chain_length(s, compose_chains(a, b)), chain_length(s, a) + chain_length(s, b));
  }
}

TEST(Boundary, SmallCases) {
  auto d = boundary(PathChainSum::single({"a", "b"}));
  EXPECT_EQ(d, (PathChainSum{{{"b"}, 1}, {{"a"}, -1}}));
  auto dd = boundary(boundary(PathChainSum::single({"a", "b", "c"})));
  EXPECT_TRUE(dd.is_zero());
  EXPECT_TRUE(boundary(PathChainSum::single({"a"})).is_zero());
  // repeated vertices are allowed
  auto r = boundary(PathChainSum::single({"a", "b", "a"}));
  EXPECT_EQ(r.coefficient({"b", "a"}), 1);
  EXPECT_EQ(r.coefficient({"a", "a"}), -1);
  EXPECT_EQ(r.coefficient({"a", "b"}), 1);
}

TEST(Boundary, MatchesOracleAndSquaresToZero) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> len(1, 7), vert(0, 3), coef(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    PathChainSum sum;
    oracle::Terms terms;
    for (int t = 0; t < 5; ++t) {
      PathChainSum::Path p;
      int k = len(rng);
      for (int i = 0; i < k; ++i) p.push_back(std::string(1, char('a' + vert(rng))));
      int c = coef(rng);
      sum.add(p, c);
      terms.push_back({p, c});
    }
    auto d = boundary(sum);
    std::map<PathChainSum::Path, long long> merged;
    for (const auto& [p, c] : terms) merged[p] += c;
    for (auto it = merged.begin(); it != merged.end();) it = it->second == 0 ? merged.erase(it) : std::next(it);
    EXPECT_EQ(d.terms(), oracle::boundary(oracle::to_terms(merged)));
    EXPECT_TRUE(boundary(d).is_zero());
    EXPECT_TRUE(oracle::boundary(oracle::to_terms(oracle::boundary(terms))).empty());
  }
}
