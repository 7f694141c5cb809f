#include <algorithm>
#include <chrono>
#include <random>

#include <gtest/gtest.h>

#include <braidforge/diagram.hpp>
#include <braidforge/errors.hpp>

using namespace braidforge;
using D = SetPartitionDiagram;

namespace {

int B(int i) { return D::bottom(i, 0); }
int T(int i, int k) { return D::top(i, k); }

D gen(const GeneratorToken& t, int k) { return generator_diagram(t, k); }

std::vector<GeneratorToken> generators(int k) {
  std::vector<GeneratorToken> g;
  for (int i = 1; i <= k; ++i) g.push_back(GeneratorToken::p(i));
  for (int i = 1; i < k; ++i) {
    g.push_back(GeneratorToken::ppair(i, i + 1));
    g.push_back(GeneratorToken::s(i));
  }
  return g;
}

}  // namespace

TEST(Canonicalize, IdentityIsFixed) {
  D id({2, {{B(1), T(1, 2)}, {B(2), T(2, 2)}}});
  EXPECT_EQ(canonicalize(id), D::identity(2));
  EXPECT_EQ(canonicalize(canonicalize(id)), canonicalize(id));
}

TEST(Canonicalize, BlockOrderDoesNotMatter) {
  const int k = 7;
  std::vector<D::Block> blocks = {{B(1), B(3), B(5), T(4, k), T(5, k)},
                                  {B(2), T(3, k)},
                                  {B(4), B(6), B(7), T(6, k)},
                                  {T(1, k), T(2, k)},
                                  {T(7, k)}};
  const D ref = canonicalize(D(k, blocks));
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto shuffled = blocks;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (auto& b : shuffled) std::shuffle(b.begin(), b.end(), rng);
    EXPECT_EQ(canonicalize(D(k, shuffled)), ref);
  }
}

TEST(Canonicalize, RejectsMalformedPartitions) {
  EXPECT_THROW(D(2, {{B(1), T(1, 2)}, {B(1), B(2), T(2, 2)}}), DiagramError);
  EXPECT_THROW(D(2, {{B(1), T(1, 2)}, {B(2)}}), DiagramError);
}

TEST(Compose, PairIsIdempotent) {
  for (int k = 2; k <= 5; ++k)
    for (int i = 1; i < k; ++i) {
      auto p = gen(GeneratorToken::ppair(i, i + 1), k);
      EXPECT_EQ(compose(p, p), p);
    }
}

TEST(Compose, SwapIsInvolution) {
  auto s = gen(GeneratorToken::s(1), 3);
  EXPECT_EQ(compose(s, s), D::identity(3));
}

TEST(Compose, PointPairPoint) {
  const int k = 3;
  auto p1 = gen(GeneratorToken::p(1), k);
  auto pp = gen(GeneratorToken::ppair(1, 2), k);
  EXPECT_EQ(compose(compose(p1, pp), p1), p1);
}

TEST(Compose, MismatchedSizesThrow) {
  EXPECT_THROW(compose(D::identity(2), D::identity(3)), DimensionError);
}

TEST(Compose, AssociativeOnAllGeneratorTriples) {
  for (int k = 2; k <= 4; ++k) {
    auto g = generators(k);
    for (const auto& a : g)
      for (const auto& b : g)
        for (const auto& c : g) {
          auto da = gen(a, k), db = gen(b, k), dc = gen(c, k);
          ASSERT_EQ(compose(compose(da, db), dc), compose(da, compose(db, dc)))
              << a.str() << " " << b.str() << " " << c.str() << " k=" << k;
        }
  }
}

TEST(Compose, AssociativeOnRandomProducts) {
  std::mt19937 rng(11);
  const int k = 4;
  auto g = generators(k);
  auto random_word = [&] {
    TokenProduct w;
    int len = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < len; ++i) w.push_back(g[rng() % g.size()]);
    return evaluate_diagram(w, k);
  };
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_word(), b = random_word(), c = random_word();
    ASSERT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
  }
}

TEST(Compose, IndependentOfInputBlockOrder) {
  const int k = 3;
  D a(k, {{B(1), B(2), T(1, k)}, {B(3)}, {T(2, k), T(3, k)}});
  D a2(k, {{T(3, k), T(2, k)}, {B(3)}, {T(1, k), B(2), B(1)}});
  auto b = gen(GeneratorToken::s(2), k);
  EXPECT_EQ(compose(a, b), compose(a2, b));
  EXPECT_EQ(compose(b, a), compose(b, a2));
}

TEST(GeneratorDiagram, Shapes) {
  EXPECT_EQ(gen(GeneratorToken::p(1), 1), D(1, {{B(1)}, {T(1, 1)}}));
  EXPECT_EQ(gen(GeneratorToken::s(1), 2), canonicalize(D(2, {{B(1), T(2, 2)}, {B(2), T(1, 2)}})));
  EXPECT_EQ(gen(GeneratorToken::ppair(1, 2), 2), D(2, {{B(1), B(2), T(1, 2), T(2, 2)}}));
  EXPECT_THROW(gen(GeneratorToken::e(1), 2), UnsupportedError);
}

TEST(PairGeneral, ConjugationByAdjacentSwap) {
  for (int k = 3; k <= 5; ++k)
    for (int i = 1; i + 2 <= k; ++i) {
      auto lhs = p_pair_general(i, i + 2, k);
      auto rhs = evaluate_diagram(
          {GeneratorToken::s(i + 1), GeneratorToken::ppair(i, i + 1), GeneratorToken::s(i + 1)}, k);
      auto alt = evaluate_diagram(
          {GeneratorToken::s(i), GeneratorToken::ppair(i + 1, i + 2), GeneratorToken::s(i)}, k);
      EXPECT_EQ(lhs, rhs);
      EXPECT_EQ(lhs, alt);
    }
}

TEST(PairGeneral, AdjacentIsTheGenerator) {
  for (int i = 1; i < 4; ++i) EXPECT_EQ(p_pair_general(i, i + 1, 4), gen(GeneratorToken::ppair(i, i + 1), 4));
}

TEST(PairGeneral, Idempotent) {
  auto p = p_pair_general(1, 3, 3);
  EXPECT_EQ(compose(p, p), p);
}

TEST(PairGeneral, MatchesDirectBlockConstruction) {
  for (int k = 2; k <= 5; ++k)
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        std::vector<D::Block> blocks = {{B(i), B(j), T(i, k), T(j, k)}};
        for (int s = 1; s <= k; ++s)
          if (s != i && s != j) blocks.push_back({B(s), T(s, k)});
        EXPECT_EQ(p_pair_general(i, j, k), canonicalize(D(k, blocks))) << i << "," << j << " k=" << k;
      }
  EXPECT_THROW(p_pair_general(2, 2, 3), DiagramError);
  EXPECT_THROW(p_pair_general(1, 4, 3), DiagramError);
}

TEST(DiagramRelations, AllHoldForK3ToK5) {
  for (int k : {3, 4, 5}) {
    auto rep = verify_diagram_relations(k);
    EXPECT_TRUE(rep.pass()) << rep.to_json().dump(1);
    for (const auto& c : rep.checks) {
      // s_i s_j with |i-j| > 1 first exists at k = 4
      if (k > 3 || c.id != "s-commute") EXPECT_GT(c.instances, 0) << c.id << " k=" << k;
      EXPECT_EQ(c.failures, 0) << c.id;
    }
  }
}

TEST(DiagramRelations, K4UnderOneSecond) {
  auto t0 = std::chrono::steady_clock::now();
  auto rep = verify_diagram_relations(4);
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_TRUE(rep.pass());
  EXPECT_LT(s, 1.0);
}

TEST(DiagramRelations, DoubleConjugationMovesPair) {
  auto rep = verify_diagram_relations(4);
  const auto* c = rep.find("s-conj-ppair");
  ASSERT_NE(c, nullptr);
  EXPECT_GT(c->instances, 0);
  EXPECT_EQ(c->failures, 0);
}

TEST(DiagramRelations, BrokenComposeIsCaught) {
  // forgets to connect through the middle row: lower blocks are ignored
  ComposeFn broken = [](const D& upper, const D& lower) {
    const int k = upper.k();
    std::vector<D::Block> blocks;
    for (const auto& b : upper.blocks()) {
      D::Block top;
      for (int v : b)
        if (v >= k) top.push_back(v);
      if (!top.empty()) blocks.push_back(top);
    }
    for (const auto& b : lower.blocks()) {
      D::Block bottom;
      for (int v : b)
        if (v < k) bottom.push_back(v);
      if (!bottom.empty()) blocks.push_back(bottom);
    }
    return canonicalize(D(k, blocks));
  };
  auto rep = verify_diagram_relations(3, broken);
  EXPECT_FALSE(rep.pass());
  const auto* c = rep.find("s-involution");
  ASSERT_NE(c, nullptr);
  EXPECT_GT(c->failures, 0);
}
