#include <gtest/gtest.h>

#include <braidforge/errors.hpp>
#include <braidforge/representations.hpp>

using namespace braidforge;
using G = GeneratorToken;

namespace {

RepContext qz(int k) { return {RepKind::QubitZ, k}; }
RepContext qx(int k) { return {RepKind::QubitX, k}; }
RepContext tl(int k, double Q) { return {RepKind::TemperleyLieb, k, Q}; }

bool is_permutation(const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    int ones = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(r, c) == cplx(1.0)) ++ones;
      else if (m(r, c) != cplx(0.0)) return false;
    }
    if (ones != 1) return false;
  }
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm() == 0.0;
}

}  // namespace

TEST(QubitRep, PointProjector) {
  auto p = qubit_token(G::p(1), qz(1));
  Matrix want = Matrix::Zero(2, 2);
  want(0, 0) = 1;
  EXPECT_EQ(p.m, want);
}

TEST(QubitRep, SwapAndPair) {
  EXPECT_EQ(qubit_token(G::s(1), qz(2)).m, swap_op(1, 2, 2).m);
  auto pp = qubit_token(G::ppair(1, 2), qz(2));
  EXPECT_EQ(pp.m, DenseOperator::from_real({{1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}}).m);
  EXPECT_THROW(qubit_token(G::e(1), qz(2)), UnsupportedError);
}

TEST(QubitRep, ZAndXFormsAreHadamardConjugate) {
  const int k = 3;
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  auto H = kron_all({h, h, h});
  std::vector<G> toks = {G::p(1), G::p(2), G::p(3), G::ppair(1, 2), G::ppair(2, 3), G::ppair(1, 3), G::s(1), G::s(2)};
  for (const auto& t : toks) {
    auto z = qubit_token(t, qz(k)), x = qubit_token(t, qx(k));
    EXPECT_TRUE(approx_eq(H * z * H, x, 1e-14).pass) << t.str();
  }
}

TEST(QubitRep, SwapsArePermutations) {
  for (int k = 2; k <= 4; ++k)
    for (int i = 1; i < k; ++i) {
      EXPECT_TRUE(is_permutation(qubit_token(G::s(i), qz(k)).m));
      EXPECT_TRUE(is_permutation(qubit_token(G::s(i), qx(k)).m));
      EXPECT_TRUE(is_permutation(tl_token(G::s(i), tl(k, 2.0)).m));
    }
}

TEST(SwapOp, LongRangeFromAdjacent) {
  auto s = [](int i, int n) { return qubit_token(G::s(i), qz(n)); };
  EXPECT_EQ(swap_op(1, 2, 2).m, s(1, 2).m);
  EXPECT_EQ(swap_op(1, 3, 3).m, (s(1, 3) * s(2, 3) * s(1, 3)).m);
  EXPECT_EQ(swap_op(1, 4, 4).m, (s(3, 4) * s(2, 4) * s(1, 4) * s(2, 4) * s(3, 4)).m);
  EXPECT_THROW(swap_op(2, 2, 3), DimensionError);
  EXPECT_THROW(swap_op(1, 4, 3), DimensionError);
}

TEST(TlRep, GeneratorAtQOne) {
  auto e = tl_generator(1, 2, 1.0);
  EXPECT_EQ(e.m, DenseOperator::from_real({{0, 0, 0, 0}, {0, 1, -1, 0}, {0, -1, 1, 0}, {0, 0, 0, 0}}).m);
}

TEST(TlRep, DeformedSquaring) {
  for (double Q : {0.5, 1.0, 2.0, -3.0}) {
    auto e = tl_generator(2, 4, Q);
    EXPECT_TRUE(approx_eq(e * e, e.scaled(Q + 1.0 / Q), 1e-12).pass) << Q;
  }
}

TEST(TlRep, SwapExchangesSitePairs) {
  auto s = tl_token(G::s(1), tl(2, 2.0));
  EXPECT_EQ(s.m, (swap_op(1, 3, 4) * swap_op(2, 4, 4)).m);
}

TEST(TlRep, TokenMapAndErrors) {
  auto ctx = tl(3, 2.0);
  EXPECT_EQ(tl_token(G::p(2), ctx).m, tl_generator(3, 6, 2.0).m);
  EXPECT_EQ(tl_token(G::ppair(2, 3), ctx).m, tl_generator(4, 6, 2.0).m);
  EXPECT_THROW(tl_token(G::ppair(1, 3), ctx), UnsupportedError);
  EXPECT_THROW(RepContext(tl(3, 0.0)).validate(), Error);
}

TEST(QubitRelations, K3AndK4Pass) {
  for (int k : {3, 4})
    for (auto kind : {RepKind::QubitZ, RepKind::QubitX}) {
      auto rep = verify_qubit_relations(k, kind);
      EXPECT_TRUE(rep.pass()) << rep.to_json().dump(1);
    }
}

TEST(QubitRelations, PairNormIsDeformed) {
  auto rep = verify_qubit_relations(3);
  const auto* undeformed = rep.find("ppair-undeformed");
  ASSERT_NE(undeformed, nullptr);
  EXPECT_EQ(undeformed->failures, undeformed->instances);
  auto pp = qubit_token(G::ppair(1, 2), qz(3));
  EXPECT_TRUE(approx_eq(pp * pp, pp.scaled(2.0), 1e-14).pass);
  auto p13 = qubit_token(G::ppair(1, 3), qz(3));
  EXPECT_TRUE(approx_eq(p13 * p13, p13.scaled(2.0), 1e-14).pass);
  auto p1 = qubit_token(G::p(1), qz(3));
  EXPECT_TRUE(approx_eq(p1 * p1, p1, 1e-14).pass);
}

TEST(QubitRelations, SwapConjugatesPoint) {
  auto ctx = qz(3);
  auto s1 = qubit_token(G::s(1), ctx);
  EXPECT_TRUE(approx_eq(s1 * qubit_token(G::p(1), ctx) * s1, qubit_token(G::p(2), ctx), 0).pass);
}

TEST(TlRelations, ExpectedPatternAtSeveralQ) {
  for (double Q : {0.5, 1.0, 2.0}) {
    auto rep = verify_tl_relations(3, Q);
    EXPECT_TRUE(rep.pass()) << rep.to_json().dump(1);
    const auto* absorb = rep.find("s-absorb-ppair");
    ASSERT_NE(absorb, nullptr);
    EXPECT_GT(absorb->failures, 0) << "absorption must fail at Q=" << Q;
    for (const char* id : {"p-ppair-p", "ppair-p-ppair", "planar-commute", "s-conj-p"}) {
      const auto* c = rep.find(id);
      ASSERT_NE(c, nullptr) << id;
      EXPECT_EQ(c->failures, 0) << id << " Q=" << Q;
    }
  }
}
