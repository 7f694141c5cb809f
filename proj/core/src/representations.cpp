#include "braidforge/representations.hpp"

#include <cmath>

#include "braidforge/errors.hpp"

namespace braidforge {

const char* to_string(RepKind kind) {
  switch (kind) {
    case RepKind::QubitZ: return "qubit-z";
    case RepKind::QubitX: return "qubit-x";
    case RepKind::TemperleyLieb: return "temperley-lieb";
  }
  return "?";
}

void RepContext::validate() const {
  if (k < 1) throw DimensionError("representation needs k >= 1");
  if (d != 2) throw UnsupportedError("only qubit (d=2) realizations are available");
  if (kind == RepKind::TemperleyLieb && (Q == 0.0 || !std::isfinite(Q)))
    throw DimensionError("Temperley-Lieb deformation Q must be finite and nonzero");
}

DenseOperator swap_op(int i, int j, int n, int d) {
  if (i < 1 || j > n || i >= j)
    throw DimensionError("swap_op needs 1 <= i < j <= n, got i=" + std::to_string(i) +
                         " j=" + std::to_string(j) + " n=" + std::to_string(n));
  Eigen::Index dim = 1;
  for (int s = 0; s < n; ++s) dim *= d;
  Matrix m = Matrix::Zero(dim, dim);
  std::vector<int> digits(n);
  for (Eigen::Index b = 0; b < dim; ++b) {
    Eigen::Index r = b;
    for (int s = n - 1; s >= 0; --s) {
      digits[s] = static_cast<int>(r % d);
      r /= d;
    }
    std::swap(digits[i - 1], digits[j - 1]);
    Eigen::Index c = 0;
    for (int s = 0; s < n; ++s) c = c * d + digits[s];
    m(c, b) = 1.0;
  }
  return DenseOperator(std::move(m), SiteLayout{d, n});
}

DenseOperator tl_generator(int i, int n, double Q) {
  if (i < 1 || i + 1 > n) throw DimensionError("e_i needs 1 <= i < n");
  Matrix e = Matrix::Zero(4, 4);
  e(1, 1) = Q;
  e(1, 2) = -1.0;
  e(2, 1) = -1.0;
  e(2, 2) = 1.0 / Q;
  return embed_at(DenseOperator(e, SiteLayout{2, 2}), i, n);
}

namespace {

DenseOperator site_product(int n, std::initializer_list<std::pair<int, Matrix>> ops) {
  std::vector<Matrix> f(n, Matrix::Identity(2, 2));
  for (const auto& [site, m] : ops) f[site - 1] = m;
  return kron_all(f);
}

void check_index(int i, int lo, int hi, const char* what) {
  if (i < lo || i > hi)
    throw DiagramError(std::string(what) + " index " + std::to_string(i) + " outside " +
                       std::to_string(lo) + ".." + std::to_string(hi));
}

}  // namespace

DenseOperator qubit_token(const GeneratorToken& t, const RepContext& ctx) {
  using K = GeneratorToken::Kind;
  const int n = ctx.k;
  const bool zform = ctx.kind == RepKind::QubitZ;
  const Matrix single = zform ? pauli_z() : pauli_x();
  const Matrix pair = zform ? pauli_x() : pauli_z();
  auto id = DenseOperator::identity(2, n);
  switch (t.kind) {
    case K::P:
      check_index(t.i, 1, n, "p");
      return (id + site_product(n, {{t.i, single}})).scaled(0.5);
    case K::PPair:
      check_index(t.i, 1, n, "p_pair");
      check_index(t.j, t.i + 1, n, "p_pair");
      return id + site_product(n, {{t.i, pair}, {t.j, pair}});
    case K::S:
      check_index(t.i, 1, n - 1, "s");
      return swap_op(t.i, t.i + 1, n);
    case K::E:
      throw UnsupportedError("e_i is not available in the qubit representation");
  }
  throw UnsupportedError("unknown token");
}

DenseOperator tl_token(const GeneratorToken& t, const RepContext& ctx) {
  using K = GeneratorToken::Kind;
  const int n = ctx.sites();
  switch (t.kind) {
    case K::P:
      check_index(t.i, 1, ctx.k, "p");
      return tl_generator(2 * t.i - 1, n, ctx.Q);
    case K::PPair:
      check_index(t.i, 1, ctx.k - 1, "p_pair");
      if (t.j != t.i + 1)
        throw UnsupportedError("Temperley-Lieb realization defines p_{i,j} only for j = i+1");
      return tl_generator(2 * t.i, n, ctx.Q);
    case K::S:
      check_index(t.i, 1, ctx.k - 1, "s");
      return swap_op(2 * t.i - 1, 2 * t.i + 1, n) * swap_op(2 * t.i, 2 * t.i + 2, n);
    case K::E:
      check_index(t.i, 1, n - 1, "e");
      return tl_generator(t.i, n, ctx.Q);
  }
  throw UnsupportedError("unknown token");
}

namespace {

template <class TokenFn>
DenseOperator evaluate(const GeneratorWord& word, const RepContext& ctx, TokenFn token) {
  ctx.validate();
  const int n = ctx.sites();
  DenseOperator sum(Matrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n), SiteLayout{2, n});
  for (const auto& term : word.terms) {
    if (!std::isfinite(term.coeff.real()) || !std::isfinite(term.coeff.imag()))
      throw DimensionError("non-finite coefficient in word");
    DenseOperator prod = DenseOperator::identity(2, n);
    for (const auto& f : term.factors) prod = prod * token(f, ctx);
    sum.m += term.coeff * prod.m;
  }
  return sum;
}

}  // namespace

DenseOperator qubit_rep(const GeneratorWord& word, const RepContext& ctx) {
  if (ctx.kind == RepKind::TemperleyLieb) throw UnsupportedError("qubit_rep needs a qubit context");
  return evaluate(word, ctx, qubit_token);
}

DenseOperator tl_rep(const GeneratorWord& word, const RepContext& ctx) {
  if (ctx.kind != RepKind::TemperleyLieb) throw UnsupportedError("tl_rep needs a TL context");
  return evaluate(word, ctx, tl_token);
}

DenseOperator represent(const GeneratorWord& word, const RepContext& ctx) {
  return ctx.kind == RepKind::TemperleyLieb ? tl_rep(word, ctx) : qubit_rep(word, ctx);
}

DenseOperator represent(const TokenProduct& factors, const RepContext& ctx) {
  return represent(GeneratorWord::product(factors), ctx);
}

namespace {

void run_catalog(VerificationReport& rep, const RepContext& ctx, bool general_pairs,
                 double pair_norm, double point_norm, double tol,
                 Expect (*expectation)(const std::string&)) {
  for (const auto& fam : relation_catalog(ctx.k, general_pairs)) {
    auto& rec = rep.check(fam.id, fam.description, expectation(fam.id));
    for (const auto& in : fam.instances) {
      auto lhs = represent(in.lhs, ctx);
      double scale = in.scale == Scale::PairNorm ? pair_norm
                     : in.scale == Scale::PointNorm ? point_norm
                                                    : 1.0;
      auto rhs = represent(in.rhs, ctx).scaled(scale);
      auto cmp = approx_eq(lhs, rhs, tol);
      rec.record(cmp.pass, cmp.residual, in.label);
    }
  }
}

}  // namespace

VerificationReport verify_qubit_relations(int k, RepKind kind, double tol) {
  if (k < 3) throw DimensionError("relation suite needs k >= 3");
  if (kind == RepKind::TemperleyLieb) throw UnsupportedError("use verify_tl_relations");
  RepContext ctx{kind, k};
  VerificationReport rep;
  rep.suite = std::string(to_string(kind)) + " k=" + std::to_string(k);
  run_catalog(rep, ctx, true, 2.0, 1.0, tol, [](const std::string&) { return Expect::Hold; });

  // the undeformed squaring must not hold
  auto& rec = rep.check("ppair-undeformed", "p_{i,i+1}^2 = p_{i,i+1} (undeformed)", Expect::Fail);
  for (int i = 1; i < k; ++i) {
    auto p = qubit_token(GeneratorToken::ppair(i, i + 1), ctx);
    auto cmp = approx_eq(p * p, p, tol);
    rec.record(cmp.pass, cmp.residual, std::to_string(i));
  }
  return rep;
}

VerificationReport verify_tl_relations(int k, double Q, double tol) {
  if (k < 3) throw DimensionError("relation suite needs k >= 3");
  RepContext ctx{RepKind::TemperleyLieb, k, Q};
  ctx.validate();
  VerificationReport rep;
  rep.suite = "temperley-lieb k=" + std::to_string(k) + " Q=" + std::to_string(Q);
  run_catalog(rep, ctx, false, ctx.delta(), ctx.delta(), tol, [](const std::string& id) {
    if (id == "s-absorb-ppair") return Expect::Fail;
    if (id == "s-conj-ppair" || id == "s-commute-ppair" || id == "ppair-conj-shift")
      return Expect::Any;
    return Expect::Hold;
  });
  return rep;
}

}  // namespace braidforge
