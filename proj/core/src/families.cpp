#include "braidforge/families.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "braidforge/errors.hpp"
#include "braidforge/verifier.hpp"

namespace braidforge {

namespace {

using G = GeneratorToken;
using Terms = std::vector<std::pair<std::string, TokenProduct>>;

struct Shape {
  int k;  // sites of the underlying A_k word
  TokenProduct swap;
  Terms terms;
};

TokenProduct s13() { return {G::s(1), G::s(2), G::s(1)}; }
TokenProduct s14() { return {G::s(3), G::s(2), G::s(1), G::s(2), G::s(3)}; }

Terms point_terms_2() { return {{"alpha", {G::p(1)}}, {"beta", {G::p(2)}}, {"gamma", {G::p(1), G::p(2)}}}; }

const Shape& shape(FamilyId id) {
  static const Shape f2p{2, {G::s(1)}, point_terms_2()};
  static const Shape f2pair{2, {G::s(1)}, {{"alpha", {G::ppair(1, 2)}}}};
  static const Shape f3p{3, s13(),
                         {{"alpha1", {G::p(1)}},
                          {"alpha3", {G::p(3)}},
                          {"beta1", {G::p(1), G::p(2)}},
                          {"beta2", {G::p(2), G::p(3)}},
                          {"beta3", {G::p(1), G::p(3)}},
                          {"gamma", {G::p(1), G::p(2), G::p(3)}}}};
  static const Shape f3pair{3, s13(),
                            {{"alpha", {G::ppair(1, 2)}},
                             {"beta", {G::ppair(2, 3)}},
                             {"gamma", {G::ppair(1, 2), G::ppair(2, 3)}},
                             {"delta", {G::ppair(1, 3)}}}};
  static const Shape f42{4, s13(),
                         {{"alpha1", {G::p(1)}},
                          {"alpha3", {G::p(3)}},
                          {"beta1", {G::p(1), G::p(2)}},
                          {"beta2", {G::p(1), G::p(3)}},
                          {"beta3", {G::p(1), G::p(4)}},
                          {"beta4", {G::p(2), G::p(3)}},
                          {"beta6", {G::p(3), G::p(4)}},
                          {"gamma1", {G::p(1), G::p(2), G::p(3)}},
                          {"gamma2", {G::p(1), G::p(2), G::p(4)}},
                          {"gamma3", {G::p(1), G::p(3), G::p(4)}},
                          {"gamma4", {G::p(2), G::p(3), G::p(4)}},
                          {"delta", {G::p(1), G::p(2), G::p(3), G::p(4)}}}};
  static const Shape f43{4, s14(),
                         {{"alpha1", {G::p(1)}},
                          {"alpha4", {G::p(4)}},
                          {"beta1", {G::p(1), G::p(2)}},
                          {"beta2", {G::p(1), G::p(3)}},
                          {"beta3", {G::p(1), G::p(4)}},
                          {"beta5", {G::p(2), G::p(4)}},
                          {"beta6", {G::p(3), G::p(4)}},
                          {"gamma1", {G::p(1), G::p(2), G::p(3)}},
                          {"gamma2", {G::p(1), G::p(2), G::p(4)}},
                          {"gamma3", {G::p(1), G::p(3), G::p(4)}},
                          {"gamma4", {G::p(2), G::p(3), G::p(4)}},
                          {"delta", {G::p(1), G::p(2), G::p(3), G::p(4)}}}};
  switch (id) {
    case FamilyId::F2P: return f2p;
    case FamilyId::F2Pair: return f2pair;
    case FamilyId::F3P: return f3p;
    case FamilyId::F3Pair: return f3pair;
    case FamilyId::F42: return f42;
    case FamilyId::F43: return f43;
    case FamilyId::FTL4: return f2p;
  }
  throw UnsupportedError("unknown family");
}

using Values = std::map<std::string, cplx>;

cplx get(const Values& v, const std::string& name) {
  auto it = v.find(name);
  if (it == v.end()) throw ConstraintError("missing parameter " + name);
  return it->second;
}

cplx checked_div(cplx num, cplx den, const char* expr) {
  if (std::abs(den) < 1e-14) throw ConstraintError(std::string("vanishing denominator ") + expr);
  return num / den;
}

// same guard, but a zero here means R itself is not invertible
cplx inverse_div(cplx num, cplx den, const char* expr) {
  if (std::abs(den) < 1e-14) throw SingularityError(std::string("R is singular: vanishing ") + expr);
  return num / den;
}

// Quartic-site closure shared by F42 and F43. `a` is the far point parameter
// (alpha3 or alpha4), `b` / `c` the two pair parameters feeding it and `g`
// the free triple.
struct QuarticClosure {
  cplx pair_b, pair_c, triple_b, triple_c, g4, delta;
};

QuarticClosure quartic(cplx a1, cplx a, cplx b, cplx c, cplx g, const char* den_b,
                       const char* den_c, const char* den_bcg) {
  const cplx db = 1.0 + a1 + b;
  const cplx dc = 1.0 + a1 + c;
  const cplx dbcg = 1.0 + a1 + b + c + g;
  QuarticClosure q;
  q.pair_b = -checked_div(b * (1.0 + a), db, den_b);
  q.pair_c = -checked_div(c * (1.0 + a), dc, den_c);
  q.triple_b = -checked_div(b * (a1 + b - a), db, den_b);
  q.triple_c = -checked_div(c * (a1 + c - a), dc, den_c);
  checked_div(1.0, dbcg, den_bcg);
  q.g4 = (1.0 + a) * (b / db - (1.0 + a1) * (b + g) / (dc * dbcg));
  q.delta = -g + (1.0 + a) * (-b * c * (2.0 * a1 + b + c + 2.0) + g * ((1.0 + a1) * (1.0 + a1) - b * c)) /
                     (db * dc * dbcg);
  return q;
}

void fill_dependent(FamilyId id, Values& v) {
  switch (id) {
    case FamilyId::F3P: {
      cplx a1 = get(v, "alpha1"), a3 = get(v, "alpha3"), b1 = get(v, "beta1");
      cplx den = 1.0 + a1 + b1;
      v["beta2"] = -checked_div(b1 * (1.0 + a3), den, "1+alpha1+beta1");
      v["gamma"] = checked_div(b1 * (a3 - a1 - b1), den, "1+alpha1+beta1");
      break;
    }
    case FamilyId::F3Pair:
      v["gamma"] = -(get(v, "alpha") + get(v, "beta")) / 2.0;
      break;
    case FamilyId::F42: {
      auto q = quartic(get(v, "alpha1"), get(v, "alpha3"), get(v, "beta1"), get(v, "beta3"),
                       get(v, "gamma2"), "1+alpha1+beta1", "1+alpha1+beta3",
                       "1+alpha1+beta1+beta3+gamma2");
      v["beta4"] = q.pair_b;
      v["beta6"] = q.pair_c;
      v["gamma1"] = q.triple_b;
      v["gamma3"] = q.triple_c;
      v["gamma4"] = q.g4;
      v["delta"] = q.delta;
      break;
    }
    case FamilyId::F43: {
      auto q = quartic(get(v, "alpha1"), get(v, "alpha4"), get(v, "beta1"), get(v, "beta2"),
                       get(v, "gamma1"), "1+alpha1+beta1", "1+alpha1+beta2",
                       "1+alpha1+beta1+beta2+gamma1");
      v["beta5"] = q.pair_b;
      v["beta6"] = q.pair_c;
      v["gamma2"] = q.triple_b;
      v["gamma3"] = q.triple_c;
      v["gamma4"] = q.g4;
      v["delta"] = q.delta;
      break;
    }
    default:
      break;
  }
}

// closure and closed-inverse denominators, used to keep random points tame
std::vector<cplx> denominators(FamilyId id, const Values& v) {
  auto g = [&](const char* n) { return get(v, n); };
  switch (id) {
    case FamilyId::F2P:
      return {1.0 + g("alpha"), 1.0 + g("beta"), 1.0 + g("alpha") + g("beta") + g("gamma")};
    case FamilyId::F2Pair:
      return {1.0 + 2.0 * g("alpha")};
    case FamilyId::F3P:
      return {1.0 + g("alpha1"), 1.0 + g("alpha3"), 1.0 + g("alpha1") + g("beta1"),
              1.0 + g("alpha3") + g("beta2"), 1.0 + g("alpha1") + g("alpha3") + g("beta3")};
    case FamilyId::F3Pair:
      return {1.0 + 2.0 * g("alpha"), 1.0 + 2.0 * g("beta"), 1.0 + 2.0 * g("delta"),
              2.0 + 4.0 * (g("alpha") + g("beta") + 2.0 * g("alpha") * g("beta"))};
    case FamilyId::F42:
      return {1.0 + g("alpha1") + g("beta1"), 1.0 + g("alpha1") + g("beta3"),
              1.0 + g("alpha1") + g("beta1") + g("beta3") + g("gamma2")};
    case FamilyId::F43:
      return {1.0 + g("alpha1") + g("beta1"), 1.0 + g("alpha1") + g("beta2"),
              1.0 + g("alpha1") + g("beta1") + g("beta2") + g("gamma1")};
    case FamilyId::FTL4:
      return {};
  }
  return {};
}

GeneratorWord swap_times(const Shape& sh, const Values& v, bool swap_left, unsigned swap_power) {
  GeneratorWord body = GeneratorWord::identity();
  for (const auto& [name, factors] : sh.terms) {
    auto it = v.find(name);
    if (it == v.end()) throw ConstraintError("missing parameter " + name);
    body.add(it->second, factors);
  }
  TokenProduct sw;
  for (unsigned r = 0; r < swap_power; ++r) sw.insert(sw.end(), sh.swap.begin(), sh.swap.end());
  auto s = GeneratorWord::product(sw);
  return swap_left ? s * body : body * s;
}

DenseOperator build_unchecked(const ParameterPoint& p, const Values& v, bool swap_left,
                              unsigned swap_power) {
  return represent(swap_times(shape(p.family), v, swap_left, swap_power), family_context(p));
}

cplx cis(double t) { return std::polar(1.0, t); }

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<AnsatzFamily>& list_families() {
  static const std::vector<AnsatzFamily> reg = {
      {FamilyId::F2P, "F2P", 2, 2, 1, {"alpha", "beta", "gamma"}, {},
       {"theta", "varphi", "phi"}, RepKind::QubitZ, true, true,
       "s_i (1 + alpha p_i + beta p_{i+1} + gamma p_i p_{i+1})"},
      {FamilyId::F2Pair, "F2Pair", 2, 2, 1, {"alpha"}, {}, {"theta"}, RepKind::QubitZ, true, true,
       "s_i (1 + alpha p_{i,i+1})"},
      {FamilyId::F3P, "F3P", 2, 3, 2, {"alpha1", "alpha3", "beta1", "beta3"}, {"beta2", "gamma"},
       {"theta1", "theta3", "varphi1", "varphi3"}, RepKind::QubitX, true, true,
       "s_{i,i+2} (1 + point terms on sites i..i+2), alpha2 = 0"},
      {FamilyId::F3Pair, "F3Pair", 2, 3, 2, {"alpha", "beta", "delta"}, {"gamma"},
       {"theta", "varphi", "phi"}, RepKind::QubitZ, true, true,
       "s_{i,i+2} (1 + alpha p_{i,i+1} + beta p_{i+1,i+2} + gamma p p + delta p_{i,i+2})"},
      {FamilyId::F42, "F42", 2, 4, 2, {"alpha1", "alpha3", "beta1", "beta2", "beta3", "gamma2"},
       {"beta4", "beta6", "gamma1", "gamma3", "gamma4", "delta"},
       {"theta1", "theta3", "phi1", "phi2", "phi3", "varphi2"}, RepKind::QubitX, false, false,
       "s_{i,i+2} (1 + point terms on sites i..i+3)"},
      {FamilyId::F43, "F43", 2, 4, 3, {"alpha1", "alpha4", "beta1", "beta2", "beta3", "gamma1"},
       {"beta5", "beta6", "gamma2", "gamma3", "gamma4", "delta"},
       {"theta1", "theta4", "phi1", "phi2", "phi3", "varphi1"}, RepKind::QubitX, false, false,
       "s_{i,i+3} (1 + point terms on sites i..i+3)"},
      {FamilyId::FTL4, "FTL4", 2, 4, 2, {"alpha", "beta", "gamma"}, {}, {"theta", "varphi", "phi"},
       RepKind::TemperleyLieb, false, false,
       "s_{2i-1,2i+1} s_{2i,2i+2} (1 + alpha e_{2i-1} + beta e_{2i+1} + gamma e e)"},
  };
  return reg;
}

const AnsatzFamily& family_info(FamilyId id) {
  for (const auto& f : list_families())
    if (f.id == id) return f;
  throw UnsupportedError("unknown family");
}

const char* to_string(FamilyId id) { return family_info(id).name.c_str(); }

FamilyId parse_family(const std::string& name) {
  for (const auto& f : list_families()) {
    std::string a = f.name, b = name;
    std::transform(a.begin(), a.end(), a.begin(), ::tolower);
    std::transform(b.begin(), b.end(), b.begin(), ::tolower);
    if (a == b) return f.id;
  }
  throw UnsupportedError("unknown family '" + name + "'");
}

cplx ParameterPoint::at(const std::string& name) const { return get(values, name); }

std::vector<cplx> ParameterPoint::free_values() const {
  std::vector<cplx> out;
  for (const auto& n : family_info(family).free_params) out.push_back(at(n));
  return out;
}

ParameterPoint constrain(FamilyId id, const std::vector<cplx>& free, double Q) {
  const auto& info = family_info(id);
  if (free.size() != info.free_params.size())
    throw ConstraintError(info.name + " takes " + std::to_string(info.free_params.size()) +
                          " free parameters, got " + std::to_string(free.size()));
  std::map<std::string, cplx> m;
  for (std::size_t i = 0; i < free.size(); ++i) m[info.free_params[i]] = free[i];
  return constrain(id, m, Q);
}

ParameterPoint constrain(FamilyId id, const std::map<std::string, cplx>& free, double Q) {
  const auto& info = family_info(id);
  ParameterPoint p;
  p.family = id;
  p.Q = Q;
  for (const auto& n : info.free_params) {
    auto it = free.find(n);
    if (it == free.end()) throw ConstraintError(info.name + ": missing free parameter " + n);
    if (!std::isfinite(it->second.real()) || !std::isfinite(it->second.imag()))
      throw ConstraintError(info.name + ": non-finite parameter " + n);
    p.values[n] = it->second;
  }
  for (const auto& [n, v] : free)
    if (std::find(info.free_params.begin(), info.free_params.end(), n) == info.free_params.end())
      throw ConstraintError(info.name + ": '" + n + "' is not a free parameter");
  fill_dependent(id, p.values);
  return p;
}

double closure_residual(const ParameterPoint& p) {
  Values fresh;
  for (const auto& n : family_info(p.family).free_params) fresh[n] = p.at(n);
  fill_dependent(p.family, fresh);
  double worst = 0.0;
  for (const auto& n : family_info(p.family).dependent_params) {
    cplx want = fresh.at(n);
    worst = std::max(worst, std::abs(p.at(n) - want) / std::max(1.0, std::abs(want)));
  }
  return worst;
}

RepContext family_context(const ParameterPoint& p) {
  const auto& info = family_info(p.family);
  RepContext ctx;
  ctx.kind = info.rep_kind;
  ctx.k = shape(p.family).k;
  ctx.Q = p.Q;
  return ctx;
}

GeneratorWord family_word(const ParameterPoint& p) {
  return swap_times(shape(p.family), p.values, true, 1);
}

DenseOperator build(const ParameterPoint& p) {
  double r = closure_residual(p);
  if (r > 1e-12)
    throw ConstraintError(std::string(to_string(p.family)) +
                          ": point violates its constraint closures, residual " + std::to_string(r));
  return represent(family_word(p), family_context(p));
}

DenseOperator closed_inverse(const ParameterPoint& p) {
  const auto& v = p.values;
  auto g = [&](const char* n) { return get(v, n); };
  Values w;
  bool swap_left = false;
  switch (p.family) {
    case FamilyId::F2P: {
      cplx a = g("alpha"), b = g("beta"), c = g("gamma");
      w["alpha"] = -inverse_div(a, 1.0 + a, "1+alpha");
      w["beta"] = -inverse_div(b, 1.0 + b, "1+beta");
      cplx den = (1.0 + a) * (1.0 + b) * (1.0 + a + b + c);
      w["gamma"] = inverse_div(a * b * (2.0 + a + b + c) - c, den, "(1+alpha)(1+beta)(1+alpha+beta+gamma)");
      break;
    }
    case FamilyId::F2Pair: {
      cplx a = g("alpha");
      w["alpha"] = -inverse_div(a, 1.0 + 2.0 * a, "1+2alpha");
      swap_left = true;
      break;
    }
    case FamilyId::F3P: {
      cplx a1 = g("alpha1"), a3 = g("alpha3"), b1 = g("beta1"), b2 = g("beta2"), b3 = g("beta3");
      w["alpha1"] = -inverse_div(a1, 1.0 + a1, "1+alpha1");
      w["alpha3"] = -inverse_div(a3, 1.0 + a3, "1+alpha3");
      w["beta1"] = -inverse_div(b1, (1.0 + a1) * (1.0 + a1 + b1), "(1+alpha1)(1+alpha1+beta1)");
      w["beta2"] = -inverse_div(b2, (1.0 + a3) * (1.0 + a3 + b2), "(1+alpha3)(1+alpha3+beta2)");
      w["beta3"] = inverse_div(a1 * a3 * (2.0 + a1 + a3) - b3 * (1.0 - a1 * a3),
                               (1.0 + a1) * (1.0 + a3) * (1.0 + a1 + a3 + b3),
                               "(1+alpha1)(1+alpha3)(1+alpha1+alpha3+beta3)");
      w["gamma"] = -inverse_div(b1 * (a1 - a3 + b1), (1.0 + a1) * (1.0 + a3) * (1.0 + a1 + b1),
                                "(1+alpha1)(1+alpha3)(1+alpha1+beta1)");
      break;
    }
    case FamilyId::F3Pair: {
      cplx a = g("alpha"), b = g("beta"), d = g("delta");
      w["alpha"] = -inverse_div(a, 1.0 + 2.0 * a, "1+2alpha");
      w["beta"] = -inverse_div(b, 1.0 + 2.0 * b, "1+2beta");
      w["delta"] = -inverse_div(d, 1.0 + 2.0 * d, "1+2delta");
      w["gamma"] = inverse_div(a + b + 4.0 * a * b, 2.0 + 4.0 * (a + b + 2.0 * a * b),
                               "2+4(alpha+beta+2alpha beta)");
      break;
    }
    default:
      throw UnsupportedError(std::string(to_string(p.family)) +
                             " has no closed-form inverse; use DenseOperator::inverse");
  }
  return build_unchecked(p, w, swap_left, 1);
}

// ---------------------------------------------------------------------------

ParameterPoint unitary_from_angles(FamilyId id, const std::vector<double>& t, double Q) {
  const auto& info = family_info(id);
  if (t.size() != info.angles.size())
    throw ConstraintError(info.name + " takes " + std::to_string(info.angles.size()) + " angles");
  switch (id) {
    case FamilyId::F2P:
      return constrain(id, {cis(t[0]) - 1.0, cis(t[1]) - 1.0, cis(t[2]) - cis(t[0]) - cis(t[1]) + 1.0});
    case FamilyId::F2Pair:
      return constrain(id, {0.5 * (cis(t[0]) - 1.0)});
    case FamilyId::F3P:
      return constrain(id, {cis(t[0]) - 1.0, cis(t[1]) - 1.0, cis(t[2]) - cis(t[0]),
                            cis(t[3]) - cis(t[0]) - cis(t[1]) + 1.0});
    case FamilyId::F3Pair:
      return constrain(id, {0.5 * (cis(t[0]) - 1.0), 0.5 * (cis(t[1]) - 1.0), 0.5 * (cis(t[2]) - 1.0)});
    case FamilyId::F42:
      // theta1, theta3, phi1, phi2, phi3, varphi2
      return constrain(id, {cis(t[0]) - 1.0, cis(t[1]) - 1.0, cis(t[2]) - cis(t[0]),
                            cis(t[3]) - cis(t[0]) - cis(t[1]) + 1.0, cis(t[4]) - cis(t[0]),
                            cis(t[5]) - cis(t[2]) - cis(t[4]) + cis(t[0])});
    case FamilyId::F43:
      // theta1, theta4, phi1, phi2, phi3, varphi1
      return constrain(id, {cis(t[0]) - 1.0, cis(t[1]) - 1.0, cis(t[2]) - cis(t[0]),
                            cis(t[3]) - cis(t[0]), cis(t[4]) - cis(t[0]) - cis(t[1]) + 1.0,
                            cis(t[5]) - cis(t[2]) - cis(t[3]) + cis(t[0])});
    case FamilyId::FTL4: {
      const double D = Q + 1.0 / Q;
      return constrain(id, {(cis(t[0]) - 1.0) / D, (cis(t[1]) - 1.0) / D,
                            (cis(t[2]) - cis(t[0]) - cis(t[1]) + 1.0) / (D * D)}, Q);
    }
  }
  throw UnsupportedError("unknown family");
}

ParameterPoint unitary_from_angles(const AnglePoint& a) {
  std::vector<double> t;
  for (const auto& n : family_info(a.family).angles) {
    auto it = a.angles.find(n);
    if (it == a.angles.end()) throw ConstraintError("missing angle " + n);
    t.push_back(it->second);
  }
  return unitary_from_angles(a.family, t, a.Q);
}

std::vector<ParameterPoint> real_unitary_points(FamilyId id, double Q) {
  const std::size_t na = family_info(id).angles.size();
  std::vector<ParameterPoint> out;
  for (unsigned mask = 0; mask < (1u << na); ++mask) {
    std::vector<double> t(na);
    // first angle is the most significant bit
    for (std::size_t a = 0; a < na; ++a) t[a] = ((mask >> (na - 1 - a)) & 1u) ? std::numbers::pi : 0.0;
    auto p = unitary_from_angles(id, t, Q);
    for (auto& [n, v] : p.values) {
      // snap to the real axis: cos(pi) etc. leave 1e-16 imaginary parts
      v = cplx(std::abs(v.real()) < 1e-13 ? 0.0 : v.real(), std::abs(v.imag()) < 1e-13 ? 0.0 : v.imag());
    }
    bool dup = std::any_of(out.begin(), out.end(), [&](const ParameterPoint& q) {
      for (const auto& [n, v] : p.values)
        if (std::abs(v - q.values.at(n)) > 1e-12) return false;
      return true;
    });
    if (!dup) out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Values power_step(FamilyId id, const Values& one, const Values& prev) {
  auto o = [&](const char* n) { return one.at(n); };
  auto q = [&](const char* n) { return prev.at(n); };
  Values v;
  switch (id) {
    case FamilyId::F2P: {
      cplx a1 = o("alpha"), b1 = o("beta"), g1 = o("gamma");
      cplx a = q("alpha"), b = q("beta"), g = q("gamma");
      v["alpha"] = a1 + b + a1 * b;
      v["beta"] = a + b1 + a * b1;
      v["gamma"] = a1 * a + b1 * b + g1 * g + g1 * (1.0 + a + b) + g * (1.0 + a1 + b1);
      break;
    }
    case FamilyId::F2Pair: {
      cplx a1 = o("alpha"), a = q("alpha");
      v["alpha"] = a1 + a + 2.0 * a1 * a;
      break;
    }
    case FamilyId::F3P: {
      cplx A1 = o("alpha1"), A3 = o("alpha3"), B1 = o("beta1"), B2 = o("beta2"), B3 = o("beta3"),
           G1 = o("gamma");
      cplx a1 = q("alpha1"), a3 = q("alpha3"), b1 = q("beta1"), b2 = q("beta2"), b3 = q("beta3"),
           g = q("gamma");
      v["alpha1"] = A1 + a3 + A1 * a3;
      v["alpha3"] = a1 + A3 + a1 * A3;
      v["beta1"] = B1 + b2 + B1 * b2 + A1 * b2 + a3 * B1;
      v["beta2"] = b1 + B2 + b1 * B2 + A3 * b1 + a1 * B2;
      // a1*A1 + a3*A3: both p_1 p_3 cross products
      v["beta3"] = B3 + b3 + B3 * b3 + B3 * (a1 + a3) + b3 * (A1 + A3) + a1 * A1 + a3 * A3;
      v["gamma"] = G1 + g + G1 * g + G1 * (a1 + a3 + b1 + b2 + b3) + g * (A1 + A3 + B1 + B2 + B3) +
                   b1 * (B1 + B3) + b2 * (B2 + B3) + b3 * (B1 + B2) + a1 * B1 + a3 * B2 + A1 * b1 +
                   A3 * b2;
      break;
    }
    case FamilyId::F3Pair: {
      cplx A = o("alpha"), B = o("beta"), G1 = o("gamma"), D = o("delta");
      cplx a = q("alpha"), b = q("beta"), g = q("gamma"), d = q("delta");
      v["alpha"] = A + b + 2.0 * A * b;
      v["beta"] = a + B + 2.0 * a * B;
      v["gamma"] = G1 + g + 4.0 * G1 * g + 2.0 * D * g + 2.0 * G1 * d + d * (A + B) + D * (a + b) +
                   2.0 * g * (A + B) + 2.0 * G1 * (a + b) + A * a + B * b;
      v["delta"] = D + d + 2.0 * D * d;
      break;
    }
    default:
      throw UnsupportedError(std::string(to_string(id)) + " has no power recursion");
  }
  return v;
}

}  // namespace

PowerPoint power_params(const ParameterPoint& p, unsigned n) {
  if (n < 1) throw ConstraintError("power_params needs n >= 1");
  if (!family_info(p.family).has_power_recursion)
    throw UnsupportedError(std::string(to_string(p.family)) + " has no power recursion");
  Values cur = p.values;
  for (unsigned k = 2; k <= n; ++k) cur = power_step(p.family, p.values, cur);
  PowerPoint out;
  out.params = p;
  out.params.values = cur;
  out.n = n;
  return out;
}

DenseOperator rebuild_power(const PowerPoint& pp) {
  return build_unchecked(pp.params, pp.params.values, true, pp.n % 2);
}

ParameterPoint random_point(FamilyId id, std::mt19937_64& rng, double Q) {
  std::normal_distribution<double> nd(0.0, 0.6);
  const auto& info = family_info(id);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<cplx> free;
    for (std::size_t i = 0; i < info.free_params.size(); ++i) free.emplace_back(nd(rng), nd(rng));
    try {
      auto p = constrain(id, free, Q);
      auto dens = denominators(id, p.values);
      if (std::all_of(dens.begin(), dens.end(), [](cplx d) { return std::abs(d) > 0.3; })) return p;
    } catch (const ConstraintError&) {
    }
  }
  throw NumericalError("random_point: could not find a well-conditioned point");
}

nlohmann::json to_json(const ParameterPoint& p) {
  nlohmann::json j;
  j["family"] = to_string(p.family);
  auto& params = j["params"] = nlohmann::json::object();
  for (const auto& [n, v] : p.values) params[n] = {v.real(), v.imag()};
  if (p.family == FamilyId::FTL4) j["Q"] = p.Q;
  return j;
}

ParameterPoint point_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family") || !j.contains("params"))
    throw ConstraintError("point JSON needs family and params");
  FamilyId id = parse_family(j.at("family").get<std::string>());
  double Q = j.value("Q", 1.0);
  std::map<std::string, cplx> all;
  for (const auto& [n, z] : j.at("params").items()) {
    if (!z.is_array() || z.size() != 2) throw ConstraintError("param " + n + " must be [re, im]");
    all[n] = cplx(z[0].get<double>(), z[1].get<double>());
  }
  std::map<std::string, cplx> free;
  for (const auto& n : family_info(id).free_params) {
    if (!all.count(n)) throw ConstraintError("missing free parameter " + n);
    free[n] = all[n];
  }
  auto p = constrain(id, free, Q);
  for (const auto& n : family_info(id).dependent_params) {
    if (all.count(n) && std::abs(all[n] - p.at(n)) > 1e-9 * std::max(1.0, std::abs(p.at(n))))
      throw ConstraintError("dependent parameter " + n + " disagrees with its closure");
  }
  return p;
}

nlohmann::json to_json(const AnglePoint& a) {
  nlohmann::json j;
  j["family"] = to_string(a.family);
  j["angles"] = a.angles;
  if (a.family == FamilyId::FTL4) j["Q"] = a.Q;
  return j;
}

// ---------------------------------------------------------------------------

DenseOperator GeneralAnsatz::build(const std::vector<cplx>& x) const {
  if (x.size() != term_ops.size()) throw DimensionError("general ansatz: wrong parameter count");
  Matrix m = swap.m;
  for (std::size_t i = 0; i < x.size(); ++i) m += x[i] * term_ops[i].m;
  return DenseOperator(std::move(m), swap.layout);
}

GeneralAnsatz general_ansatz(int d, int m, int l, RepKind kind) {
  if (d != 2) throw UnsupportedError("general ansatz is realized for qubits only");
  if (kind == RepKind::TemperleyLieb) throw UnsupportedError("general ansatz uses a qubit representation");
  if (l < 1 || l >= m) throw DimensionError("general ansatz needs 1 <= l < m");
  if (2 * l < m)
    throw DimensionError("2l < m: far-commutativity is not guaranteed, refusing (" +
                         std::to_string(m) + "," + std::to_string(l) + ")");
  GeneralAnsatz g;
  g.d = d;
  g.m = m;
  g.l = l;
  g.kind = kind;
  // subsets of size 1..m-1 touching offset 0 or offset l, then the full product
  for (int r = 1; r < m; ++r) {
    std::vector<int> pick(m, 0);
    std::fill(pick.begin(), pick.begin() + r, 1);
    do {
      std::vector<int> s;
      for (int i = 0; i < m; ++i)
        if (pick[i]) s.push_back(i);
      if (std::find(s.begin(), s.end(), 0) != s.end() || std::find(s.begin(), s.end(), l) != s.end())
        g.terms.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  std::vector<int> all(m);
  for (int i = 0; i < m; ++i) all[i] = i;
  g.terms.push_back(all);

  RepContext ctx{kind, m};
  g.swap = swap_op(1, 1 + l, m);
  for (const auto& s : g.terms) {
    TokenProduct f;
    std::string name;
    for (int i : s) {
      f.push_back(GeneratorToken::p(i + 1));
      name += "p" + std::to_string(i + 1);
    }
    g.names.push_back(name);
    g.term_ops.push_back(g.swap * represent(f, ctx));
  }
  return g;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double unit_uniform(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

struct Lm {
  const GeneralAnsatz& a;
  int l;
  Matrix id_l;
  std::vector<Matrix> dA, dB;

  explicit Lm(const GeneralAnsatz& an) : a(an), l(an.l) {
    const Eigen::Index dl = Eigen::Index{1} << l;
    id_l = Matrix::Identity(dl, dl);
    for (const auto& t : a.term_ops) {
      dA.push_back(kron(t, DenseOperator(id_l)).m);
      dB.push_back(kron(DenseOperator(id_l), t).m);
    }
  }

  // F = ABA - BAB, optional Jacobian columns; returns ||ABA||_F
  double eval(const std::vector<cplx>& x, Vector& F, Matrix* J) const {
    auto R = a.build(x);
    Matrix A = kron(R, DenseOperator(id_l)).m;
    Matrix B = kron(DenseOperator(id_l), R).m;
    Matrix AB = A * B, BA = B * A;
    Matrix lhs = AB * A;
    Matrix diff = lhs - BA * B;
    F = Eigen::Map<Vector>(diff.data(), diff.size());
    if (J) {
      J->resize(diff.size(), static_cast<Eigen::Index>(x.size()));
      for (std::size_t i = 0; i < x.size(); ++i) {
        Matrix d = dA[i] * BA + A * dB[i] * A + AB * dA[i] - dB[i] * AB - B * dA[i] * B - BA * dB[i];
        J->col(static_cast<Eigen::Index>(i)) = Eigen::Map<Vector>(d.data(), d.size());
      }
    }
    return lhs.norm();
  }
};

NumericSolution run_start(const Lm& lm, const SolveOptions& o, int start) {
  std::mt19937_64 gen(splitmix64(o.seed ^ splitmix64(static_cast<std::uint64_t>(start) + 1)));
  const std::size_t np = lm.a.term_ops.size();
  std::vector<cplx> x(np);
  for (std::size_t i = 0; i < np; ++i) {
    double re = unit_uniform(gen), im = unit_uniform(gen);
    if (o.center) {
      x[i] = (*o.center)[i] + cplx(o.noise * (2 * re - 1), o.noise * (2 * im - 1));
    } else {
      x[i] = cplx(o.box * (2 * re - 1), o.box * (2 * im - 1));
    }
  }
  Vector F, Fn;
  Matrix J, Jn;
  double scale = lm.eval(x, F, &J);
  double cost = F.squaredNorm();
  double mu = o.mu0;
  int it = 0;
  for (; it < o.max_iter; ++it) {
    if (std::sqrt(cost) <= 1e-2 * o.accept * std::max(scale, 1e-12)) break;
    Matrix H = J.adjoint() * J;
    Vector g = J.adjoint() * F;
    Matrix Hd = H;
    for (Eigen::Index k = 0; k < H.rows(); ++k) Hd(k, k) += mu * (H(k, k).real() + 1e-12);
    Vector step = Hd.ldlt().solve(-g);
    if (!step.allFinite()) break;
    std::vector<cplx> xn(np);
    for (std::size_t i = 0; i < np; ++i) xn[i] = x[i] + step(static_cast<Eigen::Index>(i));
    double sn = lm.eval(xn, Fn, &Jn);
    double cn = Fn.squaredNorm();
    if (std::isfinite(cn) && cn < cost) {
      x = std::move(xn);
      F.swap(Fn);
      J.swap(Jn);
      cost = cn;
      scale = sn;
      mu = std::max(mu / 3.0, 1e-15);
    } else {
      mu *= 4.0;
      if (mu > 1e12) break;
    }
  }
  NumericSolution s;
  s.start = start;
  s.params = x;
  s.residual = std::sqrt(cost) / std::max(scale, 1e-12);
  s.iterations = it;
  return s;
}

}  // namespace

SolveResult solve_numeric(const GeneralAnsatz& ansatz, const SolveOptions& o) {
  if (o.starts < 0) throw DimensionError("starts must be >= 0");
  if (o.center && o.center->size() != ansatz.term_ops.size())
    throw DimensionError("center has the wrong parameter count");
  Lm lm(ansatz);
  std::vector<NumericSolution> runs(static_cast<std::size_t>(o.starts));
  unsigned nt = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  nt = std::min<unsigned>(nt, static_cast<unsigned>(std::max(1, o.starts)));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int s = next++; s < o.starts; s = next++) runs[static_cast<std::size_t>(s)] = run_start(lm, o, s);
  };
  if (nt <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SolveResult res;
  for (auto& s : runs) {
    if (!(s.residual < o.accept)) continue;
    ++res.converged;
    auto R = ansatz.build(s.params);
    if (min_singular_value(R.m) < o.min_singular) {
      ++res.rejected_singular;
      continue;
    }
    auto rep = check_gybe(R, ansatz.d, ansatz.m, ansatz.l, o.accept);
    if (!rep.pass) {
      ++res.rejected_recheck;
      continue;
    }
    s.residual = rep.residual;
    res.solutions.push_back(std::move(s));
  }
  return res;
}

int count_distinct(const std::vector<NumericSolution>& sols, double tol) {
  std::vector<const NumericSolution*> reps;
  for (const auto& s : sols) {
    bool seen = std::any_of(reps.begin(), reps.end(), [&](const NumericSolution* r) {
      for (std::size_t i = 0; i < s.params.size(); ++i)
        if (std::abs(s.params[i] - r->params[i]) > tol) return false;
      return true;
    });
    if (!seen) reps.push_back(&s);
  }
  return static_cast<int>(reps.size());
}

}  // namespace braidforge
