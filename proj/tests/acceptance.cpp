// One pass/fail line per acceptance criterion. Exit code 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <braidforge/diagram.hpp>
#include <braidforge/entanglement.hpp>
#include <braidforge/families.hpp>
#include <braidforge/representations.hpp>
#include <braidforge/verifier.hpp>

#include "chains.hpp"
#include "commands.hpp"
#include "golden.hpp"
#include "ilo_property.hpp"
#include "tl_cases.hpp"
#include "two_qubit.hpp"

using namespace braidforge;
using namespace braidforge::app;

namespace {

const double kPi = 3.141592653589793;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

std::string first_failure(const Outcome& o) {
  for (const auto& c : o.checks)
    if (!c.pass) return c.item + " / " + c.name + " = " + c.value;
  return "";
}

void table_passes(Verdict& v, const std::string& id, std::optional<double> Q = std::nullopt) {
  auto cfg = config("table");
  cfg.Q = Q;
  auto o = cmd_table(id, cfg);
  v.require(o.pass(), id + ": " + first_failure(o));
}

std::vector<FamilyId> family_ids() {
  std::vector<FamilyId> ids;
  for (const auto& f : list_families()) ids.push_back(f.id);
  return ids;
}

Verdict c1() {
  Verdict v;
  auto t0 = Clock::now();
  auto rep = verify_diagram_relations(4);
  double s = seconds_since(t0);
  v.require(rep.pass(), "relation failure");
  v.require(s < 1.0, "runtime " + fmt(s) + " s");
  int instances = 0;
  for (const auto& c : rep.checks) instances += c.instances;
  v.detail << instances << " instances, " << fmt(s) << " s";
  return v;
}

Verdict c2() {
  Verdict v;
  for (auto kind : {RepKind::QubitZ, RepKind::QubitX}) {
    auto rep = verify_qubit_relations(3, kind);
    v.require(rep.pass(), "qubit relations");
  }
  auto pp = qubit_token(GeneratorToken::ppair(1, 2), {RepKind::QubitZ, 3});
  v.require(approx_eq(pp * pp, pp.scaled(2.0), 1e-14).pass, "p_{1,2}^2 = 2 p_{1,2}");
  for (double Q : {0.5, 1.0, 2.0}) {
    auto rep = verify_tl_relations(3, Q);
    v.require(rep.pass(), "TL relations at Q=" + fmt(Q));
    for (const char* id : {"p-idempotent", "ppair-idempotent", "p-ppair-p", "ppair-p-ppair", "s-conj-p"}) {
      const auto* c = rep.find(id);
      v.require(c && c->instances > 0 && c->failures == 0, std::string(id) + " at Q=" + fmt(Q));
    }
    const auto* absorb = rep.find("s-absorb-ppair");
    v.require(absorb && absorb->failures > 0, "absorption should fail at Q=" + fmt(Q));
  }
  v.detail << "qubit k=3 both forms; TL at Q in {0.5,1,2}, absorption violated";
  return v;
}

Verdict c3() {
  Verdict v;
  std::mt19937_64 rng(0xB41D);
  double worst = 0, slowest = 0;
  for (auto id : family_ids()) {
    const auto& f = family_info(id);
    for (int i = 0; i < 100; ++i) {
      auto R = build(random_point(id, rng, id == FamilyId::FTL4 ? 2.0 : 1.0));
      auto t0 = Clock::now();
      auto r = check_gybe(R, f.d, f.m, f.l);
      slowest = std::max(slowest, seconds_since(t0));
      worst = std::max(worst, r.residual);
      if (!r.pass) v.require(false, f.name + " residual " + fmt(r.residual));
    }
  }
  v.require(slowest < 1.0, "slowest check " + fmt(slowest) + " s");
  v.detail << "700 points, max residual " << fmt(worst) << ", slowest " << fmt(slowest) << " s";
  return v;
}

Verdict c4() {
  Verdict v;
  table_passes(v, "t1");
  auto t = load_table("t1");
  const int orders[] = {2, 2, 4, 4};
  for (std::size_t r = 0; r < t.rows.size() && r < 4; ++r) {
    auto R = build(t.point(r));
    v.require(R.m == t.rows[r].matrix, "row " + std::to_string(r + 1) + " not exact");
    v.require(braid_order(R) == orders[r], "row " + std::to_string(r + 1) + " order");
  }
  v.require(t.rows.size() == 4, "row count");
  v.detail << "4 rows exact, orders 2,2,4,4";
  return v;
}

Verdict c5() {
  Verdict v;
  for (const char* id : {"t2", "t3", "t4", "t5"}) table_passes(v, id);
  v.detail << "matrices, spectra, orders and SLOCC classes of four 3-qubit tables";
  return v;
}

Verdict c6() {
  Verdict v;
  for (const char* id : {"f42set", "f43set"}) table_passes(v, id);
  v.detail << "eight 16x16 displays, gYBE, kets and spectra";
  return v;
}

Verdict c7() {
  Verdict v;
  std::mt19937_64 rng(0xB41D);
  std::uniform_real_distribution<double> ud(0.0, 2 * kPi);
  const std::map<FamilyId, int> counts = {{FamilyId::F2P, 8},  {FamilyId::F2Pair, 2}, {FamilyId::F3P, 16},
                                          {FamilyId::F3Pair, 8}, {FamilyId::F42, 64},  {FamilyId::F43, 64},
                                          {FamilyId::FTL4, 8}};
  double worst = 0;
  std::ostringstream got;
  for (auto id : family_ids()) {
    const auto& f = family_info(id);
    const double Q = id == FamilyId::FTL4 ? 2.0 : 1.0;
    for (int i = 0; i < 50; ++i) {
      std::vector<double> a;
      for (std::size_t k = 0; k < f.angles.size(); ++k) a.push_back(ud(rng));
      auto u = check_unitary(build(unitary_from_angles(id, a, Q)), 1e-10);
      worst = std::max(worst, u.residual);
      if (!u.pass) v.require(false, f.name + " not unitary");
    }
    int n = static_cast<int>(real_unitary_points(id, 2.0).size());
    got << (got.tellp() > 0 ? "/" : "") << n;
    v.require(n == counts.at(id), f.name + " has " + std::to_string(n) + " real points");
  }
  v.detail << "max unitarity residual " << fmt(worst) << ", real points " << got.str();
  return v;
}

Verdict c8() {
  Verdict v;
  std::mt19937_64 rng(0xB41D);
  double worst = 0;
  for (auto id : {FamilyId::F2P, FamilyId::F2Pair, FamilyId::F3P, FamilyId::F3Pair}) {
    for (int i = 0; i < 20; ++i) {
      auto p = random_point(id, rng);
      auto R = build(p);
      for (unsigned n = 1; n <= 6; ++n) {
        auto direct = mat_power(R, n);
        auto rebuilt = rebuild_power(power_params(p, n));
        auto c = approx_eq(rebuilt, direct, 1e-9);
        worst = std::max(worst, c.residual);
        if (!c.pass) v.require(false, std::string(to_string(id)) + " n=" + std::to_string(n));
      }
    }
  }
  std::uniform_real_distribution<double> ud(0.0, 2 * kPi);
  int finite = 0;
  for (int i = 0; i < 10; ++i)
    if (braid_order(build(unitary_from_angles(FamilyId::F2P, {ud(rng), ud(rng), ud(rng)})))) ++finite;
  v.require(finite == 0, std::to_string(finite) + " generic F2P points have finite order");
  v.detail << "max recursion residual " << fmt(worst) << ", generic F2P orders none (10/10)";
  return v;
}

Verdict c9() {
  Verdict v;
  for (double Q : {0.5, 2.0}) table_passes(v, "tl_cases", Q);
  v.detail << "Cases I-VII at Q in {0.5,2}: orders, spectra, swap conjugations, expansions";
  return v;
}

Verdict c10() {
  Verdict v;
  Vector g = Vector::Zero(8);
  g(0) = g(7) = 1.0;
  StateVector ghz(3, g);
  auto t = load_table("t2");
  double worst = 0;
  for (int r = 1; r <= 4; ++r) {
    StateVector out(3, ket_vector(t.rows[r - 1].output_ket, 3));
    auto fit = ilo_equivalent(out, t2_chain(r), ghz);
    worst = std::max(worst, fit.residual);
    v.require(fit.equivalent, "GHZ row " + std::to_string(r) + " residual " + fmt(fit.residual));
  }
  for (double Q : {0.5, 2.0}) {
    for (const std::string c : {"I", "IV"}) {
      auto out = apply_gate(build(tl_case_point(c, Q)), StateVector::from_bits("0101"));
      auto chain = c == "I" ? case_I_chain(Q) : case_IV_chain(Q);
      auto fit = gabcd_fit(chain.apply(out));
      worst = std::max(worst, fit.residual);
      v.require(fit.residual < 1e-9 && fit.lambda.has_value(), "Case " + c + " at Q=" + fmt(Q));
    }
  }
  v.detail << "4 GHZ chains and Case I/IV Gabcd fits, max residual " << fmt(worst);
  return v;
}

Verdict c11() {
  Verdict v;
  auto trials = ilo_class_trials(50, 0xB41D);
  int ok = 0;
  for (const auto& t : trials) ok += t.match;
  v.require(ok == 50 && trials.size() == 50, "mismatched classes");
  v.detail << ok << "/50 trials keep the SLOCC class";
  return v;
}

Verdict c12() {
  Verdict v;
  auto o = cmd_compare_ghz(config("compare-ghz"));
  v.require(o.pass(), first_failure(o));
  auto ghz = load_ghz();
  auto t = load_table("t2");
  int obstructed = 0;
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    obstructed += spectral_obstruction(eigen_multiset(build(t.point(r))), ghz.eigen).obstructed;
  v.require(obstructed == 4, std::to_string(obstructed) + "/4 obstructed");
  v.detail << obstructed << "/4 rows obstructed against e^{+-i pi/4} (x4)";
  return v;
}

Verdict c13() {
  Verdict v;
  auto a = general_ansatz(2, 3, 2);
  SolveOptions opt;
  opt.starts = 64;
  opt.seed = 0xB41D;
  auto t0 = Clock::now();
  auto res = solve_numeric(a, opt);
  double s = seconds_since(t0);
  const std::map<std::string, std::string> name = {{"p1", "alpha1"}, {"p3", "alpha3"}, {"p1p2", "beta1"},
                                                   {"p1p3", "beta3"}, {"p2p3", "beta2"}, {"p1p2p3", "gamma"}};
  int distinct = count_distinct(res.solutions);
  double worst_res = 0, worst_closure = 0;
  for (const auto& sol : res.solutions) {
    worst_res = std::max(worst_res, check_gybe(a.build(sol.params), 2, 3, 2).residual);
    ParameterPoint p;
    p.family = FamilyId::F3P;
    for (std::size_t i = 0; i < sol.params.size(); ++i) p.values[name.at(a.names[i])] = sol.params[i];
    worst_closure = std::max(worst_closure, closure_residual(p));
  }
  v.require(distinct >= 5, std::to_string(distinct) + " distinct");
  v.require(worst_res < 1e-10, "gYBE residual " + fmt(worst_res));
  v.require(worst_closure < 1e-6, "closure " + fmt(worst_closure));
  v.require(s < 60.0, "runtime " + fmt(s) + " s");
  v.detail << distinct << " distinct, max residual " << fmt(worst_res) << ", closures " << fmt(worst_closure) << ", "
           << fmt(s) << " s";
  return v;
}

Verdict c14() {
  Verdict v;
  auto pts = real_unitary_points(FamilyId::F2P, 1.0);
  int real_ok = 0;
  for (const auto& p : pts) real_ok += match_diag_antidiag(build(p), 1e-12).match;
  v.require(real_ok == static_cast<int>(pts.size()) && !pts.empty(), "real F2P points");
  std::mt19937_64 rng(0xB41D);
  std::uniform_real_distribution<double> ud(0.0, 2 * kPi);
  int pair_ok = 0;
  for (int i = 0; i < 50; ++i) {
    auto R = build(unitary_from_angles(FamilyId::F2Pair, {ud(rng)}));
    pair_ok += match_diag_antidiag(hadamard_pair_conjugate(R), 1e-10).match;
  }
  v.require(pair_ok == 50, "F2Pair conjugates");
  v.detail << real_ok << "/" << pts.size() << " real F2P points, " << pair_ok << "/50 F2Pair conjugates";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"diagram relations at k=4", c1},
      {"qubit and TL representation relations", c2},
      {"gYBE at 100 random points per family", c3},
      {"2-qubit table reproduction", c4},
      {"3-qubit table reproduction", c5},
      {"4-qubit display reproduction", c6},
      {"unitary parameterizations and real point counts", c7},
      {"power recursions and generic infinite order", c8},
      {"TL 4-qubit cases", c9},
      {"explicit ILO chains", c10},
      {"ILO conjugation keeps SLOCC classes", c11},
      {"GHZ spectral non-equivalence", c12},
      {"numeric solver on the (2,3,2) ansatz", c13},
      {"2-qubit diagonal/antidiagonal template", c14},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    failed += !v.pass;
    std::printf("[%s] criterion %zu: %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
