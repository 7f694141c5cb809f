#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include <braidforge/families.hpp>
#include <braidforge/verifier.hpp>
#include <braidforge/version.hpp>

#include "commands.hpp"
#include "golden.hpp"
#include "two_qubit.hpp"

using namespace braidforge;
using namespace braidforge::app;

namespace {

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

std::string failing(const Outcome& o) {
  std::ostringstream os;
  for (const auto& c : o.checks)
    if (!c.pass) os << c.section << " / " << c.item << " / " << c.name << " = " << c.value << "\n";
  return os.str();
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Golden, FixturesLoad) {
  for (const auto& id : table_ids()) {
    auto t = load_table(id);
    EXPECT_FALSE(t.rows.empty()) << id;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const auto& f = family_info(t.family);
      EXPECT_EQ(t.rows[r].matrix.rows(), Eigen::Index{1} << f.m) << id << " row " << r;
    }
  }
  auto g = load_ghz();
  EXPECT_EQ(g.R.dim(), 8);
  EXPECT_THROW(load_table("t9"), Error);
}

TEST(Golden, FirstTableIsExact) {
  auto t = load_table("t1");
  ASSERT_EQ(t.rows.size(), 4u);
  const int orders[] = {2, 2, 4, 4};
  for (std::size_t r = 0; r < 4; ++r) {
    auto R = build(t.point(r));
    EXPECT_EQ(R.m, t.rows[r].matrix) << r;
    EXPECT_EQ(braid_order(R), orders[r]);
  }
}

TEST(Tables, EveryFixtureTablePasses) {
  for (const auto& id : table_ids()) {
    auto o = cmd_table(id, config("table"));
    EXPECT_TRUE(o.pass()) << id << "\n" << failing(o);
    EXPECT_GT(o.checks.size(), 4u) << id;
  }
}

TEST(Tables, DefectiveDisplaysAreReported) {
  auto o = cmd_table("f43set", config("table"));
  bool any = std::any_of(o.checks.begin(), o.checks.end(),
                         [](const Check& c) { return c.name == "printed-display-defective"; });
  EXPECT_TRUE(any || !o.anomalies.empty());
}

TEST(Tables, TlCasesAtSeveralQ) {
  for (double Q : {0.5, 2.0, 3.0}) {
    auto cfg = config("table");
    cfg.Q = Q;
    auto o = cmd_table("tl_cases", cfg);
    EXPECT_TRUE(o.pass()) << "Q=" << Q << "\n" << failing(o);
    EXPECT_FALSE(o.anomalies.empty());
  }
}

TEST(Tables, TlCasesDegenerateAtQOne) {
  // 1 - 2Q/(Q+1/Q) vanishes, so the entangled outputs collapse; the
  // algebraic checks still hold
  auto cfg = config("table");
  cfg.Q = 1.0;
  auto o = cmd_table("tl_cases", cfg);
  EXPECT_FALSE(o.pass());
  for (const auto& c : o.checks) {
    if (c.pass) continue;
    bool entanglement = c.name.rfind("profile(", 0) == 0 || c.name == "entangled outputs";
    EXPECT_TRUE(entanglement) << c.item << " / " << c.name << " = " << c.value;
  }
}

TEST(Tables, UnknownIdIsUsageError) { EXPECT_THROW(cmd_table("t7", config("table")), UsageError); }

TEST(Relations, RepresentationsAndErrors) {
  for (const char* rep : {"diagram", "qubit"}) {
    auto o = cmd_relations(3, rep, config("relations"));
    EXPECT_TRUE(o.pass()) << rep << "\n" << failing(o);
  }
  auto tl = cmd_relations(3, "tl", config("relations"));
  EXPECT_TRUE(tl.pass()) << failing(tl);
  EXPECT_THROW(cmd_relations(2, "qubit", config("relations")), UsageError);
  EXPECT_THROW(cmd_relations(5, "tl", config("relations")), UsageError);
  EXPECT_THROW(cmd_relations(3, "spin", config("relations")), UsageError);
}

TEST(CompareGhz, AllObstructed) {
  auto o = cmd_compare_ghz(config("compare-ghz"));
  EXPECT_TRUE(o.pass()) << failing(o);
  int obstructed = 0;
  for (const auto& c : o.checks)
    if (c.value == "obstructed") ++obstructed;
  EXPECT_GE(obstructed, 4);
}

TEST(Solve, SmallRunAndErrors) {
  SolveRequest req;
  req.starts = 8;
  req.threads = 1;
  auto o = cmd_solve(req, config("solve"));
  EXPECT_TRUE(o.pass()) << failing(o);
  SolveRequest bad;
  bad.m = 5;
  bad.l = 2;
  EXPECT_THROW(cmd_solve(bad, config("solve")), UsageError);
}

TEST(Family, ListAndEveryFamily) {
  EXPECT_TRUE(cmd_family("list", "", config("family")).pass());
  for (const auto& f : list_families()) {
    auto o = cmd_family(f.name, "", config("family"));
    EXPECT_TRUE(o.pass()) << f.name << "\n" << failing(o);
  }
  EXPECT_THROW(cmd_family("F5", "", config("family")), UsageError);
}

TEST(Family, PointFile) {
  auto path = testing::TempDir() + "point.json";
  {
    std::ofstream f(path);
    f << to_json(constrain(FamilyId::F3P, std::vector<cplx>{-2.0, -2.0, 0.0, 2.0})).dump();
  }
  auto o = cmd_family("F3P", path, config("family"));
  EXPECT_TRUE(o.pass()) << failing(o);
}

TEST(Classify, OperatorFileAndErrors) {
  auto path = testing::TempDir() + "ghz.json";
  {
    std::ofstream f(path);
    f << to_json(load_ghz().R).dump();
  }
  auto o = cmd_classify(path, "000", config("classify"));
  EXPECT_TRUE(o.pass());
  EXPECT_EQ(o.results.at("slocc").at("label"), "GHZ");
  EXPECT_THROW(cmd_classify(path, "00", config("classify")), UsageError);
  EXPECT_THROW(cmd_classify(testing::TempDir() + "missing.json", "000", config("classify")), UsageError);
  auto junk = testing::TempDir() + "junk.json";
  {
    std::ofstream f(junk);
    f << "{not json";
  }
  EXPECT_THROW(cmd_classify(junk, "000", config("classify")), UsageError);
}

TEST(TwoQubit, HadamardPairConjugationHitsTemplate) {
  for (double th : {0.3, 1.0, 2.5}) {
    auto p = unitary_from_angles(FamilyId::F2Pair, {th});
    auto m = match_diag_antidiag(hadamard_pair_conjugate(build(p)), 1e-10);
    EXPECT_TRUE(m.match) << th;
  }
  auto rot = DenseOperator::from_real({{1, 1, 0, 0}, {1, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  EXPECT_FALSE(match_diag_antidiag(rot, 1e-10).match);
}

TEST(Report, JsonHeaderAndDeterminism) {
  auto cfg = config("table");
  auto a = report_json(cmd_table("t2", cfg), cfg);
  auto b = report_json(cmd_table("t2", cfg), cfg);
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a.at("version"), std::string(kVersion));
  EXPECT_EQ(a.at("seed"), 0xB41D);
  EXPECT_EQ(a.at("tolerances").at("tol"), kDefaultTol);
  EXPECT_EQ(a.at("exit_code"), 0);
  EXPECT_TRUE(a.at("checks").is_array());
}

TEST(Report, Formats) {
  auto cfg = config("table");
  auto o = cmd_table("t1", cfg);
  cfg.format = "csv";
  auto csv = render(o, cfg);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "section,item,check,value,pass");
  EXPECT_EQ(count_lines(csv), static_cast<int>(o.checks.size()) + 1);
  cfg.format = "text";
  auto text = render(o, cfg);
  EXPECT_NE(text.find("PASS"), std::string::npos);
  cfg.format = "json";
  EXPECT_NO_THROW(nlohmann::json::parse(render(o, cfg)));
}

TEST(Report, FailedCheckSetsExitCode) {
  Outcome o;
  o.add("s", "i", "n", "v", true);
  EXPECT_EQ(o.exit_code(), 0);
  o.add("s", "i", "n", "v", false);
  EXPECT_EQ(o.exit_code(), 1);
}

TEST(Tolerance, FlagEnvDefault) {
  unsetenv("BRAIDFORGE_TOL");
  EXPECT_EQ(resolve_tol(std::nullopt), kDefaultTol);
  setenv("BRAIDFORGE_TOL", "1e-7", 1);
  EXPECT_EQ(resolve_tol(std::nullopt), 1e-7);
  EXPECT_EQ(resolve_tol(1e-5), 1e-5);
  setenv("BRAIDFORGE_TOL", "abc", 1);
  EXPECT_THROW(resolve_tol(std::nullopt), UsageError);
  setenv("BRAIDFORGE_TOL", "-1", 1);
  EXPECT_THROW(resolve_tol(std::nullopt), UsageError);
  unsetenv("BRAIDFORGE_TOL");
}

TEST(Tolerance, TightToleranceFails) {
  auto cfg = config("family");
  cfg.tol = 1e-30;
  EXPECT_FALSE(cmd_family("F3P", "", cfg).pass());
}
