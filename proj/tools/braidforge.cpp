#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include <braidforge/version.hpp>

#include "commands.hpp"

using namespace braidforge;
using namespace braidforge::app;

int main(int argc, char** argv) {
  CLI::App app{"braidforge: braid-group and generalized Yang-Baxter verifier"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> tol;
  std::string seed_text = "0xB41D";
  RunConfig cfg;
  std::optional<double> Q;
  app.add_option("--tol", tol, "relative residual tolerance (env BRAIDFORGE_TOL)")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed_text, "RNG seed, decimal or 0x hex");
  app.add_option("--format", cfg.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", cfg.out, "write the report here instead of stdout");
  app.add_option("--Q", Q, "Temperley-Lieb deformation parameter");

  int k = 4;
  std::string rep = "qubit";
  auto* rel = app.add_subcommand("relations", "check the relations of the k-strand algebra");
  rel->add_option("--k", k, "number of strands");
  rel->add_option("--rep", rep, "diagram | qubit | tl");

  std::string table_id;
  auto* table = app.add_subcommand("table", "re-verify a reference table");
  table->add_option("id", table_id, "t1..t5, f42set, f43set, tl_cases")->required();

  SolveRequest sreq;
  auto* solve = app.add_subcommand("solve", "numerically solve the general ansatz");
  solve->add_option("--d", sreq.d);
  solve->add_option("--m", sreq.m);
  solve->add_option("--l", sreq.l);
  solve->add_option("--starts", sreq.starts, "multistart count");
  solve->add_option("--threads", sreq.threads, "worker threads, 0 for all cores");
  solve->add_option("--near", sreq.near, "free parameters of the matching family")->delimiter(',');
  solve->add_option("--noise", sreq.noise, "start box half-width around --near");

  auto* ghz = app.add_subcommand("compare-ghz", "spectral comparison with the GHZ gate");

  std::string file, bits;
  auto* cls = app.add_subcommand("classify", "SLOCC class of R applied to a basis state");
  cls->add_option("file", file, "operator or family point JSON")->required();
  cls->add_option("bits", bits, "input basis state, e.g. 000")->required();

  std::string fam = "list", point;
  auto* family = app.add_subcommand("family", "registry checks for one family");
  family->add_option("name", fam, "family name or list");
  family->add_option("--point", point, "check one point from a JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    cfg.tol = resolve_tol(tol);
    std::size_t pos = 0;
    cfg.seed = std::stoull(seed_text, &pos, 0);
    if (pos != seed_text.size()) throw UsageError("bad --seed '" + seed_text + "'");
    cfg.Q = Q;
    cfg.command = app.get_subcommands().front()->get_name();

    Outcome o;
    if (*rel) o = cmd_relations(k, rep, cfg);
    else if (*table) o = cmd_table(table_id, cfg);
    else if (*solve) o = cmd_solve(sreq, cfg);
    else if (*ghz) o = cmd_compare_ghz(cfg);
    else if (*cls) o = cmd_classify(file, bits, cfg);
    else o = cmd_family(fam, point, cfg);

    const std::string text = render(o, cfg);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw UsageError("cannot write " + cfg.out);
      f << text;
    }
    return o.exit_code();
  } catch (const UsageError& e) {
    std::cerr << "braidforge: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument&) {
    std::cerr << "braidforge: bad --seed '" << seed_text << "'\n";
    return 2;
  } catch (const std::out_of_range&) {
    std::cerr << "braidforge: value out of range\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "braidforge: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "braidforge: " << e.what() << '\n';
    return 1;
  }
}
