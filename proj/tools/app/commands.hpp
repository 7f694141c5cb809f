#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <braidforge/errors.hpp>
#include <braidforge/tensor.hpp>

namespace braidforge::app {

// Bad flags, unknown ids, unreadable input: exit code 2.
struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string command;
  double tol = kDefaultTol;
  std::uint64_t seed = 0xB41D;
  std::string format = "json";  // json | csv | text
  std::string out;              // empty: stdout
  std::optional<double> Q;
};

// flag value, else BRAIDFORGE_TOL, else the default
double resolve_tol(std::optional<double> flag);

struct Check {
  std::string section;
  std::string item;
  std::string name;
  std::string value;
  bool pass = true;
};

struct Outcome {
  std::string command;
  std::vector<Check> checks;
  std::vector<std::string> anomalies;  // known defects in the source text
  nlohmann::json results = nlohmann::json::object();

  void add(std::string section, std::string item, std::string name, std::string value, bool pass);
  bool pass() const;
  int exit_code() const { return pass() ? 0 : 1; }
};

nlohmann::json report_json(const Outcome& o, const RunConfig& cfg);
std::string render(const Outcome& o, const RunConfig& cfg);

Outcome cmd_relations(int k, const std::string& rep, const RunConfig& cfg);
Outcome cmd_table(const std::string& id, const RunConfig& cfg);

struct SolveRequest {
  int d = 2, m = 3, l = 2;
  int starts = 64;
  unsigned threads = 0;
  // free parameters of the matching registry family; starts go near it
  std::vector<double> near;
  double noise = 0.1;
};
Outcome cmd_solve(const SolveRequest& req, const RunConfig& cfg);

Outcome cmd_compare_ghz(const RunConfig& cfg);
Outcome cmd_classify(const std::string& matrix_file, const std::string& bits, const RunConfig& cfg);
// name "list" prints the registry; point_file optionally checks one point
Outcome cmd_family(const std::string& name, const std::string& point_file, const RunConfig& cfg);

// "1e-3" style formatting shared by text output
std::string fmt(double x);

}  // namespace braidforge::app
