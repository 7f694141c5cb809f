#include "golden.hpp"

#include <cstdlib>
#include <fstream>

#include <braidforge/errors.hpp>

#ifndef BRAIDFORGE_GOLDEN_DIR
#define BRAIDFORGE_GOLDEN_DIR "data/golden"
#endif

namespace braidforge::app {

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open fixture " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed fixture " + path + ": " + e.what());
  }
}

Matrix int_matrix(const nlohmann::json& rows, double scale) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (static_cast<Eigen::Index>(rows[r].size()) != n) throw DimensionError("ragged fixture matrix");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = rows[r][c].get<double>() * scale;
  }
  return m;
}

EigenMultiset multiset(const nlohmann::json& ev) {
  EigenMultiset ms;
  for (const auto& e : ev)
    ms.clusters.push_back({cplx(e.at("value")[0].get<double>(), e.at("value")[1].get<double>()),
                           e.at("multiplicity").get<int>()});
  return ms;
}

}  // namespace

std::string golden_dir() {
  if (const char* env = std::getenv("BRAIDFORGE_GOLDEN_DIR"); env && *env) return env;
  return BRAIDFORGE_GOLDEN_DIR;
}

const std::vector<std::string>& table_ids() {
  static const std::vector<std::string> ids = {"t1", "t2", "t3", "t4", "t5", "f42set", "f43set"};
  return ids;
}

ParameterPoint GoldenTable::point(std::size_t row) const {
  std::vector<cplx> free;
  for (double p : rows.at(row).params) free.emplace_back(p, 0.0);
  return constrain(family, free);
}

GoldenTable load_table(const std::string& id) {
  if (std::find(table_ids().begin(), table_ids().end(), id) == table_ids().end())
    throw UnsupportedError("unknown table '" + id + "'");
  auto j = read_json(golden_dir() + "/" + id + ".json");
  GoldenTable t;
  t.id = id;
  t.title = j.at("title").get<std::string>();
  t.family = parse_family(j.at("family").get<std::string>());
  t.param_names = j.at("param_names").get<std::vector<std::string>>();
  if (j.contains("notes")) t.notes = j.at("notes").get<std::vector<std::string>>();
  for (const auto& r : j.at("rows")) {
    GoldenRow g;
    g.params = r.at("params").get<std::vector<double>>();
    g.prefactor = r.at("prefactor").get<double>();
    g.matrix = int_matrix(r.at("matrix"), g.prefactor);
    if (r.contains("printed_prefactor")) g.printed_prefactor = r.at("printed_prefactor").get<double>();
    if (r.contains("printed_matrix")) g.printed = int_matrix(r.at("printed_matrix"), g.prefactor);
    else if (g.printed_prefactor) g.printed = int_matrix(r.at("matrix"), *g.printed_prefactor);
    g.eigen = multiset(r.at("eigenvalues"));
    if (r.contains("order")) g.order = r.at("order").get<int>();
    if (r.contains("class")) g.cls = r.at("class").get<std::string>();
    if (r.contains("input")) g.input = r.at("input").get<std::string>();
    if (r.contains("output_ket")) g.output_ket = r.at("output_ket").get<std::map<std::string, double>>();
    if (r.contains("entangling")) g.entangling = r.at("entangling").get<bool>();
    if (r.contains("anomaly")) g.anomaly = r.at("anomaly").get<std::string>();
    if (g.params.size() != t.param_names.size()) throw DimensionError("fixture row has wrong parameter count");
    t.rows.push_back(std::move(g));
  }
  return t;
}

GhzFixture load_ghz() {
  auto j = read_json(golden_dir() + "/ghz.json");
  GhzFixture g{DenseOperator(int_matrix(j.at("matrix"), j.at("prefactor").get<double>())),
               multiset(j.at("eigenvalues")), {}};
  if (j.contains("notes")) g.notes = j.at("notes").get<std::vector<std::string>>();
  return g;
}

Vector ket_vector(const std::map<std::string, double>& ket, int n) {
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  for (const auto& [bits, c] : ket) {
    if (static_cast<int>(bits.size()) != n) throw DimensionError("ket label has wrong length");
    v(std::stol(bits, nullptr, 2)) += c;
  }
  return v;
}

}  // namespace braidforge::app
