#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <braidforge/families.hpp>
#include <braidforge/tensor.hpp>

namespace braidforge::app {

struct GoldenRow {
  std::vector<double> params;
  double prefactor = 1.0;
  Matrix matrix;  // prefactor applied
  std::optional<Matrix> printed;  // verbatim display when it differs
  std::optional<double> printed_prefactor;
  EigenMultiset eigen;
  std::optional<int> order;
  std::optional<std::string> cls;
  std::optional<std::string> input;
  std::map<std::string, double> output_ket;
  std::optional<bool> entangling;
  std::optional<std::string> anomaly;
};

struct GoldenTable {
  std::string id;
  std::string title;
  FamilyId family = FamilyId::F2P;
  std::vector<std::string> param_names;
  std::vector<GoldenRow> rows;
  std::vector<std::string> notes;

  ParameterPoint point(std::size_t row) const;
};

struct GhzFixture {
  DenseOperator R;
  EigenMultiset eigen;
  std::vector<std::string> notes;
};

// BRAIDFORGE_GOLDEN_DIR in the environment wins over the build-time path
std::string golden_dir();
const std::vector<std::string>& table_ids();  // fixture-backed ids
GoldenTable load_table(const std::string& id);
GhzFixture load_ghz();

// ket map {"001": -0.5, ...} as a state vector of n qubits
Vector ket_vector(const std::map<std::string, double>& ket, int n);

}  // namespace braidforge::app
