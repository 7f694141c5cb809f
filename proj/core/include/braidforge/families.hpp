#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "braidforge/diagram.hpp"
#include "braidforge/representations.hpp"
#include "braidforge/tensor.hpp"

namespace braidforge {

enum class FamilyId { F2P, F2Pair, F3P, F3Pair, F42, F43, FTL4 };

struct AnsatzFamily {
  FamilyId id;
  std::string name;
  int d, m, l;
  std::vector<std::string> free_params;
  std::vector<std::string> dependent_params;
  std::vector<std::string> angles;
  RepKind rep_kind;
  bool has_closed_inverse;
  bool has_power_recursion;
  std::string summary;
};

const std::vector<AnsatzFamily>& list_families();
const AnsatzFamily& family_info(FamilyId id);
const char* to_string(FamilyId id);
FamilyId parse_family(const std::string& name);

struct ParameterPoint {
  FamilyId family = FamilyId::F2P;
  std::map<std::string, cplx> values;
  double Q = 1.0;  // Temperley-Lieb deformation, FTL4 only

  cplx at(const std::string& name) const;
  // free parameters in registry order
  std::vector<cplx> free_values() const;
};

struct AnglePoint {
  FamilyId family = FamilyId::F2P;
  std::map<std::string, double> angles;
  double Q = 1.0;
};

ParameterPoint constrain(FamilyId id, const std::vector<cplx>& free, double Q = 1.0);
ParameterPoint constrain(FamilyId id, const std::map<std::string, cplx>& free, double Q = 1.0);
// largest deviation of the dependent parameters from their closures
double closure_residual(const ParameterPoint& p);

RepContext family_context(const ParameterPoint& p);
GeneratorWord family_word(const ParameterPoint& p);
DenseOperator build(const ParameterPoint& p);
DenseOperator closed_inverse(const ParameterPoint& p);

ParameterPoint unitary_from_angles(FamilyId id, const std::vector<double>& angles, double Q = 1.0);
ParameterPoint unitary_from_angles(const AnglePoint& a);
std::vector<ParameterPoint> real_unitary_points(FamilyId id, double Q = 2.0);

// Parameters of R^n together with the power of the swap prefactor.
struct PowerPoint {
  ParameterPoint params;
  unsigned n = 1;
};

PowerPoint power_params(const ParameterPoint& p, unsigned n);
DenseOperator rebuild_power(const PowerPoint& pp);

// Random constrained point with every closure denominator bounded away from 0.
ParameterPoint random_point(FamilyId id, std::mt19937_64& rng, double Q = 1.0);

nlohmann::json to_json(const ParameterPoint& p);
ParameterPoint point_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AnglePoint& a);

// ---------------------------------------------------------------------------
// General multi-qubit ansatz R = s_{1,1+l} (1 + sum_S x_S prod_{j in S} p_j).

struct GeneralAnsatz {
  int d = 2, m = 0, l = 0;
  RepKind kind = RepKind::QubitX;
  std::vector<std::vector<int>> terms;  // 0-based site offsets
  std::vector<std::string> names;
  DenseOperator swap;
  std::vector<DenseOperator> term_ops;  // swap * prod p

  DenseOperator build(const std::vector<cplx>& x) const;
  int parameter_count() const { return static_cast<int>(terms.size()); }
};

GeneralAnsatz general_ansatz(int d, int m, int l, RepKind kind = RepKind::QubitX);

struct SolveOptions {
  int starts = 64;
  std::uint64_t seed = 0xB41D;
  int max_iter = 200;
  double mu0 = 1e-3;
  double accept = 1e-10;
  double box = 2.0;
  double min_singular = 1e-8;
  unsigned threads = 0;  // 0: hardware concurrency
  // when set, starts are center + uniform noise in [-noise, noise]^2
  std::optional<std::vector<cplx>> center;
  double noise = 0.1;
};

struct NumericSolution {
  int start = 0;
  std::vector<cplx> params;
  double residual = 0.0;
  int iterations = 0;
};

struct SolveResult {
  std::vector<NumericSolution> solutions;
  int converged = 0;
  int rejected_singular = 0;
  int rejected_recheck = 0;
};

SolveResult solve_numeric(const GeneralAnsatz& ansatz, const SolveOptions& opts = {});
// number of pairwise distinct parameter vectors (max-abs distance > tol)
int count_distinct(const std::vector<NumericSolution>& sols, double tol = 1e-6);

}  // namespace braidforge
