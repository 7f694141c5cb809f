#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "braidforge/tensor.hpp"

namespace braidforge {

inline constexpr double kRankTol = 1e-8;
inline constexpr double kTangleTol = 1e-8;

// Amplitudes in binary-string order, site 1 most significant.
struct StateVector {
  int n = 0;
  Vector amps;

  StateVector() = default;
  StateVector(int qubits, Vector a);

  static StateVector basis(int n, std::uint64_t index);
  static StateVector from_bits(const std::string& bits);
  // (a_1|0> + b_1|1>) x ... ; each factor a 2-vector
  static StateVector product(const std::vector<Vector>& sites);

  double norm() const { return amps.norm(); }
  StateVector normalized() const;
  // "0.5|001> - 0.5|010> ..." with coefficients below tol dropped
  std::string ket(double tol = 1e-12) const;
};

StateVector apply_gate(const DenseOperator& R, const StateVector& s);

// Schmidt rank across subset | complement. Sites are 1-based.
int schmidt_profile(const StateVector& s, const std::vector<int>& subset, double tol = kRankTol);

enum class Coarse4 { FullyProduct, BellTimesSep, BellTimesBell, GenuineMultipartite };
const char* to_string(Coarse4 c);

struct SloccLabel {
  int n = 0;
  std::string label;
  std::vector<int> ranks;  // single-site ranks (n<=3) or the 7 four-qubit cuts
  std::optional<double> tangle;
  std::optional<Coarse4> coarse;
  std::vector<std::pair<int, int>> bell_pairs;  // 4 qubits only

  bool fully_product() const;
  nlohmann::json to_json() const;
};

SloccLabel slocc_2q(const StateVector& s, double tol = kRankTol);
double three_tangle(const StateVector& s);
SloccLabel slocc_3q(const StateVector& s, double tol = kTangleTol);
// the seven cuts {1},{2},{3},{4},{1,2},{1,3},{1,4}
SloccLabel profile_4q(const StateVector& s, double tol = kRankTol);
// dispatch on n; n > 4 gets single-site ranks only
SloccLabel classify(const StateVector& s);

struct EntanglingResult {
  bool entangling = false;
  std::optional<StateVector> witness;  // product input mapped to an entangled output
  std::optional<SloccLabel> output;
  int trials = 0;
  // 2-qubit only: R = A x B or (A x B) SWAP up to 1e-10
  std::optional<bool> structurally_local;
};

EntanglingResult is_entangling(const DenseOperator& R, int trials = 200, std::uint64_t seed = 0xB41D);
// operator Schmidt rank 1 test on a 4x4 gate
bool is_local_2q(const DenseOperator& R, double tol = 1e-10);

// Sequence of stages; each stage is one 2x2 factor per site.
struct IloChain {
  std::vector<std::vector<Matrix>> stages;

  int sites() const;
  void validate(int n) const;  // throws SingularityError / DimensionError
  DenseOperator op() const;    // last stage outermost
  IloChain inverse() const;
  StateVector apply(const StateVector& s) const;
};

struct IloFit {
  bool equivalent = false;
  cplx scalar = 0.0;  // chain(a) ~ scalar * b
  double residual = 0.0;
};

IloFit ilo_equivalent(const StateVector& a, const IloChain& chain, const StateVector& b,
                      double tol = 1e-9);

// Chain L with L|psi> proportional to |000> + |111>, from the rank-one elements
// of the slice pencil. Throws if psi is not in the GHZ class.
IloChain ghz_reduction(const StateVector& psi);

struct GabcdFit {
  double residual = 0.0;  // relative, after least-squares onto the two-term span
  cplx c0 = 0.0, c1 = 0.0;
  std::optional<cplx> lambda;  // c1 / c0
};

// fit onto |0000>+|1111> and |0011>+|1100>
GabcdFit gabcd_fit(const StateVector& s);

// random invertible 2x2 per site, det bounded away from zero
IloChain random_ilo(int n, std::mt19937_64& rng);
Matrix random_unitary_2(std::mt19937_64& rng);

nlohmann::json to_json(const StateVector& s);
StateVector state_from_json(const nlohmann::json& j);

}  // namespace braidforge
