#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "braidforge/tensor.hpp"

namespace braidforge {

struct GybeReport {
  int d = 2, m = 0, l = 0;
  double residual = 0.0;  // relative to ||LHS||_F, floor 1e-12
  double tolerance = kDefaultTol;
  bool pass = false;
  Eigen::Index dims = 0;

  nlohmann::json to_json() const;
};

struct CommuteReport {
  int shift = 0;
  int sites = 0;
  double residual = 0.0;
  bool pass = false;
};

struct UnitaryReport {
  double residual = 0.0;  // ||R^dagger R - I||_F / sqrt(dim)
  bool pass = false;
};

GybeReport check_gybe(const DenseOperator& R, int d, int m, int l, double tol = kDefaultTol,
                      std::size_t cap = kDefaultCapacity);
CommuteReport check_far_commutativity(const DenseOperator& R, int d, int m, int l, int shift,
                                      double tol = kDefaultTol,
                                      std::size_t cap = kDefaultCapacity);
UnitaryReport check_unitary(const DenseOperator& R, double tol = kDefaultTol);

// Smallest n <= n_max with R^n = 1; with projective set, R^n = c*1 for some c.
std::optional<int> braid_order(const DenseOperator& R, int n_max = 64, double tol = kDefaultTol,
                               bool projective = false);

struct SpectralObstruction {
  EigenMultiset a, b;
  bool obstructed = true;
  std::optional<cplx> scalar;  // witness lambda with lambda*a = b (or lambda/a = b)
  bool via_inversion = false;
  int candidates_tried = 0;

  nlohmann::json to_json() const;
};

SpectralObstruction spectral_obstruction(const EigenMultiset& a, const EigenMultiset& b,
                                         bool allow_inversion = true,
                                         double tol = kClusterTol);

// (A_1 x ... x A_m) R (A_1 x ... x A_m)^{-1}
DenseOperator ilo_conjugate(const DenseOperator& R, const std::vector<Matrix>& factors);

}  // namespace braidforge
