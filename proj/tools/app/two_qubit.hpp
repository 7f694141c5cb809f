#pragma once

#include <optional>

#include <braidforge/tensor.hpp>

namespace braidforge::app {

// R / R(0,0) against [[1,0,0,0],[0,0,psi1,0],[0,psi2,0,0],[0,0,0,psi3]]
// with unit-modulus psi.
struct TemplateMatch {
  bool match = false;
  cplx scale = 1.0;  // the factor divided out
  cplx psi1 = 0.0, psi2 = 0.0, psi3 = 0.0;
  double zero_residual = 0.0;     // largest entry outside the pattern
  double modulus_residual = 0.0;  // largest ||psi| - 1|
};

TemplateMatch match_diag_antidiag(const DenseOperator& R, double tol = 1e-12);

// (Q x Q) R (Q x Q)^{-1} with Q = [[1,1],[1,-1]]
DenseOperator hadamard_pair_conjugate(const DenseOperator& R);

}  // namespace braidforge::app
