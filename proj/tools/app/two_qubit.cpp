#include "two_qubit.hpp"

#include <algorithm>
#include <cmath>

#include <braidforge/errors.hpp>

namespace braidforge::app {

TemplateMatch match_diag_antidiag(const DenseOperator& R, double tol) {
  if (R.dim() != 4) throw DimensionError("template match needs a 4x4 gate");
  TemplateMatch t;
  t.scale = R.m(0, 0);
  if (std::abs(t.scale) < tol) return t;
  Matrix n = R.m / t.scale;
  t.psi1 = n(1, 2);
  t.psi2 = n(2, 1);
  t.psi3 = n(3, 3);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      bool slot = (r == 0 && c == 0) || (r == 1 && c == 2) || (r == 2 && c == 1) || (r == 3 && c == 3);
      if (!slot) t.zero_residual = std::max(t.zero_residual, std::abs(n(r, c)));
    }
  for (cplx p : {t.psi1, t.psi2, t.psi3}) t.modulus_residual = std::max(t.modulus_residual, std::abs(std::abs(p) - 1.0));
  t.match = t.zero_residual <= tol && t.modulus_residual <= tol;
  return t;
}

DenseOperator hadamard_pair_conjugate(const DenseOperator& R) {
  Matrix q(2, 2);
  q << 1, 1, 1, -1;
  auto qq = kron_all({q, q});
  return qq * R * qq.inverse();
}

}  // namespace braidforge::app
