#include "braidforge/verifier.hpp"

#include <cmath>

#include "braidforge/errors.hpp"

namespace braidforge {

namespace {

int site_count(Eigen::Index dim, int d) {
  int n = 0;
  Eigen::Index x = 1;
  while (x < dim) {
    x *= d;
    ++n;
  }
  if (x != dim) throw DimensionError("dimension is not a power of d");
  return n;
}

nlohmann::json cplx_json(cplx z) { return {z.real(), z.imag()}; }

}  // namespace

nlohmann::json GybeReport::to_json() const {
  return {{"check", "gybe"},
          {"inputs", {{"d", d}, {"m", m}, {"l", l}}},
          {"residual", residual},
          {"tolerance", tolerance},
          {"pass", pass},
          {"details", {{"dims", dims}}}};
}

GybeReport check_gybe(const DenseOperator& R, int d, int m, int l, double tol, std::size_t cap) {
  if (site_count(R.dim(), d) != m)
    throw DimensionError("R has dimension " + std::to_string(R.dim()) + ", expected d^m");
  if (l < 1 || l > m) throw DimensionError("gYBE needs 1 <= l <= m");
  const int n = m + l;
  auto A = embed_at(R, 1, n, d, cap);
  auto B = embed_at(R, 1 + l, n, d, cap);
  Matrix lhs = A.m * B.m * A.m;
  Matrix rhs = B.m * A.m * B.m;
  GybeReport rep;
  rep.d = d;
  rep.m = m;
  rep.l = l;
  rep.tolerance = tol;
  rep.dims = lhs.rows();
  rep.residual = (lhs - rhs).norm() / std::max(lhs.norm(), 1e-12);
  rep.pass = rep.residual <= tol;
  return rep;
}

CommuteReport check_far_commutativity(const DenseOperator& R, int d, int m, int l, int shift,
                                      double tol, std::size_t cap) {
  if (site_count(R.dim(), d) != m) throw DimensionError("R does not act on m sites");
  (void)l;
  CommuteReport rep;
  rep.shift = shift;
  rep.sites = m + shift;
  auto A = embed_at(R, 1, rep.sites, d, cap);
  auto B = embed_at(R, 1 + shift, rep.sites, d, cap);
  Matrix ab = A.m * B.m;
  rep.residual = (ab - B.m * A.m).norm() / std::max(ab.norm(), 1e-12);
  rep.pass = rep.residual <= tol;
  return rep;
}

UnitaryReport check_unitary(const DenseOperator& R, double tol) {
  Matrix g = R.m.adjoint() * R.m - Matrix::Identity(R.dim(), R.dim());
  UnitaryReport rep;
  rep.residual = g.norm() / std::sqrt(static_cast<double>(R.dim()));
  rep.pass = rep.residual <= tol;
  return rep;
}

std::optional<int> braid_order(const DenseOperator& R, int n_max, double tol, bool projective) {
  const auto dim = R.dim();
  const double bound = tol * std::sqrt(static_cast<double>(dim));
  Matrix P = Matrix::Identity(dim, dim);
  for (int n = 1; n <= n_max; ++n) {
    P = P * R.m;
    cplx c = 1.0;
    if (projective) c = P.trace() / static_cast<double>(dim);
    if ((P - c * Matrix::Identity(dim, dim)).norm() <= bound) return n;
  }
  return std::nullopt;
}

nlohmann::json SpectralObstruction::to_json() const {
  nlohmann::json j{{"check", "spectral_obstruction"},
                   {"inputs", {{"a", a.str()}, {"b", b.str()}}},
                   {"pass", obstructed},
                   {"details",
                    {{"verdict", obstructed ? "obstructed" : "possibly-equivalent"},
                     {"candidates_tried", candidates_tried},
                     {"via_inversion", via_inversion}}}};
  if (scalar) j["details"]["scalar"] = cplx_json(*scalar);
  return j;
}

SpectralObstruction spectral_obstruction(const EigenMultiset& a, const EigenMultiset& b,
                                         bool allow_inversion, double tol) {
  if (a.total() != b.total())
    throw DimensionError("spectral_obstruction: multiplicity totals differ");
  SpectralObstruction out;
  out.a = a;
  out.b = b;
  auto try_map = [&](const EigenMultiset& src, bool inverted) {
    for (const auto& ca : src.clusters) {
      if (std::abs(ca.value) < 1e-14) continue;
      for (const auto& cb : b.clusters) {
        cplx lambda = cb.value / ca.value;
        // unit scalars only: multiplication must not change moduli
        if (std::abs(std::abs(lambda) - 1.0) > tol) continue;
        ++out.candidates_tried;
        EigenMultiset mapped;
        for (const auto& c : src.clusters) mapped.clusters.push_back({lambda * c.value, c.multiplicity});
        if (multiset_equal(mapped, b, tol)) {
          out.obstructed = false;
          out.scalar = lambda;
          out.via_inversion = inverted;
          return true;
        }
      }
    }
    return false;
  };
  if (try_map(a, false)) return out;
  if (allow_inversion) {
    EigenMultiset inv;
    for (const auto& c : a.clusters) {
      if (std::abs(c.value) < 1e-14) return out;
      inv.clusters.push_back({1.0 / c.value, c.multiplicity});
    }
    try_map(inv, true);
  }
  return out;
}

DenseOperator ilo_conjugate(const DenseOperator& R, const std::vector<Matrix>& factors) {
  auto A = kron_all(factors);
  if (A.dim() != R.dim()) throw DimensionError("ILO factors do not match R");
  return DenseOperator(A.m * R.m * A.inverse().m, R.layout);
}

}  // namespace braidforge
