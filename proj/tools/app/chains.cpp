#include "chains.hpp"

#include <braidforge/errors.hpp>

namespace braidforge::app {

namespace {

const cplx kI(0.0, 1.0);

Matrix m2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

IloChain t2_chain(int row) {
  const double a1 = 1, a2 = 1, b1 = 1, b2 = 1;
  Matrix A = m2(a1, b1, kI * a1, -kI * b1);
  Matrix B = m2(a2, b2, -kI * a2, kI * b2);
  Matrix C = m2(kI / (4 * a1 * a2), -kI / (4 * b1 * b2), -1 / (4 * a1 * a2), -1 / (4 * b1 * b2));
  IloChain L;
  L.stages.push_back({A, B, C});
  IloChain out = L.inverse();
  const Matrix one = Matrix::Identity(2, 2);
  const Matrix s = m2(1, 0, 0, kI);            // phase gate
  const Matrix rx_m = m2(1, -kI, -kI, 1);      // H S H up to scale
  const Matrix rx_p = m2(1, kI, kI, 1);        // S H S up to scale
  const Matrix x = m2(0, 1, 1, 0);
  std::vector<Matrix> u;
  switch (row) {
    case 1: return out;
    case 2: u = {rx_m, s, rx_m}; break;
    case 3: u = {rx_p, s, rx_m}; break;
    case 4: u = {x, one, one}; break;
    default: throw DimensionError("GHZ table has rows 1-4");
  }
  std::vector<Matrix> undo;
  for (const auto& f : u) undo.push_back(f.inverse());
  out.stages.insert(out.stages.begin(), undo);
  return out;
}

IloChain t5_chain() {
  const double a1 = 1, a2 = 1, b1 = 1, b2 = 1;
  Matrix A = m2(a1, b1, kI * a1, -kI * b1);
  Matrix B = m2(a2, b2, kI * a2, -kI * b2);
  Matrix C = m2(-1 / (4 * a1 * a2), -1 / (4 * b1 * b2), kI / (4 * a1 * a2), -kI / (4 * b1 * b2));
  IloChain L;
  L.stages.push_back({A, B, C});
  return L.inverse();
}

}  // namespace braidforge::app
