#include "tl_cases.hpp"

#include <braidforge/errors.hpp>
#include <braidforge/representations.hpp>

namespace braidforge::app {

namespace {

const cplx kI(0.0, 1.0);

Matrix diag2(cplx a, cplx b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Matrix id2() { return Matrix::Identity(2, 2); }

std::vector<Matrix> flip_2_4() { return {id2(), pauli_x(), id2(), pauli_x()}; }

IloChain quartic_scale(IloChain ch, cplx c0, cplx c1) {
  // principal complex root: negative bases are allowed
  Matrix d = diag2(std::pow(c0, -0.25), std::pow(c1, -0.25));
  ch.stages.push_back({d, d, d, d});
  return ch;
}

}  // namespace

const std::vector<TlCase>& tl_cases() {
  static const std::vector<TlCase> cases = {
      {"I", 2, {{1.0, 9}, {-1.0, 7}}},
      {"II", 4, {{-1.0, 4}, {kI, 3}, {-kI, 3}, {1.0, 6}}},
      {"III", 4, {{-1.0, 4}, {kI, 3}, {-kI, 3}, {1.0, 6}}},
      {"IV", 4, {{-1.0, 3}, {kI, 3}, {-kI, 3}, {1.0, 7}}},
      {"V", 4, {{-1.0, 3}, {kI, 3}, {-kI, 3}, {1.0, 7}}},
      {"VI", 2, {{1.0, 9}, {-1.0, 7}}},
      {"VII", 2, {{1.0, 10}, {-1.0, 6}}},
  };
  return cases;
}

ParameterPoint tl_case_point(const std::string& name, double Q) {
  const double D = Q + 1.0 / Q;
  const double a = -2.0 / D, g2 = 2.0 / (D * D);
  std::vector<cplx> v;
  if (name == "I") v = {0.0, 0.0, -g2};
  else if (name == "II") v = {0.0, a, 0.0};
  else if (name == "III") v = {a, 0.0, 0.0};
  else if (name == "IV") v = {0.0, a, g2};
  else if (name == "V") v = {a, 0.0, g2};
  else if (name == "VI") v = {a, a, g2};
  else if (name == "VII") v = {a, a, 2.0 * g2};
  else throw UnsupportedError("unknown Temperley-Lieb case '" + name + "'");
  return constrain(FamilyId::FTL4, v, Q);
}

Expansion tl_expansion(const std::string& name, double Q) {
  const double D = Q + 1.0 / Q, D2 = D * D, q = 1.0 / Q;
  if (name == "I") {
    return {
        {"0101", {{"0101", 1 - 2 * Q * Q / D2}, {"1010", -2 / D2}, {"0110", 2 * Q / D2}, {"1001", 2 * Q / D2}}},
        {"1010", {{"1010", 1 - 2 * q * q / D2}, {"0101", -2 / D2}, {"0110", 2 * q / D2}, {"1001", 2 * q / D2}}},
        {"0110", {{"1001", (Q * Q + q * q) / D2}, {"0110", -2 / D2}, {"0101", 2 * Q / D2}, {"1010", 2 * q / D2}}},
        {"1001", {{"0110", (Q * Q + q * q) / D2}, {"1001", -2 / D2}, {"0101", 2 * Q / D2}, {"1010", 2 * q / D2}}},
    };
  }
  if (name == "IV") {
    return {
        {"0101", {{"0101", 1 - 2 * Q / D + 2 * Q * Q / D2}, {"1010", 2 / D2}, {"0110", -2 * Q / D2}, {"1001", 2 * q / D2}}},
        {"1010", {{"1010", 1 - 2 * q / D + 2 * q * q / D2}, {"0101", 2 / D2}, {"0110", 2 * Q / D2}, {"1001", -2 * q / D2}}},
        {"0110", {{"1001", 1 - 2 * q / D + 2 / D2}, {"0110", 2 / D2}, {"0101", 2 * q / D2}, {"1010", -2 * q / D2}}},
        {"1001", {{"0110", 1 - 2 * Q / D + 2 / D2}, {"1001", 2 / D2}, {"1010", 2 * Q / D2}, {"0101", -2 * Q / D2}}},
    };
  }
  throw UnsupportedError("no printed expansion for case '" + name + "'");
}

IloChain case_I_chain(double Q) {
  const double D = Q + 1.0 / Q, D2 = D * D;
  IloChain ch;
  ch.stages.push_back(flip_2_4());
  return quartic_scale(ch, 1 - 2 * Q * Q / D2, -2 / D2);
}

IloChain case_I_chain_as_printed(double Q) {
  const double D = Q + 1.0 / Q, D2 = D * D;
  IloChain ch;
  ch.stages.push_back(flip_2_4());
  return quartic_scale(ch, 1 - 2 * Q / D2, -2 / D2);
}

IloChain case_IV_chain(double Q) {
  const double D = Q + 1.0 / Q, D2 = D * D;
  IloChain ch;
  ch.stages.push_back(flip_2_4());
  ch.stages.push_back({id2(), diag2(kI / Q, 1.0), diag2(-kI * Q, 1.0), id2()});
  return quartic_scale(ch, 1 - 2 * Q / D + 2 * Q * Q / D2, 2 / D2);
}

DenseOperator pair_exchange() { return swap_op(1, 3, 4) * swap_op(2, 4, 4); }
DenseOperator printed_conjugator() { return swap_op(1, 3, 4) * swap_op(2, 3, 4); }

}  // namespace braidforge::app
