#include "braidforge/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "braidforge/errors.hpp"
#include "braidforge/representations.hpp"

namespace braidforge {

StateVector::StateVector(int qubits, Vector a) : n(qubits), amps(std::move(a)) {
  if (n < 1 || n > 20) throw DimensionError("state needs 1..20 qubits");
  if (amps.size() != (Eigen::Index{1} << n))
    throw DimensionError("state has " + std::to_string(amps.size()) + " amplitudes, expected 2^" +
                         std::to_string(n));
}

StateVector StateVector::basis(int n, std::uint64_t index) {
  if (n < 1 || n > 20 || index >= (std::uint64_t{1} << n)) throw DimensionError("basis index out of range");
  Vector v = Vector::Zero(Eigen::Index{1} << n);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(n, std::move(v));
}

StateVector StateVector::from_bits(const std::string& bits) {
  if (bits.empty()) throw DimensionError("empty bitstring");
  std::uint64_t idx = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw DimensionError("bitstring may only contain 0 and 1: '" + bits + "'");
    idx = idx * 2 + static_cast<std::uint64_t>(c - '0');
  }
  return basis(static_cast<int>(bits.size()), idx);
}

StateVector StateVector::product(const std::vector<Vector>& sites) {
  if (sites.empty()) throw DimensionError("product state needs at least one site");
  Vector v = Vector::Ones(1);
  for (const auto& s : sites) {
    if (s.size() != 2) throw DimensionError("product factors must be 2-vectors");
    Vector w(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      w(2 * i) = v(i) * s(0);
      w(2 * i + 1) = v(i) * s(1);
    }
    v = std::move(w);
  }
  return StateVector(static_cast<int>(sites.size()), std::move(v));
}

StateVector StateVector::normalized() const {
  double nr = norm();
  if (nr < 1e-300) throw NumericalError("cannot normalize the zero state");
  return StateVector(n, amps / nr);
}

namespace {

std::string fmt_real(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

std::string StateVector::ket(double tol) const {
  std::string out;
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    cplx c = amps(i);
    if (std::abs(c) <= tol) continue;
    std::string bits(n, '0');
    for (int s = 0; s < n; ++s)
      if ((i >> (n - 1 - s)) & 1) bits[s] = '1';
    std::string coef;
    bool neg = false;
    if (std::abs(c.imag()) <= tol) {
      neg = c.real() < 0;
      coef = fmt_real(std::abs(c.real()));
    } else if (std::abs(c.real()) <= tol) {
      neg = c.imag() < 0;
      coef = fmt_real(std::abs(c.imag())) + "i";
    } else {
      coef = "(" + fmt_real(c.real()) + (c.imag() < 0 ? "-" : "+") + fmt_real(std::abs(c.imag())) + "i)";
    }
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    out += coef + "|" + bits + ">";
  }
  return out.empty() ? "0" : out;
}

StateVector apply_gate(const DenseOperator& R, const StateVector& s) {
  if (R.dim() != s.amps.size())
    throw DimensionError("gate dimension " + std::to_string(R.dim()) + " does not match state " +
                         std::to_string(s.amps.size()));
  return StateVector(s.n, R.m * s.amps);
}

int schmidt_profile(const StateVector& s, const std::vector<int>& subset, double tol) {
  std::vector<int> sub = subset;
  std::sort(sub.begin(), sub.end());
  sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
  if (sub.empty() || static_cast<int>(sub.size()) >= s.n)
    throw DimensionError("bipartition must be a nonempty proper subset");
  for (int x : sub)
    if (x < 1 || x > s.n) throw DimensionError("site " + std::to_string(x) + " out of range");
  std::vector<int> rest;
  for (int x = 1; x <= s.n; ++x)
    if (!std::binary_search(sub.begin(), sub.end(), x)) rest.push_back(x);
  const Eigen::Index rows = Eigen::Index{1} << sub.size(), cols = Eigen::Index{1} << rest.size();
  Matrix M(rows, cols);
  for (Eigen::Index idx = 0; idx < s.amps.size(); ++idx) {
    Eigen::Index r = 0, c = 0;
    for (int x : sub) r = r * 2 + ((idx >> (s.n - x)) & 1);
    for (int x : rest) c = c * 2 + ((idx >> (s.n - x)) & 1);
    M(r, c) = s.amps(idx);
  }
  Eigen::JacobiSVD<Matrix> svd(M);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank;
}

const char* to_string(Coarse4 c) {
  switch (c) {
    case Coarse4::FullyProduct: return "FullyProduct";
    case Coarse4::BellTimesSep: return "BellTimesSep";
    case Coarse4::BellTimesBell: return "BellTimesBell";
    case Coarse4::GenuineMultipartite: return "GenuineMultipartite";
  }
  return "?";
}

bool SloccLabel::fully_product() const {
  return label == "Product" || label == "A-B-C" || label == "FullyProduct" || label == "product";
}

nlohmann::json SloccLabel::to_json() const {
  nlohmann::json j{{"n", n}, {"label", label}, {"ranks", ranks}};
  if (tangle) j["three_tangle"] = *tangle;
  if (coarse) j["coarse"] = to_string(*coarse);
  if (!bell_pairs.empty()) {
    auto& b = j["bell_pairs"] = nlohmann::json::array();
    for (auto [i, k] : bell_pairs) b.push_back({i, k});
  }
  return j;
}

SloccLabel slocc_2q(const StateVector& s, double tol) {
  if (s.n != 2) throw DimensionError("slocc_2q needs 2 qubits");
  auto v = s.normalized().amps;
  cplx det = v(0) * v(3) - v(1) * v(2);
  SloccLabel l;
  l.n = 2;
  l.label = std::abs(det) <= tol ? "Product" : "Bell";
  l.ranks = {l.label == "Product" ? 1 : 2};
  return l;
}

double three_tangle(const StateVector& s) {
  if (s.n != 3) throw DimensionError("three_tangle needs 3 qubits");
  auto v = s.normalized().amps;
  auto a = [&](int i, int j, int k) { return v(4 * i + 2 * j + k); };
  cplx d1 = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) + a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
            a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) + a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
  cplx d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
            a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
            a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
  cplx d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

SloccLabel slocc_3q(const StateVector& s, double tol) {
  if (s.n != 3) throw DimensionError("slocc_3q needs 3 qubits");
  SloccLabel l;
  l.n = 3;
  int ra = schmidt_profile(s, {1}), rb = schmidt_profile(s, {2}), rc = schmidt_profile(s, {3});
  l.ranks = {ra, rb, rc};
  int ones = (ra == 1) + (rb == 1) + (rc == 1);
  if (ones == 3) {
    l.label = "A-B-C";
  } else if (ones == 1) {
    l.label = ra == 1 ? "A-BC" : rc == 1 ? "AB-C" : "AC-B";
  } else if (ones == 0) {
    l.tangle = three_tangle(s);
    l.label = *l.tangle > tol ? "GHZ" : "W";
  } else {
    // two rank-1 cuts force the third: numerically inconsistent input
    throw NumericalError("inconsistent local ranks for a 3-qubit state");
  }
  return l;
}

SloccLabel profile_4q(const StateVector& s, double tol) {
  if (s.n != 4) throw DimensionError("profile_4q needs 4 qubits");
  SloccLabel l;
  l.n = 4;
  const std::vector<std::vector<int>> cuts = {{1}, {2}, {3}, {4}, {1, 2}, {1, 3}, {1, 4}};
  for (const auto& c : cuts) l.ranks.push_back(schmidt_profile(s, c, tol));
  auto single = [&](int i) { return l.ranks[i - 1]; };
  // rank of the cut {i,j} | rest
  auto pair_rank = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    if (i == 1) return l.ranks[3 + j - 1];
    // {i,j} with i,j in {2,3,4}: complement contains site 1
    int other = 2 + 3 + 4 - i - j;
    return l.ranks[3 + other - 1];
  };
  auto done = [&](Coarse4 c) {
    l.coarse = c;
    l.label = to_string(c);
    return l;
  };
  if (std::all_of(l.ranks.begin(), l.ranks.end(), [](int r) { return r == 1; }))
    return done(Coarse4::FullyProduct);

  const std::vector<std::pair<int, int>> pairs = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  // Bell pair on (i,j) with the other two sites each unentangled
  for (auto [i, j] : pairs) {
    if (pair_rank(i, j) != 1 || single(i) != 2 || single(j) != 2) continue;
    std::vector<int> others;
    for (int x = 1; x <= 4; ++x)
      if (x != i && x != j) others.push_back(x);
    if (single(others[0]) == 1 && single(others[1]) == 1) {
      l.bell_pairs = {{i, j}};
      return done(Coarse4::BellTimesSep);
    }
  }
  for (auto [i, j] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{1, 4}}) {
    if (pair_rank(i, j) != 1) continue;
    std::vector<int> others;
    for (int x = 1; x <= 4; ++x)
      if (x != i && x != j) others.push_back(x);
    if (single(1) == 2 && single(2) == 2 && single(3) == 2 && single(4) == 2) {
      l.bell_pairs = {{i, j}, {others[0], others[1]}};
      return done(Coarse4::BellTimesBell);
    }
  }
  return done(Coarse4::GenuineMultipartite);
}

SloccLabel classify(const StateVector& s) {
  switch (s.n) {
    case 2: return slocc_2q(s);
    case 3: return slocc_3q(s);
    case 4: return profile_4q(s);
    default: break;
  }
  SloccLabel l;
  l.n = s.n;
  bool product = true;
  if (s.n > 1) {
    for (int x = 1; x <= s.n; ++x) {
      l.ranks.push_back(schmidt_profile(s, {x}));
      product = product && l.ranks.back() == 1;
    }
  }
  l.label = product ? "product" : "entangled";
  return l;
}

bool is_local_2q(const DenseOperator& R, double tol) {
  if (R.dim() != 4) throw DimensionError("is_local_2q needs a 4x4 gate");
  auto realigned_rank_one = [&](const Matrix& U) {
    // U(i1 i2, j1 j2) -> M(i1 j1, i2 j2)
    Matrix M(4, 4);
    for (int i1 = 0; i1 < 2; ++i1)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int j1 = 0; j1 < 2; ++j1)
          for (int j2 = 0; j2 < 2; ++j2) M(2 * i1 + j1, 2 * i2 + j2) = U(2 * i1 + i2, 2 * j1 + j2);
    Eigen::JacobiSVD<Matrix> svd(M);
    const auto& sv = svd.singularValues();
    return sv(0) > 0 && sv(1) <= tol * sv(0);
  };
  return realigned_rank_one(R.m) || realigned_rank_one(R.m * swap_op(1, 2, 2).m);
}

EntanglingResult is_entangling(const DenseOperator& R, int trials, std::uint64_t seed) {
  int n = 0;
  while ((Eigen::Index{1} << n) < R.dim()) ++n;
  if ((Eigen::Index{1} << n) != R.dim() || n < 1) throw DimensionError("gate is not a qubit operator");
  EntanglingResult res;
  if (n == 1) return res;
  auto test = [&](const StateVector& in) {
    ++res.trials;
    auto out = apply_gate(R, in);
    if (out.norm() < 1e-14) return false;
    auto lab = classify(out);
    if (lab.fully_product()) return false;
    res.entangling = true;
    res.witness = in;
    res.output = lab;
    return true;
  };
  bool found = false;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n) && !found; ++b) found = test(StateVector::basis(n, b));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  for (int t = 0; t < trials && !found; ++t) {
    std::vector<Vector> f;
    for (int s = 0; s < n; ++s) {
      Vector v(2);
      v << cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng));
      f.push_back(v.normalized());
    }
    found = test(StateVector::product(f));
  }
  if (n == 2) res.structurally_local = is_local_2q(R);
  return res;
}

int IloChain::sites() const { return stages.empty() ? 0 : static_cast<int>(stages.front().size()); }

void IloChain::validate(int n) const {
  for (const auto& st : stages) {
    if (static_cast<int>(st.size()) != n)
      throw DimensionError("ILO stage has " + std::to_string(st.size()) + " factors, state has " +
                           std::to_string(n) + " sites");
    for (const auto& f : st) {
      if (f.rows() != 2 || f.cols() != 2) throw DimensionError("ILO factors must be 2x2");
      if (std::abs(f.determinant()) < 1e-14) throw SingularityError("singular ILO factor");
    }
  }
}

DenseOperator IloChain::op() const {
  if (stages.empty()) throw DimensionError("empty ILO chain");
  validate(sites());
  DenseOperator out = kron_all(stages.front());
  for (std::size_t i = 1; i < stages.size(); ++i) out = kron_all(stages[i]) * out;
  return out;
}

IloChain IloChain::inverse() const {
  validate(sites());
  IloChain inv;
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    std::vector<Matrix> st;
    for (const auto& f : *it) st.push_back(f.inverse());
    inv.stages.push_back(std::move(st));
  }
  return inv;
}

StateVector IloChain::apply(const StateVector& s) const {
  validate(s.n);
  StateVector cur = s;
  for (const auto& st : stages) cur = apply_gate(kron_all(st), cur);
  return cur;
}

IloFit ilo_equivalent(const StateVector& a, const IloChain& chain, const StateVector& b, double tol) {
  if (a.n != b.n) throw DimensionError("states have different qubit counts");
  auto t = chain.stages.empty() ? a : chain.apply(a);
  IloFit fit;
  double bb = b.amps.squaredNorm();
  if (bb < 1e-300) throw DimensionError("target state is zero");
  fit.scalar = b.amps.dot(t.amps) / bb;  // dot conjugates the left operand
  double tn = t.amps.norm();
  fit.residual = tn < 1e-300 ? 1.0 : (t.amps - fit.scalar * b.amps).norm() / tn;
  fit.equivalent = fit.residual <= tol && std::abs(fit.scalar) > 1e-300;
  return fit;
}

IloChain ghz_reduction(const StateVector& psi) {
  if (psi.n != 3) throw DimensionError("ghz_reduction needs 3 qubits");
  auto v = psi.normalized().amps;
  Matrix M0(2, 2), M1(2, 2);
  M0 << v(0), v(1), v(2), v(3);
  M1 << v(4), v(5), v(6), v(7);
  // det(x0 M0 + x1 M1) = x0^2 d0 + x0 x1 c + x1^2 d1
  cplx d0 = M0.determinant(), d1 = M1.determinant();
  cplx c = (M0 + M1).determinant() - d0 - d1;
  if (std::abs(c * c - 4.0 * d0 * d1) < 1e-10)
    throw ConstraintError("state is not in the GHZ class (vanishing hyperdeterminant)");
  Matrix X(2, 2);
  if (std::max(std::abs(d0), std::abs(d1)) < 1e-13) {
    X << 1.0, 0.0, 0.0, 1.0;
  } else if (std::abs(d1) >= std::abs(d0)) {
    cplx sq = std::sqrt(c * c - 4.0 * d1 * d0);
    X << 1.0, (-c + sq) / (2.0 * d1), 1.0, (-c - sq) / (2.0 * d1);
  } else {
    cplx sq = std::sqrt(c * c - 4.0 * d0 * d1);
    X << (-c + sq) / (2.0 * d0), 1.0, (-c - sq) / (2.0 * d0), 1.0;
  }
  Matrix C = X.inverse();
  Matrix a(2, 2), b(2, 2), cc(2, 2);
  for (int j = 0; j < 2; ++j) {
    Matrix N = X(j, 0) * M0 + X(j, 1) * M1;
    // N = b c^T
    Eigen::Index col = N.col(0).norm() >= N.col(1).norm() ? 0 : 1;
    Vector bj = N.col(col);
    Eigen::Index r = std::abs(bj(0)) >= std::abs(bj(1)) ? 0 : 1;
    Vector cj = N.row(r).transpose() / bj(r);
    a.col(j) = C.col(j);
    b.col(j) = bj;
    cc.col(j) = cj;
  }
  IloChain out;
  out.stages.push_back({a.inverse(), b.inverse(), cc.inverse()});
  out.validate(3);
  return out;
}

GabcdFit gabcd_fit(const StateVector& s) {
  if (s.n != 4) throw DimensionError("gabcd_fit needs 4 qubits");
  Matrix A = Matrix::Zero(16, 2);
  A(0, 0) = A(15, 0) = 1.0;
  A(3, 1) = A(12, 1) = 1.0;
  Vector c = A.colPivHouseholderQr().solve(s.amps);
  GabcdFit f;
  f.c0 = c(0);
  f.c1 = c(1);
  double nr = s.amps.norm();
  f.residual = nr < 1e-300 ? 1.0 : (A * c - s.amps).norm() / nr;
  if (std::abs(f.c0) > 1e-12) f.lambda = f.c1 / f.c0;
  return f;
}

Matrix random_unitary_2(std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Matrix g(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = cplx(nd(rng), nd(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ();
}

IloChain random_ilo(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  IloChain ch;
  std::vector<Matrix> st;
  for (int s = 0; s < n; ++s) {
    Matrix g(2, 2);
    do {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = cplx(nd(rng), nd(rng));
    } while (std::abs(g.determinant()) < 0.2);
    st.push_back(g);
  }
  ch.stages.push_back(std::move(st));
  return ch;
}

nlohmann::json to_json(const StateVector& s) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < s.amps.size(); ++i) a.push_back({s.amps(i).real(), s.amps(i).imag()});
  return {{"n", s.n}, {"amplitudes", a}};
}

StateVector state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("amplitudes"))
    throw DimensionError("state JSON needs n and amplitudes");
  int n = j.at("n").get<int>();
  const auto& a = j.at("amplitudes");
  if (n < 1 || n > 20 || a.size() != (std::size_t{1} << n)) throw DimensionError("state JSON size mismatch");
  Vector v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_array() || a[i].size() != 2) throw DimensionError("amplitudes must be [re, im] pairs");
    v(static_cast<Eigen::Index>(i)) = cplx(a[i][0].get<double>(), a[i][1].get<double>());
  }
  return StateVector(n, std::move(v));
}

}  // namespace braidforge
