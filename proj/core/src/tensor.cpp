#include "braidforge/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "braidforge/diagram.hpp"
#include "braidforge/errors.hpp"

namespace braidforge {

DenseOperator::DenseOperator(Matrix mat, std::optional<SiteLayout> lay)
    : m(std::move(mat)), layout(lay) {
  if (m.rows() != m.cols())
    throw DimensionError("operator must be square, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  if (layout) {
    Eigen::Index want = 1;
    for (int s = 0; s < layout->n; ++s) want *= layout->d;
    if (want != m.rows()) throw DimensionError("layout does not match dimension");
  }
}

DenseOperator DenseOperator::identity(int d, int n) {
  Eigen::Index dim = 1;
  for (int s = 0; s < n; ++s) dim *= d;
  return DenseOperator(Matrix::Identity(dim, dim), SiteLayout{d, n});
}

DenseOperator DenseOperator::from_real(const std::vector<std::vector<double>>& rows,
                                       double scale) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (static_cast<Eigen::Index>(rows[r].size()) != n) throw DimensionError("ragged matrix");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = rows[r][c] * scale;
  }
  return DenseOperator(std::move(m));
}

namespace {

std::optional<SiteLayout> same_layout(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim())
    throw DimensionError("dimension mismatch " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  return a.layout ? a.layout : b.layout;
}

}  // namespace

DenseOperator DenseOperator::operator*(const DenseOperator& o) const {
  auto lay = same_layout(*this, o);
  return DenseOperator(m * o.m, lay);
}

DenseOperator DenseOperator::operator+(const DenseOperator& o) const {
  auto lay = same_layout(*this, o);
  return DenseOperator(m + o.m, lay);
}

DenseOperator DenseOperator::operator-(const DenseOperator& o) const {
  auto lay = same_layout(*this, o);
  return DenseOperator(m - o.m, lay);
}

DenseOperator DenseOperator::scaled(cplx s) const { return DenseOperator(m * s, layout); }

DenseOperator DenseOperator::adjoint() const { return DenseOperator(m.adjoint(), layout); }

DenseOperator DenseOperator::inverse() const {
  Eigen::PartialPivLU<Matrix> lu(m);
  if (min_singular_value(m) < 1e-13 * std::max(1.0, frobenius(m)))
    throw SingularityError("operator is singular");
  return DenseOperator(lu.inverse(), layout);
}

int EigenMultiset::total() const {
  int t = 0;
  for (const auto& c : clusters) t += c.multiplicity;
  return t;
}

std::string EigenMultiset::str() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const auto& c = clusters[i];
    double re = std::abs(c.value.real()) < 1e-12 ? 0.0 : c.value.real();
    double im = std::abs(c.value.imag()) < 1e-12 ? 0.0 : c.value.imag();
    os << (i ? ", " : "") << re;
    if (im != 0.0) os << (im > 0 ? "+" : "") << im << 'i';
    os << '(' << c.multiplicity << ')';
  }
  os << '}';
  return os.str();
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b, std::size_t cap) {
  const auto da = static_cast<std::size_t>(a.dim());
  const auto db = static_cast<std::size_t>(b.dim());
  if (da != 0 && db > cap / da)
    throw CapacityError("kron dimension " + std::to_string(da) + "*" + std::to_string(db) +
                        " exceeds cap " + std::to_string(cap));
  Matrix out(a.dim() * b.dim(), a.dim() * b.dim());
  for (Eigen::Index r = 0; r < a.dim(); ++r)
    for (Eigen::Index c = 0; c < a.dim(); ++c)
      out.block(r * b.dim(), c * b.dim(), b.dim(), b.dim()) = a.m(r, c) * b.m;
  std::optional<SiteLayout> lay;
  if (a.layout && b.layout && a.layout->d == b.layout->d)
    lay = SiteLayout{a.layout->d, a.layout->n + b.layout->n};
  return DenseOperator(std::move(out), lay);
}

DenseOperator kron_all(const std::vector<Matrix>& factors, std::size_t cap) {
  DenseOperator acc(Matrix::Identity(1, 1), SiteLayout{2, 0});
  for (const auto& f : factors) {
    std::optional<SiteLayout> lay;
    if (f.rows() == 2) lay = SiteLayout{2, 1};
    acc = kron(acc, DenseOperator(f, lay), cap);
  }
  return acc;
}

DenseOperator embed_at(const DenseOperator& op, int first_site, int n, int d, std::size_t cap) {
  int support = 0;
  for (Eigen::Index dim = 1; dim < op.dim(); dim *= d) ++support;
  Eigen::Index check = 1;
  for (int s = 0; s < support; ++s) check *= d;
  if (check != op.dim()) throw DimensionError("operator is not a whole number of sites");
  if (first_site < 1 || first_site + support - 1 > n)
    throw DimensionError("support of " + std::to_string(support) + " sites at site " +
                         std::to_string(first_site) + " exceeds n=" + std::to_string(n));
  auto left = DenseOperator::identity(d, first_site - 1);
  auto right = DenseOperator::identity(d, n - first_site - support + 1);
  DenseOperator mid(op.m, SiteLayout{d, support});
  return kron(kron(left, mid, cap), right, cap);
}

EigenMultiset make_multiset(const std::vector<cplx>& values, double tol) {
  const int n = static_cast<int>(values.size());
  UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(values[i] - values[j]) <= tol) uf.unite(i, j);
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);
  EigenMultiset out;
  for (const auto& [root, members] : groups) {
    cplx sum = 0;
    for (int i : members) sum += values[i];
    out.clusters.push_back({sum / static_cast<double>(members.size()),
                            static_cast<int>(members.size())});
  }
  auto key = [](const cplx& v) {
    return std::make_pair(std::llround(v.real() * 1e6), std::llround(v.imag() * 1e6));
  };
  std::sort(out.clusters.begin(), out.clusters.end(),
            [&](const EigenCluster& a, const EigenCluster& b) { return key(a.value) < key(b.value); });
  return out;
}

EigenMultiset eigen_multiset(const DenseOperator& op, double tol) {
  Eigen::ComplexEigenSolver<Matrix> es(op.m, false);
  if (es.info() != Eigen::Success)
    throw NumericalError("eigenvalue iteration did not converge (dim " +
                         std::to_string(op.dim()) + ")");
  std::vector<cplx> vals(es.eigenvalues().data(), es.eigenvalues().data() + op.dim());
  return make_multiset(vals, tol);
}

bool multiset_equal(const EigenMultiset& a, const EigenMultiset& b, double tol) {
  if (a.clusters.size() != b.clusters.size() || a.total() != b.total()) return false;
  std::vector<bool> used(b.clusters.size(), false);
  for (const auto& ca : a.clusters) {
    bool found = false;
    for (std::size_t j = 0; j < b.clusters.size(); ++j) {
      if (used[j]) continue;
      if (b.clusters[j].multiplicity == ca.multiplicity &&
          std::abs(b.clusters[j].value - ca.value) <= tol) {
        used[j] = found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

double frobenius(const Matrix& m) { return m.norm(); }

double min_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

Comparison approx_eq(const DenseOperator& a, const DenseOperator& b, double tol) {
  if (a.dim() != b.dim()) throw DimensionError("approx_eq: dimension mismatch");
  double r = (a.m - b.m).norm();
  return {r <= tol * std::max(1.0, a.m.norm()), r};
}

DenseOperator mat_power(const DenseOperator& op, unsigned n) {
  Matrix result = Matrix::Identity(op.dim(), op.dim());
  Matrix base = op.m;
  while (n) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return DenseOperator(std::move(result), op.layout);
}

nlohmann::json to_json(const DenseOperator& op) {
  nlohmann::json j;
  j["dim"] = op.dim();
  if (op.layout) {
    j["d"] = op.layout->d;
    j["n"] = op.layout->n;
  }
  auto& e = j["entries"] = nlohmann::json::array();
  for (Eigen::Index r = 0; r < op.dim(); ++r)
    for (Eigen::Index c = 0; c < op.dim(); ++c) e.push_back({op.m(r, c).real(), op.m(r, c).imag()});
  return j;
}

DenseOperator operator_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
    throw DimensionError("operator JSON needs dim and entries");
  const auto dim = j.at("dim").get<Eigen::Index>();
  const auto& e = j.at("entries");
  if (dim <= 0 || !e.is_array() || static_cast<Eigen::Index>(e.size()) != dim * dim)
    throw DimensionError("operator JSON: entries do not match dim");
  Matrix m(dim, dim);
  for (Eigen::Index k = 0; k < dim * dim; ++k) {
    const auto& z = e[static_cast<std::size_t>(k)];
    if (!z.is_array() || z.size() != 2) throw DimensionError("entry must be [re, im]");
    m(k / dim, k % dim) = cplx(z[0].get<double>(), z[1].get<double>());
  }
  std::optional<SiteLayout> lay;
  if (j.contains("d") && j.contains("n")) lay = SiteLayout{j.at("d").get<int>(), j.at("n").get<int>()};
  return DenseOperator(std::move(m), lay);
}

}  // namespace braidforge
