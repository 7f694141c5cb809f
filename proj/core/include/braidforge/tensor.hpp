#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace braidforge {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr std::size_t kDefaultCapacity = std::size_t{1} << 14;
inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kClusterTol = 1e-7;

struct SiteLayout {
  int d = 2;
  int n = 0;
};

struct DenseOperator {
  Matrix m;
  std::optional<SiteLayout> layout;

  DenseOperator() = default;
  explicit DenseOperator(Matrix mat, std::optional<SiteLayout> lay = std::nullopt);

  static DenseOperator identity(int d, int n);
  static DenseOperator from_real(const std::vector<std::vector<double>>& rows,
                                 double scale = 1.0);

  Eigen::Index dim() const { return m.rows(); }
  DenseOperator operator*(const DenseOperator& o) const;
  DenseOperator operator+(const DenseOperator& o) const;
  DenseOperator operator-(const DenseOperator& o) const;
  DenseOperator scaled(cplx s) const;
  DenseOperator adjoint() const;
  DenseOperator inverse() const;
};

struct EigenCluster {
  cplx value;
  int multiplicity;
};

struct EigenMultiset {
  std::vector<EigenCluster> clusters;

  int total() const;
  std::string str() const;
};

struct Comparison {
  bool pass;
  double residual;
};

// Pauli matrices on a single site.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

DenseOperator kron(const DenseOperator& a, const DenseOperator& b,
                   std::size_t cap = kDefaultCapacity);
DenseOperator kron_all(const std::vector<Matrix>& factors,
                       std::size_t cap = kDefaultCapacity);
// first_site is 1-based; op must act on a whole number of d-dimensional sites
DenseOperator embed_at(const DenseOperator& op, int first_site, int n, int d = 2,
                       std::size_t cap = kDefaultCapacity);

EigenMultiset eigen_multiset(const DenseOperator& op, double tol = kClusterTol);
EigenMultiset make_multiset(const std::vector<cplx>& values, double tol = kClusterTol);
// equal cluster-for-cluster within tol
bool multiset_equal(const EigenMultiset& a, const EigenMultiset& b, double tol = kClusterTol);

Comparison approx_eq(const DenseOperator& a, const DenseOperator& b, double tol = kDefaultTol);
DenseOperator mat_power(const DenseOperator& op, unsigned n);

double frobenius(const Matrix& m);
double min_singular_value(const Matrix& m);

nlohmann::json to_json(const DenseOperator& op);
DenseOperator operator_from_json(const nlohmann::json& j);

}  // namespace braidforge
