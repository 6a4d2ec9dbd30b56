#include "ccl/linalg.hpp"

#include "ccl/errors.hpp"

#include <cmath>
#include <string>

namespace ccl {

namespace {

constexpr double kOrthonormalTol = 1e-9;
constexpr double kResidualTol = 1e-8;

void require_square_finite(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument(std::string(what) + ": matrix is not square");
  }
  if (!all_finite(m)) {
    throw InvalidArgument(std::string(what) + ": non-finite entry");
  }
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(eps_membership > 0) || !(eps_rank > 0) || !(eps_root_match > 0) ||
      !(generic_margin > 0)) {
    throw InvalidArgument("tolerances must be strictly positive");
  }
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

double orthogonality_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const Matrix d = m.transpose() * m - Matrix::Identity(m.cols(), m.cols());
  return d.cwiseAbs().maxCoeff();
}

Subspace::Subspace(int ambient_dim, Matrix orthonormal_columns)
    : ambient_dim_(ambient_dim), basis_(std::move(orthonormal_columns)) {
  if (basis_.cols() == 0) basis_.resize(ambient_dim, 0);
  if (basis_.rows() != ambient_dim) {
    throw InvalidArgument("subspace basis has wrong ambient dimension");
  }
  if (!all_finite(basis_) || orthogonality_defect(basis_) > kOrthonormalTol) {
    throw InvalidArgument("subspace basis is not orthonormal");
  }
}

Subspace Subspace::span_of(int ambient_dim, const Matrix& columns,
                           const ToleranceConfig& tol) {
  if (columns.cols() == 0) return zero(ambient_dim);
  if (columns.rows() != ambient_dim || !all_finite(columns)) {
    throw InvalidArgument("span_of: bad spanning set");
  }
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol.eps_rank) ++r;
  }
  return Subspace(ambient_dim, svd.matrixU().leftCols(r));
}

Subspace Subspace::full(int ambient_dim) {
  return Subspace(ambient_dim, Matrix::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::zero(int ambient_dim) {
  return Subspace(ambient_dim, Matrix(ambient_dim, 0));
}

Subspace Subspace::orthogonal_complement(const ToleranceConfig& tol) const {
  const Matrix q = Matrix::Identity(ambient_dim_, ambient_dim_) -
                   orthogonal_projector(*this);
  return span_of(ambient_dim_, q, tol);
}

Subspace Subspace::transformed(const Matrix& orthogonal) const {
  Matrix b = orthogonal * basis_;
  return Subspace(ambient_dim_, std::move(b));
}

int rank(const Matrix& m, const ToleranceConfig& tol) {
  if (m.size() == 0) return 0;
  if (!all_finite(m)) throw InvalidArgument("rank: non-finite entry");
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol.eps_rank) ++r;
  }
  return r;
}

int kernel_dimension(const Matrix& m, const ToleranceConfig& tol) {
  require_square_finite(m, "kernel_dimension");
  return static_cast<int>(m.cols()) - rank(m, tol);
}

Matrix orthogonal_projector(const Subspace& s) {
  const Matrix& b = s.basis();
  return b * b.transpose();
}

bool same_subspace(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  if (a.dim() == 0) return true;
  return (orthogonal_projector(a) - orthogonal_projector(b))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

LinearSolver::LinearSolver(const Matrix& m, const ToleranceConfig& tol)
    : m_(m) {
  require_square_finite(m, "solve_linear");
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() > 0 && !(sv(sv.size() - 1) > tol.eps_rank)) {
    throw SingularMatrix("solve_linear: matrix is singular (sigma_min = " +
                         std::to_string(sv(sv.size() - 1)) + ")");
  }
  inverse_ = svd.matrixV() * sv.cwiseInverse().asDiagonal() *
             svd.matrixU().transpose();
}

Vector LinearSolver::solve(const Vector& v) const {
  if (v.size() != m_.rows()) {
    throw InvalidArgument("solve_linear: dimension mismatch");
  }
  if (!v.allFinite()) throw InvalidArgument("solve_linear: non-finite rhs");
  Vector x = inverse_ * v;
  const double residual = (m_ * x - v).norm();
  if (residual > kResidualTol * std::max(v.norm(), 1e-300) && residual > 0) {
    throw InvalidArgument("solve_linear: residual " + std::to_string(residual) +
                          " exceeds tolerance");
  }
  return x;
}

Vector solve_linear(const Matrix& m, const Vector& v,
                    const ToleranceConfig& tol) {
  return LinearSolver(m, tol).solve(v);
}

}  // namespace ccl
