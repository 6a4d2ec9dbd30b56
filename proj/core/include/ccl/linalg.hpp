#pragma once

#include <Eigen/Dense>

#include <vector>

namespace ccl {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Numerical thresholds shared by every module. All values must be
/// strictly positive; `validate()` throws InvalidArgument otherwise.
struct ToleranceConfig {
  double eps_membership = 1e-9;
  double eps_rank = 1e-7;
  double eps_root_match = 1e-6;
  double generic_margin = 1e-6;

  void validate() const;
};

/// A linear subspace of R^n held by an orthonormal basis (the columns of
/// `basis()`, an n x dim matrix). dim 0 is the zero subspace.
class Subspace {
 public:
  Subspace() = default;

  // Throws InvalidArgument unless the columns are orthonormal within 1e-9.
  Subspace(int ambient_dim, Matrix orthonormal_columns);

  // Orthonormalizes an arbitrary spanning set (columns). Rank is decided
  // with eps_rank, so dependent columns are allowed.
  static Subspace span_of(int ambient_dim, const Matrix& columns,
                          const ToleranceConfig& tol = {});
  static Subspace full(int ambient_dim);
  static Subspace zero(int ambient_dim);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }

  Subspace orthogonal_complement(const ToleranceConfig& tol = {}) const;

  // Image under an orthogonal map.
  Subspace transformed(const Matrix& orthogonal) const;

 private:
  int ambient_dim_ = 0;
  Matrix basis_;
};

int rank(const Matrix& m, const ToleranceConfig& tol = {});

/// Dimension of the null space of a square matrix, counting singular
/// values below eps_rank as zero.
int kernel_dimension(const Matrix& m, const ToleranceConfig& tol = {});

/// P = B B^T for the orthonormal basis B of `s`.
Matrix orthogonal_projector(const Subspace& s);

/// Same subspace, compared via projectors.
bool same_subspace(const Subspace& a, const Subspace& b, double tol = 1e-8);

/// Factorizes once and solves many right-hand sides. Throws SingularMatrix
/// when the smallest singular value is not above eps_rank.
class LinearSolver {
 public:
  explicit LinearSolver(const Matrix& m, const ToleranceConfig& tol = {});

  // Throws InvalidArgument on a residual above 1e-8 * |v| (or on size
  // mismatch / non-finite input).
  Vector solve(const Vector& v) const;

  const Matrix& inverse() const { return inverse_; }

 private:
  Matrix m_;
  Matrix inverse_;
};

Vector solve_linear(const Matrix& m, const Vector& v,
                    const ToleranceConfig& tol = {});

bool all_finite(const Matrix& m);

/// max |M^T M - I|
double orthogonality_defect(const Matrix& m);

}  // namespace ccl
