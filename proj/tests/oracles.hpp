#pragma once
// Independent reference computations used only by tests. Nothing here goes
// through the library's exact angle or chamber code paths.

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

namespace ccl::testing {

// Van Oosterom-Strackee: solid angle of the triangular cone on unit vectors
// a, b, c in R^3, divided by 4 pi.
inline double triangle_cone_fraction(Eigen::Vector3d a, Eigen::Vector3d b, Eigen::Vector3d c) {
  a.normalize();
  b.normalize();
  c.normalize();
  const double num = std::abs(a.dot(b.cross(c)));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  double omega = 2.0 * std::atan2(num, den);
  if (omega < 0) omega += 2.0 * std::numbers::pi;
  return omega / (4.0 * std::numbers::pi);
}

inline Eigen::Matrix2d rotation2(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

// Reflection across the line through the origin at angle `angle`.
inline Eigen::Matrix2d line_reflection2(double angle) {
  Eigen::Matrix2d r;
  r << std::cos(2 * angle), std::sin(2 * angle), std::sin(2 * angle), -std::cos(2 * angle);
  return r;
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int n) {
  return random_matrix(rng, n, 1).col(0);
}

}  // namespace ccl::testing
