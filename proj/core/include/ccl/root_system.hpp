#pragma once

#include "ccl/linalg.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ccl {

enum class Family { A, B, D, I2, H3, F4, H4 };

/// An irreducible finite reflection group type, e.g. A3, B4, I2(7), H3.
struct GroupType {
  Family family = Family::A;
  int rank = 1;
  int m = 0;  // dihedral order parameter, I2 only

  /// Case-insensitive grammar: A1..A5, B2..B4, D4, I2(m) with 3<=m<=12,
  /// H3, F4, H4. C_n, D2, D3 and out-of-catalog ranks throw
  /// UnsupportedGroup with a hint where one exists.
  static GroupType parse(std::string_view spec);

  std::string name() const;

  /// Coxeter matrix m_ij (1 on the diagonal, 2 for commuting generators).
  std::vector<std::vector<int>> coxeter_matrix() const;

  /// Exponents from the built-in table; `solomon_check` is what validates
  /// them against an enumeration.
  std::vector<int> exponents() const;

  /// Standard group order, used as a cross-check of enumerations.
  long long expected_order() const;
  int expected_root_count() const;

  bool operator==(const GroupType&) const = default;
};

std::ostream& operator<<(std::ostream& os, const GroupType& t);

/// The supported catalog. H4 is included only when `with_h4` is set.
std::vector<GroupType> supported_groups(bool with_h4);

struct BuildOptions {
  bool enable_h4 = false;
  ToleranceConfig tol{};
};

/// Essential realization of a reflection group: simple roots are unit
/// vectors in R^n with Gram matrix (a_i, a_j) = -cos(pi / m_ij), obtained
/// as the rows of the Cholesky factor of that Gram matrix.
struct RootSystem {
  GroupType type;
  int n = 0;
  std::vector<Vector> simple_roots;
  std::vector<Vector> all_roots;
  /// (a_j, w_i) = delta_ij.
  std::vector<Vector> fundamental_weights;
  std::vector<int> exponents;

  Matrix gram() const;
  int positive_root_count() const {
    return static_cast<int>(all_roots.size()) / 2;
  }
  /// Index of the root matching `v` within eps_root_match, or -1.
  int find_root(const Vector& v, double eps_root_match) const;
};

RootSystem build_root_system(const GroupType& type,
                             const BuildOptions& options = {});

/// Orbit closure of the simple roots under the simple reflections.
/// Deduplicated by nearest match within eps_root_match and sorted
/// lexicographically on coordinates rounded to 1e-9. Throws
/// NonFiniteSystem beyond `max_vectors`.
std::vector<Vector> generate_roots(const std::vector<Vector>& simple,
                                   const ToleranceConfig& tol = {},
                                   std::size_t max_vectors = 10000);

/// w_i = sum_j (G^-1)_ij a_j, so that (a_j, w_i) = delta_ij. Throws
/// InvalidArgument when the simple roots are linearly dependent.
std::vector<Vector> fundamental_weights(const std::vector<Vector>& simple,
                                        const ToleranceConfig& tol = {});

/// Reflection of `v` in the hyperplane orthogonal to the unit vector `a`.
inline Vector reflect(const Vector& v, const Vector& a) {
  return v - 2.0 * v.dot(a) * a;
}

}  // namespace ccl
