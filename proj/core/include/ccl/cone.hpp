#pragma once

#include "ccl/group.hpp"
#include "ccl/linalg.hpp"
#include "ccl/root_system.hpp"

#include <string_view>

namespace ccl {

enum class Membership { Inside, Boundary, Outside };

std::string_view to_string(Membership m);

/// A simplicial cone: the nonnegative span of k linearly independent
/// generators in R^n. k = 0 is the zero cone {0}.
///
/// The dual basis d_1..d_k lives in span(cone) and satisfies
/// (g_i, d_j) = delta_ij, so t_i = (v, d_i) are the generator coordinates of
/// any v in the span. The d_j are also the inward facet normals within the
/// span.
class SimplicialCone {
 public:
  /// Throws DegenerateCone if the generators (columns) are dependent.
  SimplicialCone(int ambient_dim, Matrix generators, const ToleranceConfig& tol = {});

  static SimplicialCone zero(int ambient_dim);

  int ambient_dim() const { return ambient_dim_; }
  int dim() const { return static_cast<int>(generators_.cols()); }
  bool full_dimensional() const { return dim() == ambient_dim_; }

  const Matrix& generators() const { return generators_; }
  const Matrix& dual_basis() const { return dual_basis_; }
  const Subspace& span() const { return span_; }

  Vector generator(int i) const { return generators_.col(i); }
  Vector coordinates(const Vector& v) const { return dual_basis_.transpose() * v; }

  /// Sum of the generators (a relative-interior point).
  Vector interior_point() const;

 private:
  int ambient_dim_ = 0;
  Matrix generators_;
  Matrix dual_basis_;
  Subspace span_;
};

/// True when both cones have the same generator rays (up to positive
/// scaling and order), within `tol` on unit-normalized generators.
bool same_cone(const SimplicialCone& a, const SimplicialCone& b, double tol = 1e-8);

/// Cone on the fundamental weights; its inward facet normals are the
/// simple roots.
SimplicialCone chamber(const RootSystem& rs);

/// C* for a full-dimensional cone: the cone on its facet normals. Throws
/// InvalidArgument for lower-dimensional input.
SimplicialCone dual(const SimplicialCone& c);

/// Dual taken inside span(c) rather than the ambient space.
SimplicialCone dual_within_span(const SimplicialCone& c);

/// F_I = cone{g_i : i in I} of a full-dimensional cone (for the chamber,
/// the face spanned by w_i, i in I).
SimplicialCone face(const SimplicialCone& c, const IndexSet& face_indices);

/// C/F: orthogonal projection of the generators not in I onto span(F_I)^perp.
SimplicialCone quotient(const SimplicialCone& c, const IndexSet& face_indices);

/// (C/F)*: cone on the facet normals d_j, j not in I. This is checked
/// against dual_within_span(quotient(c, I)); a mismatch throws
/// InvariantViolation.
SimplicialCone quotient_dual(const SimplicialCone& c, const IndexSet& face_indices);

/// Classification by generator coordinates:
///   off the span by more than eps_membership  -> Outside
///   all t_i > eps                             -> Inside
///   all t_i >= -eps, some |t_i| <= eps        -> Boundary
///   otherwise                                 -> Outside
/// The zero cone holds only the origin (|v| <= eps -> Inside).
Membership membership(const SimplicialCone& c, const Vector& v,
                      const ToleranceConfig& tol = {});

/// Same classification applied to precomputed coordinates.
Membership classify_coordinates(const Vector& t, double eps);

/// w C for an orthogonal map w.
SimplicialCone image_cone(const Matrix& orthogonal, const SimplicialCone& c);
SimplicialCone image_cone(const GroupElement& w, const SimplicialCone& c);

/// M C for an arbitrary linear map; throws DegenerateCone if the image
/// generators are dependent.
SimplicialCone map_cone(const Matrix& m, const SimplicialCone& c,
                        const ToleranceConfig& tol = {});

/// v in M C° for invertible M, tested by pulling v back through `solver`
/// and requiring it strictly Inside c.
bool in_open_image(const LinearSolver& solver, const SimplicialCone& c,
                   const Vector& v, const ToleranceConfig& tol = {});

/// f (+) g for cones with orthogonal spans. Throws InvalidArgument otherwise.
SimplicialCone direct_sum(const SimplicialCone& f, const SimplicialCone& g);

}  // namespace ccl
