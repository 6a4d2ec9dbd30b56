#include "ccl/cone.hpp"

#include "ccl/errors.hpp"

#include <algorithm>

namespace ccl {

namespace {

constexpr double kOrthogonalSpanTol = 1e-9;
constexpr double kFaceSpanTol = 1e-9;
constexpr double kQuotientDualTol = 1e-8;

Matrix select_columns(const Matrix& m, const IndexSet& cols) {
  Matrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = m.col(cols[i]);
  return out;
}

void require_full(const SimplicialCone& c, const char* what) {
  if (!c.full_dimensional()) {
    throw InvalidArgument(std::string(what) + " requires a full-dimensional cone");
  }
}

void require_subset(const SimplicialCone& c, const IndexSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= c.dim() || (i > 0 && s[i] <= s[i - 1])) {
      throw InvalidArgument("index set must be sorted, unique and within range");
    }
  }
}

}  // namespace

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Inside: return "inside";
    case Membership::Boundary: return "boundary";
    case Membership::Outside: return "outside";
  }
  return "?";
}

SimplicialCone::SimplicialCone(int ambient_dim, Matrix generators,
                               const ToleranceConfig& tol)
    : ambient_dim_(ambient_dim), generators_(std::move(generators)) {
  if (generators_.cols() == 0) generators_.resize(ambient_dim, 0);
  if (generators_.rows() != ambient_dim || !all_finite(generators_)) {
    throw InvalidArgument("cone generators have the wrong shape or non-finite entries");
  }
  if (generators_.cols() > 0) {
    Eigen::JacobiSVD<Matrix> svd(generators_);
    const auto& sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > tol.eps_rank)) {
      throw DegenerateCone("cone generators are linearly dependent");
    }
    const Matrix gram = generators_.transpose() * generators_;
    dual_basis_ = generators_ * gram.inverse();
  } else {
    dual_basis_.resize(ambient_dim, 0);
  }
  span_ = Subspace::span_of(ambient_dim, generators_, tol);
}

SimplicialCone SimplicialCone::zero(int ambient_dim) {
  return SimplicialCone(ambient_dim, Matrix(ambient_dim, 0));
}

Vector SimplicialCone::interior_point() const {
  return generators_.rowwise().sum();
}

bool same_cone(const SimplicialCone& a, const SimplicialCone& b, double tol) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  std::vector<bool> used(static_cast<std::size_t>(b.dim()), false);
  for (int i = 0; i < a.dim(); ++i) {
    const Vector u = a.generators().col(i).normalized();
    bool found = false;
    for (int j = 0; j < b.dim() && !found; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      if ((u - b.generators().col(j).normalized()).lpNorm<Eigen::Infinity>() <= tol) {
        used[static_cast<std::size_t>(j)] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

SimplicialCone chamber(const RootSystem& rs) {
  Matrix g(rs.n, rs.n);
  for (int i = 0; i < rs.n; ++i) g.col(i) = rs.fundamental_weights[static_cast<std::size_t>(i)];
  return SimplicialCone(rs.n, std::move(g));
}

SimplicialCone dual(const SimplicialCone& c) {
  require_full(c, "dual");
  return dual_within_span(c);
}

SimplicialCone dual_within_span(const SimplicialCone& c) {
  return SimplicialCone(c.ambient_dim(), c.dual_basis());
}

SimplicialCone face(const SimplicialCone& c, const IndexSet& face_indices) {
  require_full(c, "face");
  require_subset(c, face_indices);
  SimplicialCone f(c.ambient_dim(), select_columns(c.generators(), face_indices));
  const auto normals = select_columns(c.dual_basis(), complement(c.dim(), face_indices));
  const Subspace cut =
      Subspace::span_of(c.ambient_dim(), normals).orthogonal_complement();
  if (!same_subspace(f.span(), cut, kFaceSpanTol)) {
    throw InvariantViolation("face span differs from the intersection of its facets");
  }
  return f;
}

SimplicialCone quotient(const SimplicialCone& c, const IndexSet& face_indices) {
  require_full(c, "quotient");
  require_subset(c, face_indices);
  const int n = c.ambient_dim();
  const Subspace fs = Subspace::span_of(n, select_columns(c.generators(), face_indices));
  const Matrix perp = Matrix::Identity(n, n) - orthogonal_projector(fs);
  return SimplicialCone(n, perp * select_columns(c.generators(), complement(c.dim(), face_indices)));
}

SimplicialCone quotient_dual(const SimplicialCone& c, const IndexSet& face_indices) {
  require_full(c, "quotient_dual");
  require_subset(c, face_indices);
  SimplicialCone qd(c.ambient_dim(),
                    select_columns(c.dual_basis(), complement(c.dim(), face_indices)));
  if (!same_cone(qd, dual_within_span(quotient(c, face_indices)), kQuotientDualTol)) {
    throw InvariantViolation("(C/F)* differs from the dual of C/F within its span");
  }
  return qd;
}

Membership classify_coordinates(const Vector& t, double eps) {
  bool touching = false;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    if (t(i) < -eps) return Membership::Outside;
    if (t(i) <= eps) touching = true;
  }
  return touching ? Membership::Boundary : Membership::Inside;
}

Membership membership(const SimplicialCone& c, const Vector& v,
                      const ToleranceConfig& tol) {
  if (v.size() != c.ambient_dim()) throw InvalidArgument("membership: dimension mismatch");
  if (c.dim() == 0) {
    return v.norm() <= tol.eps_membership ? Membership::Inside : Membership::Outside;
  }
  if (!c.full_dimensional()) {
    const Matrix& b = c.span().basis();
    const double dist = (v - b * (b.transpose() * v)).norm();
    if (dist > tol.eps_membership) return Membership::Outside;
  }
  return classify_coordinates(c.coordinates(v), tol.eps_membership);
}

SimplicialCone image_cone(const Matrix& orthogonal, const SimplicialCone& c) {
  return SimplicialCone(c.ambient_dim(), orthogonal * c.generators());
}

SimplicialCone image_cone(const GroupElement& w, const SimplicialCone& c) {
  return image_cone(w.matrix, c);
}

SimplicialCone map_cone(const Matrix& m, const SimplicialCone& c,
                        const ToleranceConfig& tol) {
  return SimplicialCone(c.ambient_dim(), m * c.generators(), tol);
}

bool in_open_image(const LinearSolver& solver, const SimplicialCone& c,
                   const Vector& v, const ToleranceConfig& tol) {
  return membership(c, solver.solve(v), tol) == Membership::Inside;
}

SimplicialCone direct_sum(const SimplicialCone& f, const SimplicialCone& g) {
  if (f.ambient_dim() != g.ambient_dim()) {
    throw InvalidArgument("direct_sum: ambient dimensions differ");
  }
  if (f.dim() > 0 && g.dim() > 0 &&
      (f.span().basis().transpose() * g.span().basis()).cwiseAbs().maxCoeff() >
          kOrthogonalSpanTol) {
    throw InvalidArgument("direct_sum: spans are not orthogonal");
  }
  Matrix gens(f.ambient_dim(), f.dim() + g.dim());
  gens.leftCols(f.dim()) = f.generators();
  gens.rightCols(g.dim()) = g.generators();
  return SimplicialCone(f.ambient_dim(), std::move(gens));
}

}  // namespace ccl
