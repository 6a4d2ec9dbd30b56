#include "ccl/solid_angle.hpp"

#include "ccl/errors.hpp"

#include <numbers>

namespace ccl {

namespace {

constexpr double kPi = std::numbers::pi;

// Angle between two vectors, stable near 0 and pi.
double angle_between(const Vector& a, const Vector& b) {
  const Vector u = a.normalized();
  const Vector v = b.normalized();
  return 2.0 * std::atan2((u - v).norm(), (u + v).norm());
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

std::string_view to_string(AngleMethod m) {
  switch (m) {
    case AngleMethod::Exact0: return "exact0";
    case AngleMethod::Exact1: return "exact1";
    case AngleMethod::Exact2Arc: return "exact2_arc";
    case AngleMethod::Exact3Girard: return "exact3_girard";
    case AngleMethod::MonteCarlo: return "monte_carlo";
  }
  return "?";
}

void McConfig::validate() const {
  if (samples < 1000) throw InvalidArgument("Monte Carlo needs at least 1000 samples");
  if (chunk_size < 1) throw InvalidArgument("chunk_size must be positive");
  if (workers < 0) throw InvalidArgument("workers must be >= 0");
}

McConfig McConfig::with_stream(std::uint64_t stream) const {
  McConfig c = *this;
  c.seed = mix_seed(seed ^ mix_seed(stream + 0x51ed270b27c3f8a5ULL));
  return c;
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
  return mix_seed(mix_seed(seed) + chunk);
}

AngleEstimate measure_exact(const SimplicialCone& c) {
  switch (c.dim()) {
    case 0:
      return {1.0, 0.0, AngleMethod::Exact0, 0};
    case 1:
      return {0.5, 0.0, AngleMethod::Exact1, 0};
    case 2:
      return {clamp01(angle_between(c.generator(0), c.generator(1)) / (2.0 * kPi)), 0.0,
              AngleMethod::Exact2Arc, 0};
    case 3: {
      // Dihedral angle along an edge is pi minus the angle between the two
      // inward facet normals; the spherical excess is their sum minus pi.
      const Matrix& d = c.dual_basis();
      const double normal_angles = angle_between(d.col(0), d.col(1)) +
                                   angle_between(d.col(1), d.col(2)) +
                                   angle_between(d.col(0), d.col(2));
      const double excess = 2.0 * kPi - normal_angles;
      return {clamp01(excess / (4.0 * kPi)), 0.0, AngleMethod::Exact3Girard, 0};
    }
    default:
      throw InvalidArgument("no exact solid angle for cones of dimension " +
                            std::to_string(c.dim()));
  }
}

AngleEstimate measure_monte_carlo(const SimplicialCone& c, const McConfig& mc) {
  const int k = c.dim();
  if (k == 0) return measure_exact(c);
  // Gaussian coordinates z in an orthonormal basis B of the span; the
  // generator coordinates of B z are T z with T = D^T B.
  const Matrix t = c.dual_basis().transpose() * c.span().basis();
  const double eps = ToleranceConfig{}.eps_membership;
  auto covered = [&](std::span<const double> z) {
    for (int i = 0; i < k; ++i) {
      double s = 0.0;
      for (int j = 0; j < k; ++j) s += t(i, j) * z[static_cast<std::size_t>(j)];
      if (s < -eps) return false;
    }
    return true;
  };
  const McResult r = mc_fraction(covered, k, mc);
  return {r.fraction, r.std_error, AngleMethod::MonteCarlo, r.samples};
}

AngleEstimate measure(const SimplicialCone& c, const McConfig& mc) {
  if (c.dim() <= 3) return measure_exact(c);
  return measure_monte_carlo(c, mc);
}

}  // namespace ccl
