#include "ccl/identities.hpp"

#include "ccl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace ccl {

namespace {

// Stream ids keep the randomness of different verifiers independent while
// staying a pure function of the user seed.
enum Stream : std::uint64_t {
  kCurious = 1,
  kMain = 100,
  kWaldspurger = 200,
  kCovering = 300,
  kOplus = 400,
  kDecomposition = 500,
  kParabolic = 600,
  kEquiv = 700,
};

const char* kExactRule = "|lhs - rhs| <= 1e-9 (exact measures)";
const char* kMcRule = "|lhs - rhs| <= 4 * combined_stderr (Monte Carlo terms)";
const char* kCountRule = "covering count equals the expected integer on every trial";
const char* kFractionRule = "exact rational equality";

std::uint64_t face_stream(const IndexSet& s) {
  std::uint64_t bits = 0;
  for (int i : s) bits |= std::uint64_t{1} << i;
  return bits;
}

std::uint64_t class_stream(int k, const IndexSet& rep) {
  return static_cast<std::uint64_t>(k) * 1024 + face_stream(rep);
}

// Applies the standard pass rule for a measure-valued comparison.
void finish_measure(VerificationReport& r) {
  r.abs_error = std::abs(r.lhs - r.rhs());
  if (r.combined_stderr > 0.0) {
    r.tolerance_rule = kMcRule;
    r.passed = r.abs_error <= kStderrMultiplier * r.combined_stderr;
  } else {
    r.tolerance_rule = kExactRule;
    r.passed = r.abs_error <= kExactTolerance;
  }
}

VerificationReport start(const std::string& name, const RootSystem& rs,
                         std::optional<int> k, std::uint64_t seed) {
  VerificationReport r;
  r.identity_name = name;
  r.group = rs.type;
  r.k = k;
  r.seed = seed;
  return r;
}

// Stored as the identity states it (e.g. |W^0|/|W| = 2/6), not reduced.
void set_rhs(VerificationReport& r, long long num, long long den) {
  if (den <= 0) throw InvalidArgument("rhs denominator must be positive");
  r.rhs_numerator = num;
  r.rhs_denominator = den;
}

std::string face_name(const std::string& base, const IndexSet& s) {
  return base + " I=" + format_index_set(s);
}

bool coordinates_generic(const Vector& t, double threshold) {
  return t.size() == 0 || t.cwiseAbs().minCoeff() > threshold;
}

// Records how many trials produced each count.
void add_histogram(VerificationReport& r, const std::map<long long, long long>& hist) {
  for (const auto& [count, trials] : hist) {
    r.per_term_breakdown.push_back(
        {"trials with count=" + std::to_string(count), static_cast<double>(trials), 0.0});
  }
}

// Runs `trials` generic trials; `trial` returns the observed count or
// nullopt to resample. Fills lhs (max deviation), rhs = 0 and pass.
template <class Trial>
void run_count_trials(VerificationReport& r, GenericPointSampler& sampler, int trials,
                      long long expected, Trial trial) {
  std::map<long long, long long> hist;
  long long worst = 0;
  for (int t = 0; t < trials; ++t) {
    const long long count = sampler.draw(trial);
    ++hist[count];
    worst = std::max(worst, std::llabs(count - expected));
  }
  r.lhs = static_cast<double>(worst);
  set_rhs(r, 0, 1);
  r.abs_error = r.lhs;
  r.tolerance_rule = kCountRule;
  r.passed = worst == 0;
  r.samples = trials;
  r.per_term_breakdown.push_back({"expected count", static_cast<double>(expected), 0.0});
  add_histogram(r, hist);
}

// Pairs (w, J) with |J| = |I| and w span(F_J) = span(F_I).
struct FacePair {
  int element;
  IndexSet face;
};

std::vector<FacePair> pairs_onto(const RootSystem& rs, const Group& g, const IndexSet& face) {
  const Matrix target = orthogonal_projector(face_span(rs, face));
  std::vector<FacePair> out;
  for (const auto& j : index_subsets(rs.n, static_cast<int>(face.size()))) {
    const Matrix p = orthogonal_projector(face_span(rs, j));
    for (int w = 0; w < g.order(); ++w) {
      const Matrix& m = g.element(w).matrix;
      if (face.empty() || (m * p * m.transpose() - target).cwiseAbs().maxCoeff() <= 1e-8) {
        out.push_back({w, j});
      }
    }
  }
  return out;
}

// Coordinate map v -> coordinates of w^{-1} v in `cone`.
Matrix pulled_back_coordinates(const Matrix& w, const SimplicialCone& cone) {
  return cone.dual_basis().transpose() * w.transpose();
}

}  // namespace

Fraction::Fraction(long long n, long long d) : num(n), den(d) {
  if (d == 0) throw InvalidArgument("fraction with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Fraction Fraction::operator+(const Fraction& o) const {
  const long long l = std::lcm(den, o.den);
  return Fraction(num * (l / den) + o.num * (l / o.den), l);
}

GenericPointSampler::GenericPointSampler(std::uint64_t seed, int resample_limit,
                                         double generic_margin)
    : seed_(seed), resample_limit_(resample_limit), margin_(generic_margin), rng_(seed) {
  if (resample_limit_ < 1) throw InvalidArgument("resample_limit must be positive");
  if (!(margin_ > 0)) throw InvalidArgument("generic_margin must be positive");
}

Vector GenericPointSampler::gaussian(int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = normal(rng_);
  return v;
}

void GenericPointSampler::throw_exhausted() const {
  throw GenericityFailure("no generic point after " + std::to_string(resample_limit_) +
                          " draws (margin " + std::to_string(margin_) + ")");
}

GenericPointSampler VerifyOptions::sampler(std::uint64_t stream) const {
  return GenericPointSampler(mc.with_stream(stream).seed, resample_limit, tol.generic_margin);
}

bool off_reflection_hyperplanes(const RootSystem& rs, const Vector& v, double margin) {
  const double threshold = margin * v.norm();
  return std::all_of(rs.all_roots.begin(), rs.all_roots.end(),
                     [&](const Vector& r) { return std::abs(r.dot(v)) > threshold; });
}

VerificationReport verify_curious(const RootSystem& rs, const Group& g,
                                  const VerifyOptions& opt) {
  const McConfig mc = opt.mc.with_stream(kCurious);
  auto r = start("curious", rs, std::nullopt, opt.mc.seed);
  const auto est = measure(dual(chamber(rs)), mc);
  r.lhs = est.value;
  r.combined_stderr = est.std_error;
  r.samples = est.samples;
  set_rhs(r, g.counts_by_fixed_dim()[0], g.order());
  r.per_term_breakdown.push_back({"sigma(C*)", est.value, est.std_error});
  finish_measure(r);
  return r;
}

VerificationReport verify_main(const RootSystem& rs, const Group& g, int k,
                               const VerifyOptions& opt) {
  if (k < 0 || k > rs.n) throw InvalidArgument("verify_main: k out of range");
  const McConfig mc = opt.mc.with_stream(kMain + static_cast<std::uint64_t>(k));
  auto r = start("main", rs, k, opt.mc.seed);
  const SimplicialCone c = chamber(rs);
  double variance = 0.0;
  for (const auto& s : index_subsets(rs.n, k)) {
    const std::uint64_t id = face_stream(s);
    const auto a = measure(face(c, s), mc.with_stream(2 * id));
    const auto b = measure(quotient_dual(c, s), mc.with_stream(2 * id + 1));
    const double term = a.value * b.value;
    const double se = std::sqrt(a.value * a.value * b.std_error * b.std_error +
                                b.value * b.value * a.std_error * a.std_error);
    r.lhs += term;
    variance += se * se;
    r.samples += a.samples + b.samples;
    r.per_term_breakdown.push_back({"F" + format_index_set(s), term, se});
  }
  r.combined_stderr = std::sqrt(variance);
  set_rhs(r, g.counts_by_fixed_dim()[static_cast<std::size_t>(k)], g.order());
  finish_measure(r);
  return r;
}

VerificationReport verify_waldspurger_partition(const RootSystem& rs, const Group& g,
                                                const VerifyOptions& opt) {
  auto sampler = opt.sampler(kWaldspurger);
  auto r = start("waldspurger_partition", rs, std::nullopt, sampler.seed());
  const int n = rs.n;
  const SimplicialCone c = chamber(rs);
  const SimplicialCone cstar = dual(c);

  std::vector<LinearSolver> solvers;
  for (int w = 0; w < g.order(); ++w) {
    if (g.fixed_dim(w) != 0) continue;
    solvers.emplace_back(Matrix::Identity(n, n) - g.element(w).matrix, opt.tol);
  }
  const double margin = sampler.margin();
  auto trial = [&](std::mt19937_64& rng) -> std::optional<long long> {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vector v = Vector::Zero(n);
    for (int i = 0; i < n; ++i) v += unif(rng) * cstar.generator(i);
    const double scale = margin * v.norm();
    if (!off_reflection_hyperplanes(rs, v, margin)) return std::nullopt;
    if (!coordinates_generic(cstar.coordinates(v), scale)) return std::nullopt;
    long long count = 0;
    for (const auto& solver : solvers) {
      const Vector x = solver.solve(v);
      const Vector t = c.coordinates(x);
      if (!coordinates_generic(t, margin * x.norm())) return std::nullopt;
      if (classify_coordinates(t, opt.tol.eps_membership) == Membership::Inside) ++count;
    }
    return count;
  };
  run_count_trials(r, sampler, opt.trials, 1, trial);
  r.per_term_breakdown.push_back({"|W^0| (invertible 1-w)", static_cast<double>(solvers.size()), 0.0});
  return r;
}

VerificationReport verify_covering_count(const RootSystem& rs, const Group& g,
                                         const VerifyOptions& opt) {
  auto sampler = opt.sampler(kCovering);
  auto r = start("covering_count", rs, std::nullopt, sampler.seed());
  const SimplicialCone cstar = dual(chamber(rs));
  std::vector<Matrix> coords;
  for (const auto& e : g.elements()) coords.push_back(pulled_back_coordinates(e.matrix, cstar));

  const double margin = sampler.margin();
  auto trial = [&](std::mt19937_64&) -> std::optional<long long> {
    const Vector v = sampler.gaussian(rs.n);
    if (!off_reflection_hyperplanes(rs, v, margin)) return std::nullopt;
    long long count = 0;
    for (const auto& m : coords) {
      const Vector t = m * v;
      if (!coordinates_generic(t, margin * v.norm())) return std::nullopt;
      if (classify_coordinates(t, opt.tol.eps_membership) != Membership::Outside) ++count;
    }
    return count;
  };
  run_count_trials(r, sampler, opt.trials, g.counts_by_fixed_dim()[0], trial);
  return r;
}

VerificationReport verify_face_oplus_covering(const RootSystem& rs, const Group& g,
                                              const IndexSet& face_indices,
                                              const VerifyOptions& opt) {
  auto sampler = opt.sampler(kOplus * 1024 + face_stream(face_indices));
  const int k = static_cast<int>(face_indices.size());
  auto r = start(face_name("face_oplus_covering", face_indices), rs, k, sampler.seed());
  const SimplicialCone c = chamber(rs);

  std::map<IndexSet, SimplicialCone> sums;
  for (const auto& j : index_subsets(rs.n, k)) {
    sums.emplace(j, direct_sum(face(c, j), quotient_dual(c, j)));
  }
  std::vector<Matrix> coords;
  for (const auto& p : pairs_onto(rs, g, face_indices)) {
    coords.push_back(pulled_back_coordinates(g.element(p.element).matrix, sums.at(p.face)));
  }
  const long long expected =
      regular_count(g, parabolic_subgroup(rs, g, face_indices), rs.n - k);

  const double margin = sampler.margin();
  auto trial = [&](std::mt19937_64&) -> std::optional<long long> {
    const Vector v = sampler.gaussian(rs.n);
    if (!off_reflection_hyperplanes(rs, v, margin)) return std::nullopt;
    long long count = 0;
    for (const auto& m : coords) {
      const Vector t = m * v;
      if (!coordinates_generic(t, margin * v.norm())) return std::nullopt;
      if (classify_coordinates(t, opt.tol.eps_membership) != Membership::Outside) ++count;
    }
    return count;
  };
  run_count_trials(r, sampler, opt.trials, expected, trial);
  r.per_term_breakdown.push_back({"pairs (w, J)", static_cast<double>(coords.size()), 0.0});
  return r;
}

VerificationReport verify_face_decomposition(const RootSystem& rs, const Group& g,
                                             const IndexSet& face_indices,
                                             const VerifyOptions& opt) {
  auto sampler = opt.sampler(kDecomposition * 1024 + face_stream(face_indices));
  const int k = static_cast<int>(face_indices.size());
  auto r = start(face_name("face_decomposition", face_indices), rs, k, sampler.seed());
  const SimplicialCone c = chamber(rs);
  const std::size_t root_count = rs.all_roots.size();

  // A face w F_J of the Coxeter complex is determined by the signs of
  // (x, r) over all roots r for an interior point x. With x = w x_J these
  // are the signs of (x_J, w^{-1} r), read off the root permutation.
  struct Distinct {
    int element;
    IndexSet face;
  };
  std::map<IndexSet, std::vector<int>> sign_of_face;
  for (const auto& j : index_subsets(rs.n, k)) {
    const Vector x = face(c, j).interior_point();
    std::vector<int> signs(root_count);
    for (std::size_t i = 0; i < root_count; ++i) {
      const double d = rs.all_roots[i].dot(x);
      signs[i] = d > 1e-9 ? 1 : (d < -1e-9 ? -1 : 0);
    }
    sign_of_face.emplace(j, std::move(signs));
  }
  std::map<std::vector<int>, Distinct> distinct;
  for (const auto& p : pairs_onto(rs, g, face_indices)) {
    const auto& perm = g.element(p.element).perm;
    const auto& s = sign_of_face.at(p.face);
    std::vector<int> key(root_count);
    for (std::size_t a = 0; a < root_count; ++a) key[perm[a]] = s[a];
    distinct.emplace(std::move(key), Distinct{p.element, p.face});
  }

  std::vector<SimplicialCone> cones;
  std::map<IndexSet, long long> multiplicity;
  for (const auto& [key, d] : distinct) {
    cones.push_back(image_cone(g.element(d.element), face(c, d.face)));
    ++multiplicity[d.face];
  }

  // (a) total measure inside U. Exact per cone; beyond dimension 3 each
  // orbit of F_J is measured once, as measure is invariant under W.
  double variance = 0.0;
  if (k <= 3) {
    for (const auto& cone : cones) r.lhs += measure_exact(cone).value;
    for (const auto& [j, mult] : multiplicity) {
      r.per_term_breakdown.push_back({"copies of F" + format_index_set(j), static_cast<double>(mult), 0.0});
    }
  } else {
    const McConfig mc = opt.mc.with_stream(kDecomposition * 1024 + face_stream(face_indices));
    for (const auto& [j, mult] : multiplicity) {
      const auto est = measure(face(c, j), mc.with_stream(face_stream(j)));
      const double m = static_cast<double>(mult);
      r.lhs += m * est.value;
      variance += m * m * est.std_error * est.std_error;
      r.samples += est.samples;
      r.per_term_breakdown.push_back({std::to_string(mult) + " x sigma(F" + format_index_set(j) + ")",
                                      m * est.value, m * est.std_error});
    }
  }
  r.combined_stderr = std::sqrt(variance);
  set_rhs(r, 1, 1);
  finish_measure(r);

  // (b) unique relative-interior containment for generic points of U.
  const Subspace u = face_span(rs, face_indices);
  std::vector<Matrix> coords;
  for (const auto& cone : cones) coords.push_back(cone.dual_basis().transpose());
  const double margin = sampler.margin();
  long long failures = 0;
  for (int t = 0; t < opt.trials; ++t) {
    const long long count = sampler.draw([&](std::mt19937_64&) -> std::optional<long long> {
      const Vector v = u.basis() * sampler.gaussian(k);
      long long inside = 0;
      for (std::size_t i = 0; i < cones.size(); ++i) {
        const Vector tc = coords[i] * v;
        if (!coordinates_generic(tc, margin * v.norm())) return std::nullopt;
        if (membership(cones[i], v, opt.tol) == Membership::Inside) ++inside;
      }
      return inside;
    });
    if (count != 1) ++failures;
  }
  r.per_term_breakdown.push_back({"distinct cones in U", static_cast<double>(cones.size()), 0.0});
  r.per_term_breakdown.push_back({"points not covered exactly once", static_cast<double>(failures), 0.0});
  r.passed = r.passed && failures == 0;
  if (r.samples == 0) r.samples = opt.trials;
  r.tolerance_rule += "; every generic point of U lies in exactly one cone";
  return r;
}

VerificationReport verify_parabolic_quotient(const RootSystem& rs, const Group& g,
                                             const IndexSet& face_indices,
                                             const VerifyOptions& opt) {
  auto sampler = opt.sampler(kParabolic * 1024 + face_stream(face_indices));
  const int k = static_cast<int>(face_indices.size());
  const int d = rs.n - k;
  auto r = start(face_name("parabolic_quotient", face_indices), rs, k, sampler.seed());
  const SimplicialCone c = chamber(rs);
  const ElementSet wf = parabolic_subgroup(rs, g, face_indices);

  // (b) sigma((C/F)*) against the Curious Identity for W_F.
  const McConfig mc = opt.mc.with_stream(kParabolic * 1024 + face_stream(face_indices));
  const auto est = measure(quotient_dual(c, face_indices), mc);
  r.lhs = est.value;
  r.combined_stderr = est.std_error;
  r.samples = est.samples;
  const long long reg = regular_count(g, wf, d);
  set_rhs(r, reg, static_cast<long long>(wf.size()));
  r.per_term_breakdown.push_back({"sigma((C/F)*)", est.value, est.std_error});
  r.per_term_breakdown.push_back({"|W_F|", static_cast<double>(wf.size()), 0.0});
  r.per_term_breakdown.push_back({"|W_F^reg|", static_cast<double>(reg), 0.0});
  finish_measure(r);

  // (a) the W_F translates of C/F tile span(F)^perp.
  const SimplicialCone q = quotient(c, face_indices);
  const Subspace perp = q.span();
  std::vector<Matrix> coords;
  for (int w : wf) coords.push_back(pulled_back_coordinates(g.element(w).matrix, q));
  const double margin = sampler.margin();
  long long failures = 0;
  for (int t = 0; t < opt.trials; ++t) {
    const long long count = sampler.draw([&](std::mt19937_64&) -> std::optional<long long> {
      const Vector v = perp.basis() * sampler.gaussian(d);
      long long inside = 0;
      for (std::size_t i = 0; i < wf.size(); ++i) {
        const Matrix& m = g.element(wf[i]).matrix;
        const Vector tc = coords[i] * v;
        if (!coordinates_generic(tc, margin * v.norm())) return std::nullopt;
        if (membership(q, m.transpose() * v, opt.tol) == Membership::Inside) ++inside;
      }
      return inside;
    });
    if (count != 1) ++failures;
  }
  r.per_term_breakdown.push_back({"points not covered exactly once", static_cast<double>(failures), 0.0});
  r.passed = r.passed && failures == 0;
  r.tolerance_rule += "; W_F translates of C/F cover each generic point once";
  return r;
}

VerificationReport verify_equiv_measure(const RootSystem& rs, const Group& g,
                                        const std::vector<IndexSet>& face_class,
                                        const VerifyOptions& opt) {
  if (face_class.empty()) throw InvalidArgument("verify_equiv_measure: empty class");
  const IndexSet& rep = face_class.front();
  const int k = static_cast<int>(rep.size());
  const McConfig mc = opt.mc.with_stream(kEquiv * 65536 + class_stream(k, rep));
  auto r = start(face_name("equiv_measure", rep), rs, k, opt.mc.seed);
  const SimplicialCone c = chamber(rs);
  double variance = 0.0;
  for (const auto& j : face_class) {
    const auto est = measure(face(c, j), mc.with_stream(face_stream(j)));
    r.lhs += est.value;
    variance += est.std_error * est.std_error;
    r.samples += est.samples;
    r.per_term_breakdown.push_back({"sigma(F" + format_index_set(j) + ")", est.value, est.std_error});
  }
  r.combined_stderr = std::sqrt(variance);
  const auto wf = parabolic_subgroup(rs, g, rep);
  const auto nf = normalizer_of_span(g, face_span(rs, rep));
  set_rhs(r, static_cast<long long>(wf.size()), static_cast<long long>(nf.size()));
  r.per_term_breakdown.push_back({"|W_F|", static_cast<double>(wf.size()), 0.0});
  r.per_term_breakdown.push_back({"|N_F|", static_cast<double>(nf.size()), 0.0});
  finish_measure(r);
  return r;
}

VerificationReport verify_class_sum(const RootSystem& rs, const Group& g, int k) {
  if (k < 0 || k > rs.n) throw InvalidArgument("verify_class_sum: k out of range");
  auto r = start("class_sum", rs, k, 0);
  Fraction sum(0, 1);
  for (const auto& cls : subspace_orbits(rs, g, k)) {
    const IndexSet& rep = cls.front();
    const long long reg = regular_count(g, parabolic_subgroup(rs, g, rep), rs.n - k);
    const auto nf = static_cast<long long>(normalizer_of_span(g, face_span(rs, rep)).size());
    const Fraction term(reg, nf);
    sum = sum + term;
    r.per_term_breakdown.push_back(
        {"F" + format_index_set(rep) + ": " + std::to_string(reg) + "/" + std::to_string(nf),
         term.value(), 0.0});
  }
  const long long wk = g.counts_by_fixed_dim()[static_cast<std::size_t>(k)];
  const Fraction rhs(wk, g.order());
  r.lhs = sum.value();
  set_rhs(r, wk, g.order());
  r.abs_error = std::abs(r.lhs - r.rhs());
  r.tolerance_rule = kFractionRule;
  r.passed = sum == rhs;
  r.per_term_breakdown.push_back(
      {"lhs as fraction " + std::to_string(sum.num) + "/" + std::to_string(sum.den), sum.value(), 0.0});
  return r;
}

VerificationReport verify_solomon(const RootSystem& rs, const Group& g) {
  auto r = start("solomon", rs, std::nullopt, 0);
  const auto poly = solomon_polynomial(rs.exponents);
  const auto& counts = g.counts_by_fixed_dim();
  long long worst = 0;
  for (int k = 0; k <= rs.n; ++k) {
    const long long observed = counts[static_cast<std::size_t>(rs.n - k)];
    worst = std::max(worst, std::llabs(observed - poly[static_cast<std::size_t>(k)]));
    r.per_term_breakdown.push_back({"t^" + std::to_string(k) + ": |W^" + std::to_string(rs.n - k) +
                                        "| vs coefficient " + std::to_string(poly[static_cast<std::size_t>(k)]),
                                    static_cast<double>(observed), 0.0});
  }
  r.lhs = static_cast<double>(worst);
  set_rhs(r, 0, 1);
  r.abs_error = r.lhs;
  r.tolerance_rule = "integer polynomial coefficients agree exactly";
  r.passed = solomon_check(g, rs.exponents);
  return r;
}

std::vector<VerificationReport> verify_all(const RootSystem& rs, const Group& g,
                                           const VerifyOptions& opt) {
  std::vector<VerificationReport> out;
  out.push_back(verify_solomon(rs, g));
  out.push_back(verify_curious(rs, g, opt));
  for (int k = 0; k <= rs.n; ++k) out.push_back(verify_main(rs, g, k, opt));
  out.push_back(verify_waldspurger_partition(rs, g, opt));
  out.push_back(verify_covering_count(rs, g, opt));
  std::vector<IndexSet> faces;
  for (int k = 0; k <= rs.n; ++k) {
    for (auto& s : index_subsets(rs.n, k)) faces.push_back(std::move(s));
  }
  for (const auto& s : faces) out.push_back(verify_face_oplus_covering(rs, g, s, opt));
  for (const auto& s : faces) out.push_back(verify_face_decomposition(rs, g, s, opt));
  for (const auto& s : faces) out.push_back(verify_parabolic_quotient(rs, g, s, opt));
  for (int k = 0; k <= rs.n; ++k) {
    for (const auto& cls : subspace_orbits(rs, g, k)) {
      out.push_back(verify_equiv_measure(rs, g, cls, opt));
    }
  }
  for (int k = 0; k <= rs.n; ++k) out.push_back(verify_class_sum(rs, g, k));
  return out;
}

}  // namespace ccl
