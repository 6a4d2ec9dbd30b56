// Acceptance suite: one PASS/FAIL line per criterion. Exit status is
// nonzero when any criterion fails.

#include "cli.hpp"

#include <ccl/errors.hpp>
#include <ccl/identities.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace ccl;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

struct Built {
  RootSystem rs;
  Group g;
};

Built build(const std::string& spec, bool h4 = false) {
  BuildOptions bo;
  bo.enable_h4 = h4;
  auto rs = build_root_system(GroupType::parse(spec), bo);
  auto g = Group::enumerate(rs);
  return {std::move(rs), std::move(g)};
}

const std::vector<std::string> kExactGroups = {"A2", "B2", "I2(6)", "I2(7)", "A3", "B3", "H3"};

std::string describe(const VerificationReport& r) {
  std::ostringstream s;
  s << r.group.name() << " " << r.identity_name << (r.k ? " k=" + std::to_string(*r.k) : "")
    << " lhs=" << r.lhs << " rhs=" << r.rhs_numerator << "/" << r.rhs_denominator;
  return s.str();
}

void require_exact(Outcome& o, const VerificationReport& r, int& checks) {
  ++checks;
  if (!r.passed || r.combined_stderr != 0.0 || std::abs(r.lhs - r.rhs()) > 1e-9) {
    o.fail(describe(r));
  }
}

void require_pass(Outcome& o, const VerificationReport& r, int& checks) {
  ++checks;
  if (!r.passed) o.fail(describe(r));
}

Outcome ac1() {
  Outcome o;
  int checks = 0;
  const std::map<std::string, double> reference = {
      {"A2", 1.0 / 3}, {"B2", 3.0 / 8}, {"I2(6)", 5.0 / 12}, {"B3", 5.0 / 16}, {"H3", 3.0 / 8}};
  for (const auto& spec : kExactGroups) {
    const auto [rs, g] = build(spec);
    const auto curious = verify_curious(rs, g);
    require_exact(o, curious, checks);
    if (auto it = reference.find(spec); it != reference.end() &&
                                        std::abs(curious.lhs - it->second) > 1e-9) {
      o.fail(spec + " sigma(C*) differs from reference value");
    }
    for (int k = 0; k <= rs.n; ++k) {
      require_exact(o, verify_main(rs, g, k), checks);
      for (const auto& cls : subspace_orbits(rs, g, k)) {
        require_exact(o, verify_equiv_measure(rs, g, cls), checks);
      }
      for (const auto& s : index_subsets(rs.n, k)) {
        require_exact(o, verify_face_decomposition(rs, g, s), checks);
        require_exact(o, verify_parabolic_quotient(rs, g, s), checks);
      }
    }
  }
  o.detail = std::to_string(checks) + " exact checks" + (o.ok ? "" : "; first failure: " + o.detail);
  return o;
}

Outcome ac2() {
  Outcome o;
  int checks = 0;
  for (const auto& type : supported_groups(/*with_h4=*/true)) {
    const auto [rs, g] = build(type.name(), true);
    const auto& counts = g.counts_by_fixed_dim();
    const std::string name = type.name();
    ++checks;
    if (g.order() != type.expected_order()) o.fail(name + " order");
    ++checks;
    if (std::accumulate(counts.begin(), counts.end(), 0LL) != g.order()) o.fail(name + " sum |W^k|");
    ++checks;
    if (counts[static_cast<std::size_t>(rs.n - 1)] != rs.positive_root_count()) {
      o.fail(name + " |W^{n-1}| != positive roots");
    }
    ++checks;
    if (!solomon_check(g, rs.exponents)) o.fail(name + " solomon");
    for (int k = 0; k <= rs.n; ++k) require_pass(o, verify_class_sum(rs, g, k), checks);
    VerifyOptions opt;
    opt.trials = 100;
    for (const auto& r : {verify_waldspurger_partition(rs, g, opt), verify_covering_count(rs, g, opt)}) {
      require_pass(o, r, checks);
      if (r.samples < 100) o.fail(name + " too few trials");
    }
    for (int k = 0; k <= rs.n; ++k) {
      for (const auto& s : index_subsets(rs.n, k)) {
        const auto r = verify_face_oplus_covering(rs, g, s, opt);
        require_pass(o, r, checks);
        if (r.samples < 100) o.fail(name + " too few trials");
      }
    }
  }
  o.detail = std::to_string(checks) + " integer checks" + (o.ok ? "" : "; first failure: " + o.detail);
  return o;
}

Outcome ac3() {
  Outcome o;
  int checks = 0;
  int mc_terms = 0;
  VerifyOptions opt;
  opt.mc.samples = 1'000'000;
  opt.mc.seed = 42;
  double f4_curious = 0.0;
  for (const char* spec : {"F4", "D4", "B4", "A4"}) {
    const auto [rs, g] = build(spec);
    std::vector<VerificationReport> reports{verify_curious(rs, g, opt)};
    for (int k = 0; k <= rs.n; ++k) reports.push_back(verify_main(rs, g, k, opt));
    for (const auto& r : reports) {
      ++checks;
      mc_terms += r.combined_stderr > 0 ? 1 : 0;
      const double bound = r.combined_stderr > 0 ? kStderrMultiplier * r.combined_stderr : 1e-9;
      if (!r.passed || std::abs(r.lhs - r.rhs()) > bound) o.fail(describe(r));
    }
    if (std::string(spec) == "F4") f4_curious = reports.front().lhs;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d checks (%d Monte Carlo), F4 sigma(C*)=%.5f vs 385/1152=%.5f",
                checks, mc_terms, f4_curious, 385.0 / 1152.0);
  o.detail = buf + (o.ok ? std::string() : "; first failure: " + o.detail);
  return o;
}

Outcome ac4() {
  Outcome o;
  int cones = 0;
  double worst_z = 0.0;
  std::uint64_t stream = 0;
  McConfig mc;
  mc.samples = 1'000'000;
  mc.seed = 42;
  for (const auto& spec : kExactGroups) {
    const auto [rs, g] = build(spec);
    const auto c = chamber(rs);
    std::vector<std::pair<std::string, SimplicialCone>> all{{"C", c}, {"C*", dual(c)}};
    for (int k = 0; k <= rs.n; ++k) {
      for (const auto& s : index_subsets(rs.n, k)) {
        const std::string tag = format_index_set(s);
        all.emplace_back("F" + tag, face(c, s));
        all.emplace_back("C/F" + tag, quotient(c, s));
        all.emplace_back("(C/F" + tag + ")*", quotient_dual(c, s));
      }
    }
    // Translates of the faces, as they appear in the decompositions.
    for (const auto& s : index_subsets(rs.n, rs.n - 1)) {
      const auto f = face(c, s);
      for (int w = 0; w < std::min<long long>(g.order(), 6); ++w) {
        all.emplace_back("w" + std::to_string(w) + "F" + format_index_set(s), image_cone(g.element(w), f));
      }
    }
    for (const auto& [label, cone] : all) {
      if (cone.dim() < 2 || cone.dim() > 3) continue;
      ++cones;
      const auto exact = measure_exact(cone);
      const auto est = measure_monte_carlo(cone, mc.with_stream(++stream));
      const double z = std::abs(est.value - exact.value) / est.std_error;
      worst_z = std::max(worst_z, z);
      if (!(z <= kStderrMultiplier)) {
        o.fail(spec + " " + label + " exact=" + std::to_string(exact.value) +
               " mc=" + std::to_string(est.value));
      }
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "%d cones of dim 2-3, worst |mc-exact|/stderr = %.2f", cones, worst_z);
  o.detail = buf + (o.ok ? std::string() : "; first failure: " + o.detail);
  return o;
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

Outcome ac5() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ccl-acceptance-cache";
  fs::remove_all(dir);
  fs::create_directories(dir);
  ::setenv("CCL_CACHE_DIR", dir.c_str(), 1);

  int c1 = 0, c2 = 0, c3 = 0;
  const auto a = run_cli({"report", "--group", "H3", "--seed", "42"}, c1);
  const auto b = run_cli({"report", "--group", "H3", "--seed", "42"}, c2);
  const auto one = run_cli({"report", "--group", "H3", "--seed", "42", "--workers", "1"}, c3);
  int c4 = 0;
  const auto many = run_cli({"report", "--group", "H3", "--seed", "42", "--workers", "8"}, c4);
  if (c1 != 0 || c2 != 0 || c3 != 0 || c4 != 0) o.fail("report exit code nonzero");
  if (a.empty() || a != b) o.fail("two H3 reports differ");
  if (one != many || one != a) o.fail("H3 report depends on worker count");

  // H3 is all exact; repeat on a Monte Carlo backed report.
  int m1 = 0, m2 = 0;
  const auto f1 = run_cli({"verify", "main", "--group", "F4", "--seed", "42", "--workers", "1",
                           "--format", "json"}, m1);
  const auto f2 = run_cli({"verify", "main", "--group", "F4", "--seed", "42", "--workers", "8",
                           "--format", "json"}, m2);
  if (m1 != 0 || m2 != 0 || f1.empty() || f1 != f2) o.fail("F4 Monte Carlo report depends on worker count");

  ::unsetenv("CCL_CACHE_DIR");
  fs::remove_all(dir);
  o.detail = "H3 report " + std::to_string(a.size()) + " bytes; workers 1 vs 8 identical for H3 and F4 main" +
             (o.ok ? "" : "; failure: " + o.detail);
  return o;
}

Outcome ac6() {
  Outcome o;
  McConfig mc;
  mc.samples = 1'000'000;
  mc.seed = 42;
  std::ostringstream d;
  for (int dim : {1, 2, 3, 4, 7}) {
    const auto half = mc_fraction([](std::span<const double> x) { return x[0] >= 0.0; }, dim,
                                  mc.with_stream(static_cast<std::uint64_t>(dim)));
    if (std::abs(half.fraction - 0.5) > kStderrMultiplier * half.std_error) {
      o.fail("half-space in R^" + std::to_string(dim));
    }
  }
  const auto half4 = mc_fraction([](std::span<const double> x) { return x[0] >= 0.0; }, 4, mc);
  const SimplicialCone orthant(4, Matrix::Identity(4, 4));
  const auto est = measure_monte_carlo(orthant, mc);
  if (std::abs(est.value - 1.0 / 16.0) > kStderrMultiplier * est.std_error) o.fail("4D orthant");
  d.precision(6);
  d << std::fixed << "half-space " << half4.fraction << " +- " << half4.std_error << ", orthant "
    << est.value << " +- " << est.std_error << " (1/16 = 0.0625)";
  o.detail = d.str() + (o.ok ? "" : "; failure: " + o.detail);
  return o;
}

struct Criterion {
  const char* id;
  const char* title;
  double time_limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "exact-geometry suite, |lhs-rhs| <= 1e-9", 5.0, ac1},
      {"AC2", "integer suite incl. H4", 30.0, ac2},
      {"AC3", "Monte Carlo suite, N=1e6, within 4 stderr", 300.0, ac3},
      {"AC4", "exact vs Monte Carlo on 2D/3D cones, within 4 stderr", 0.0, ac4},
      {"AC5", "reproducible reports across runs and worker counts", 0.0, ac5},
      {"AC6", "calibration: half-space 1/2, 4D orthant 1/16", 0.0, ac6},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      o.ok = false;
      o.detail += "; runtime limit " + std::to_string(c.time_limit_s) + " s exceeded";
    }
    std::printf("[%s] %s %s: %s (%.2f s%s)\n", o.ok ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(),
                secs, c.time_limit_s > 0 ? (" of " + std::to_string(int(c.time_limit_s)) + " s").c_str() : "");
    std::fflush(stdout);
    failed += o.ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
