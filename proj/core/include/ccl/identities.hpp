#pragma once

#include "ccl/cone.hpp"
#include "ccl/group.hpp"
#include "ccl/root_system.hpp"
#include "ccl/solid_angle.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ccl {

/// Reduced fraction with a positive denominator.
struct Fraction {
  long long num = 0;
  long long den = 1;

  Fraction() = default;
  Fraction(long long n, long long d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Fraction operator+(const Fraction& o) const;
  bool operator==(const Fraction&) const = default;
};

struct TermBreakdown {
  std::string label;
  double value = 0.0;
  double std_error = 0.0;
};

/// Outcome of one identity check.
struct VerificationReport {
  std::string identity_name;
  GroupType group;
  std::optional<int> k;
  double lhs = 0.0;
  long long rhs_numerator = 0;
  long long rhs_denominator = 1;
  double abs_error = 0.0;
  double combined_stderr = 0.0;
  std::string tolerance_rule;
  bool passed = false;
  std::uint64_t seed = 0;
  long long samples = 0;
  std::vector<TermBreakdown> per_term_breakdown;

  double rhs() const {
    return static_cast<double>(rhs_numerator) / static_cast<double>(rhs_denominator);
  }
};

inline constexpr double kExactTolerance = 1e-9;
inline constexpr double kStderrMultiplier = 4.0;

/// Draws "generic" points: each trial callback either returns a value or
/// std::nullopt to reject its candidate (too close to a hyperplane or a
/// cone boundary under test). After `resample_limit` consecutive
/// rejections GenericityFailure is thrown.
class GenericPointSampler {
 public:
  GenericPointSampler(std::uint64_t seed, int resample_limit = 100,
                      double generic_margin = 1e-6);

  template <class Trial>
  auto draw(Trial&& trial) -> typename std::invoke_result_t<Trial&, std::mt19937_64&>::value_type {
    for (int attempt = 0; attempt < resample_limit_; ++attempt) {
      if (auto r = trial(rng_)) return *r;
    }
    throw_exhausted();
  }

  /// Standard Gaussian vector.
  Vector gaussian(int dim);

  double margin() const { return margin_; }
  std::uint64_t seed() const { return seed_; }
  std::mt19937_64& rng() { return rng_; }

 private:
  [[noreturn]] void throw_exhausted() const;

  std::uint64_t seed_;
  int resample_limit_;
  double margin_;
  std::mt19937_64 rng_;
};

struct VerifyOptions {
  McConfig mc{};
  int trials = 100;
  int resample_limit = 100;
  ToleranceConfig tol{};

  /// Sampler for one verifier, on its own stream of mc.seed.
  GenericPointSampler sampler(std::uint64_t stream) const;
};

/// True when |(v, r)| > margin * |v| for every root r.
bool off_reflection_hyperplanes(const RootSystem& rs, const Vector& v, double margin);

/// sigma(C*) = |W^0| / |W|.
VerificationReport verify_curious(const RootSystem& rs, const Group& g,
                                  const VerifyOptions& opt = {});

/// sum over k-faces F of sigma(F) * sigma((C/F)*) = |W^k| / |W|.
VerificationReport verify_main(const RootSystem& rs, const Group& g, int k,
                               const VerifyOptions& opt = {});

/// Each generic v in the interior of C* lies in (1 - w)C° for exactly one w.
VerificationReport verify_waldspurger_partition(const RootSystem& rs, const Group& g,
                                                const VerifyOptions& opt = {});

/// A generic v lies in exactly |W^0| of the cones wC*.
VerificationReport verify_covering_count(const RootSystem& rs, const Group& g,
                                         const VerifyOptions& opt = {});

/// With U = span(F_I): a generic v lies in exactly |W_U^reg| of the cones
/// w(F_J (+) (C/F_J)*) with w span(F_J) = U.
VerificationReport verify_face_oplus_covering(const RootSystem& rs, const Group& g,
                                              const IndexSet& face,
                                              const VerifyOptions& opt = {});

/// The distinct cones w F_J lying in U = span(F_I) have total measure 1 in U
/// and every generic point of U is in exactly one of them.
VerificationReport verify_face_decomposition(const RootSystem& rs, const Group& g,
                                             const IndexSet& face,
                                             const VerifyOptions& opt = {});

/// W_F translates of C/F tile span(F)^perp, and
/// sigma((C/F)*) = |W_F^reg| / |W_F|.
VerificationReport verify_parabolic_quotient(const RootSystem& rs, const Group& g,
                                             const IndexSet& face,
                                             const VerifyOptions& opt = {});

/// For one class of equivalent k-faces: sum of sigma(F') = |W_F| / |N_F|.
VerificationReport verify_equiv_measure(const RootSystem& rs, const Group& g,
                                        const std::vector<IndexSet>& face_class,
                                        const VerifyOptions& opt = {});

/// Exact rational check: sum over class representatives of
/// |W_F^reg| / |N_F| = |W^k| / |W|.
VerificationReport verify_class_sum(const RootSystem& rs, const Group& g, int k);

/// Exponent table against the enumerated fixed-space counts.
VerificationReport verify_solomon(const RootSystem& rs, const Group& g);

/// Every check above, over every k, face and class, in a fixed order.
std::vector<VerificationReport> verify_all(const RootSystem& rs, const Group& g,
                                           const VerifyOptions& opt = {});

}  // namespace ccl
