#include "report_json.hpp"

#include <ccl/version.hpp>

#include <cstdio>

namespace ccl::cli {

std::string identity_of(const VerificationReport& r) {
  const std::string base = r.identity_name.substr(0, r.identity_name.find(' '));
  if (base == "waldspurger_partition") return "waldspurger";
  if (base == "covering_count") return "covering";
  if (base == "face_oplus_covering") return "oplus";
  if (base == "face_decomposition") return "decomposition";
  if (base == "parabolic_quotient") return "parabolic";
  if (base == "equiv_measure") return "equiv-measure";
  if (base == "class_sum") return "class-sum";
  return base;
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : r.per_term_breakdown) {
    terms.push_back({{"label", t.label}, {"value", t.value}, {"stderr", t.std_error}});
  }
  nlohmann::json j;
  j["abs_error"] = r.abs_error;
  j["combined_stderr"] = r.combined_stderr;
  j["group"] = r.group.name();
  j["identity"] = identity_of(r);
  j["identity_name"] = r.identity_name;
  j["k"] = r.k ? nlohmann::json(*r.k) : nlohmann::json(nullptr);
  j["lhs"] = r.lhs;
  j["passed"] = r.passed;
  j["per_term_breakdown"] = std::move(terms);
  j["report_schema_version"] = kReportSchemaVersion;
  j["rhs_denominator"] = r.rhs_denominator;
  j["rhs_numerator"] = r.rhs_numerator;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["tolerance_rule"] = r.tolerance_rule;
  j["tool_version"] = kToolVersion;
  return j;
}

std::string to_text(const VerificationReport& r, bool verbose) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "[%s] %-32s %-6s lhs=%.12f rhs=%lld/%lld (%.12f) err=%.3e stderr=%.3e",
                r.passed ? "PASS" : "FAIL", r.identity_name.c_str(), r.group.name().c_str(), r.lhs,
                r.rhs_numerator, r.rhs_denominator, r.rhs(), r.abs_error, r.combined_stderr);
  std::string out = buf;
  if (r.k) out += " k=" + std::to_string(*r.k);
  out += '\n';
  if (verbose) {
    for (const auto& t : r.per_term_breakdown) {
      std::snprintf(buf, sizeof buf, "    %-40s %.12f  +- %.3e\n", t.label.c_str(), t.value, t.std_error);
      out += buf;
    }
  }
  return out;
}

}  // namespace ccl::cli
