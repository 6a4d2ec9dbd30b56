#pragma once

#include <ccl/identities.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace ccl::cli {

/// Short CLI name for a report ("curious", "waldspurger", "class-sum", ...).
std::string identity_of(const VerificationReport& r);

/// Report fields plus tool_version, group, identity and
/// report_schema_version. nlohmann::json keeps keys sorted.
nlohmann::json to_json(const VerificationReport& r);

/// "[PASS] curious  A2  lhs=... rhs=2/6 ..." plus breakdown lines when
/// `verbose` is set.
std::string to_text(const VerificationReport& r, bool verbose);

}  // namespace ccl::cli
