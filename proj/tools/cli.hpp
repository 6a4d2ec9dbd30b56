#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ccl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `ccl` tool. Reports go to `out`; diagnostics to `err`.
///
///   ccl build   --group G
///   ccl counts  --group G
///   ccl verify  <identity> --group G [--k K] [--face 1,3]
///   ccl report  [--group G|all]
///
/// Exit codes: 0 all checks passed, 1 a check failed, 2 usage/config error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ccl::cli
