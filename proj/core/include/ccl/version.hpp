#pragma once

namespace ccl {

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr int kReportSchemaVersion = 1;
inline constexpr int kCacheSchemaVersion = 1;

}  // namespace ccl
