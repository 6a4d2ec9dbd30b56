#pragma once

#include <ccl/errors.hpp>
#include <ccl/group.hpp>
#include <ccl/root_system.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace ccl::cli {

// Raised for unreadable, stale or mismatched cache files.
class CacheError : public Error {
 public:
  using Error::Error;
};

/// $CCL_CACHE_DIR, else $XDG_CACHE_HOME/ccl, else $HOME/.cache/ccl, else
/// ./.ccl-cache.
std::filesystem::path default_cache_dir();

/// "I2(7)" -> <dir>/I2_7.json
std::filesystem::path cache_file_for(const GroupType& t,
                                     const std::filesystem::path& dir);

/// JSON document: schema_version, group, roots (17 significant digits),
/// permutations, word_lengths, counts_by_fixed_dim and creation metadata.
std::string serialize_cache(const RootSystem& rs, const Group& g);

/// Throws CacheError on schema-version mismatch, wrong group, roots that do
/// not match `rs`, or stored counts that disagree with the rebuilt group.
Group deserialize_cache(const RootSystem& rs, const std::string& text,
                        const ToleranceConfig& tol = {});

void write_cache(const std::filesystem::path& file, const RootSystem& rs,
                 const Group& g);
Group read_cache(const std::filesystem::path& file, const RootSystem& rs,
                 const ToleranceConfig& tol = {});

}  // namespace ccl::cli
