#include "cache.hpp"

#include <ccl/version.hpp>

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

namespace ccl::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

fs::path default_cache_dir() {
  if (const char* d = std::getenv("CCL_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "ccl";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "ccl";
  return ".ccl-cache";
}

fs::path cache_file_for(const GroupType& t, const fs::path& dir) {
  std::string name;
  for (char c : t.name()) {
    if (c == '(') name += '_';
    else if (c != ')') name += c;
  }
  return dir / (name + ".json");
}

std::string serialize_cache(const RootSystem& rs, const Group& g) {
  json doc;
  doc["schema_version"] = kCacheSchemaVersion;
  doc["group"] = rs.type.name();
  json roots = json::array();
  for (const auto& r : rs.all_roots) {
    json coords = json::array();
    for (Eigen::Index i = 0; i < r.size(); ++i) coords.push_back(format17(r(i)));
    roots.push_back(std::move(coords));
  }
  doc["roots"] = std::move(roots);
  json perms = json::array();
  json lengths = json::array();
  for (const auto& e : g.elements()) {
    perms.push_back(e.perm);
    lengths.push_back(e.word_length);
  }
  doc["permutations"] = std::move(perms);
  doc["word_lengths"] = std::move(lengths);
  doc["counts_by_fixed_dim"] = g.counts_by_fixed_dim();
  doc["created"] = {{"tool_version", kToolVersion}, {"utc", utc_now()}};
  return doc.dump() + "\n";
}

Group deserialize_cache(const RootSystem& rs, const std::string& text,
                        const ToleranceConfig& tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw CacheError(std::string("cache is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("schema_version").get<int>() != kCacheSchemaVersion) {
      throw CacheError("cache schema version mismatch");
    }
    if (doc.at("group").get<std::string>() != rs.type.name()) {
      throw CacheError("cache holds a different group");
    }
    const auto& roots = doc.at("roots");
    if (roots.size() != rs.all_roots.size()) throw CacheError("cache root count mismatch");
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const auto& coords = roots[i];
      if (coords.size() != static_cast<std::size_t>(rs.n)) throw CacheError("cache root has wrong dimension");
      for (int j = 0; j < rs.n; ++j) {
        const double x = std::stod(coords[static_cast<std::size_t>(j)].get<std::string>());
        if (std::abs(x - rs.all_roots[i](j)) > 1e-12) throw CacheError("cache roots differ from this build");
      }
    }
    auto perms = doc.at("permutations").get<std::vector<Permutation>>();
    auto lengths = doc.at("word_lengths").get<std::vector<int>>();
    Group g = Group::from_permutations(rs, std::move(perms), std::move(lengths), tol);
    if (doc.at("counts_by_fixed_dim").get<std::vector<long long>>() != g.counts_by_fixed_dim()) {
      throw CacheError("cached counts disagree with the reloaded group");
    }
    if (g.order() != rs.type.expected_order()) throw CacheError("cached group has the wrong order");
    return g;
  } catch (const CacheError&) {
    throw;
  } catch (const std::exception& e) {
    throw CacheError(std::string("malformed cache: ") + e.what());
  }
}

void write_cache(const fs::path& file, const RootSystem& rs, const Group& g) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write cache file " + tmp.string());
    out << serialize_cache(rs, g);
    if (!out) throw CacheError("failed writing cache file " + tmp.string());
  }
  fs::rename(tmp, file);
}

Group read_cache(const fs::path& file, const RootSystem& rs, const ToleranceConfig& tol) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw CacheError("cannot read cache file " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_cache(rs, ss.str(), tol);
}

}  // namespace ccl::cli
