#include "cli.hpp"

#include "cache.hpp"
#include "report_json.hpp"

#include <ccl/errors.hpp>
#include <ccl/identities.hpp>
#include <ccl/version.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <sstream>

namespace ccl::cli {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kIdentities = {
    "curious", "main",     "waldspurger", "covering",  "oplus",   "decomposition",
    "parabolic", "equiv-measure", "class-sum", "solomon", "all"};

// Parsed command line. Strictly validated after CLI11 has run.
struct RunConfig {
  std::string command;
  std::string group;
  std::string identity;
  std::optional<int> k;
  std::string face;
  long long samples = 1'000'000;
  long long chunk_size = 65'536;
  int trials = 100;
  int workers = 0;
  std::uint64_t seed = 42;
  std::string format = "text";
  std::string cache_path;
  bool no_cache = false;
  bool h4_enabled = false;
  bool verbose = false;
  ToleranceConfig tol{};
};

class UsageError : public Error {
 public:
  using Error::Error;
};

void add_common(CLI::App* sub, RunConfig& cfg, bool group_required) {
  auto* g = sub->add_option("--group,-g", cfg.group, "Group type: A1..A5, B2..B4, D4, I2(m), H3, F4, H4");
  if (group_required) g->required();
  sub->add_option("--seed", cfg.seed, "Base random seed")->capture_default_str();
  sub->add_option("--samples", cfg.samples, "Monte Carlo samples per cone")->capture_default_str();
  sub->add_option("--chunk-size", cfg.chunk_size, "Monte Carlo chunk size")->capture_default_str();
  sub->add_option("--workers", cfg.workers, "Monte Carlo worker threads (0 = hardware)")
      ->capture_default_str();
  sub->add_option("--trials", cfg.trials, "Generic points per covering check")->capture_default_str();
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "jsonl"}))
      ->capture_default_str();
  sub->add_option("--cache", cfg.cache_path, "Cache file (default: $CCL_CACHE_DIR/<group>.json)");
  sub->add_flag("--no-cache", cfg.no_cache, "Neither read nor write the group cache");
  sub->add_flag("--enable-h4", cfg.h4_enabled, "Allow H4 (order 14400)");
  sub->add_flag("--verbose,-v", cfg.verbose, "Print per-term breakdowns in text output");
  sub->add_option("--eps-membership", cfg.tol.eps_membership)->capture_default_str();
  sub->add_option("--eps-rank", cfg.tol.eps_rank)->capture_default_str();
  sub->add_option("--eps-root-match", cfg.tol.eps_root_match)->capture_default_str();
  sub->add_option("--generic-margin", cfg.tol.generic_margin)->capture_default_str();
}

IndexSet parse_face(const std::string& text, int n) {
  IndexSet s;
  if (text.empty() || text == "{}" || text == "-") return s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(),
                              [](char c) { return c == '{' || c == '}' || c == ' '; }),
               item.end());
    if (item.empty()) continue;
    int i = 0;
    try {
      std::size_t used = 0;
      i = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad --face entry '" + item + "'");
    }
    if (i < 1 || i > n) throw UsageError("--face index " + item + " outside 1.." + std::to_string(n));
    s.push_back(i - 1);
  }
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw UsageError("--face has duplicates");
  return s;
}

struct Loaded {
  RootSystem rs;
  Group g;
};

Loaded load_group(const GroupType& type, const RunConfig& cfg, std::ostream& err,
                  bool force_write) {
  BuildOptions bo;
  bo.enable_h4 = cfg.h4_enabled;
  bo.tol = cfg.tol;
  RootSystem rs = build_root_system(type, bo);
  EnumerateOptions eo;
  eo.tol = cfg.tol;
  if (cfg.no_cache) return {rs, Group::enumerate(rs, eo)};

  const fs::path file = cfg.cache_path.empty() ? cache_file_for(type, default_cache_dir())
                                               : fs::path(cfg.cache_path);
  bool stale = false;
  if (!force_write && fs::exists(file)) {
    try {
      Group g = read_cache(file, rs, cfg.tol);
      return {std::move(rs), std::move(g)};
    } catch (const CacheError& e) {
      err << "ccl: ignoring cache " << file.string() << ": " << e.what() << "; regenerating\n";
      stale = true;
    }
  }
  Group g = Group::enumerate(rs, eo);
  if (force_write || stale) {
    write_cache(file, rs, g);
    err << "ccl: wrote cache " << file.string() << "\n";
  }
  return {std::move(rs), std::move(g)};
}

VerifyOptions verify_options(const RunConfig& cfg) {
  VerifyOptions o;
  o.mc.samples = cfg.samples;
  o.mc.seed = cfg.seed;
  o.mc.chunk_size = cfg.chunk_size;
  o.mc.workers = cfg.workers;
  o.trials = cfg.trials;
  o.tol = cfg.tol;
  o.mc.validate();
  if (o.trials < 1) throw UsageError("--trials must be positive");
  return o;
}

std::vector<IndexSet> faces_for(const RootSystem& rs, const RunConfig& cfg) {
  if (!cfg.face.empty()) return {parse_face(cfg.face, rs.n)};
  std::vector<IndexSet> out;
  for (int k = 0; k <= rs.n; ++k) {
    if (cfg.k && *cfg.k != k) continue;
    for (auto& s : index_subsets(rs.n, k)) out.push_back(std::move(s));
  }
  return out;
}

std::vector<int> ks_for(const RootSystem& rs, const RunConfig& cfg) {
  if (cfg.k) return {*cfg.k};
  std::vector<int> ks;
  for (int k = 0; k <= rs.n; ++k) ks.push_back(k);
  return ks;
}

std::vector<VerificationReport> run_identity(const std::string& id, const RootSystem& rs,
                                             const Group& g, const RunConfig& cfg) {
  const VerifyOptions opt = verify_options(cfg);
  if (cfg.k && (*cfg.k < 0 || *cfg.k > rs.n)) {
    throw UsageError("--k must lie in 0.." + std::to_string(rs.n));
  }
  std::vector<VerificationReport> out;
  if (id == "all") return verify_all(rs, g, opt);
  if (id == "curious") out.push_back(verify_curious(rs, g, opt));
  if (id == "solomon") out.push_back(verify_solomon(rs, g));
  if (id == "waldspurger") out.push_back(verify_waldspurger_partition(rs, g, opt));
  if (id == "covering") out.push_back(verify_covering_count(rs, g, opt));
  if (id == "main") {
    for (int k : ks_for(rs, cfg)) out.push_back(verify_main(rs, g, k, opt));
  }
  if (id == "class-sum") {
    for (int k : ks_for(rs, cfg)) out.push_back(verify_class_sum(rs, g, k));
  }
  if (id == "equiv-measure") {
    for (int k : ks_for(rs, cfg)) {
      for (const auto& cls : subspace_orbits(rs, g, k)) {
        if (!cfg.face.empty() && cls.front() != parse_face(cfg.face, rs.n)) continue;
        out.push_back(verify_equiv_measure(rs, g, cls, opt));
      }
    }
  }
  if (id == "oplus" || id == "decomposition" || id == "parabolic") {
    for (const auto& s : faces_for(rs, cfg)) {
      if (id == "oplus") out.push_back(verify_face_oplus_covering(rs, g, s, opt));
      if (id == "decomposition") out.push_back(verify_face_decomposition(rs, g, s, opt));
      if (id == "parabolic") out.push_back(verify_parabolic_quotient(rs, g, s, opt));
    }
  }
  return out;
}

void emit(const std::vector<VerificationReport>& reports, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out << arr.dump(2) << "\n";
  } else if (cfg.format == "jsonl") {
    for (const auto& r : reports) out << to_json(r).dump() << "\n";
  } else {
    std::size_t passed = 0;
    for (const auto& r : reports) {
      out << to_text(r, cfg.verbose);
      passed += r.passed ? 1 : 0;
    }
    out << passed << "/" << reports.size() << " checks passed\n";
  }
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const VerificationReport& r) { return r.passed; });
}

int cmd_build(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.no_cache) throw UsageError("build writes the cache; --no-cache makes no sense here");
  const auto type = GroupType::parse(cfg.group);
  const auto loaded = load_group(type, cfg, err, /*force_write=*/true);
  const fs::path file = cfg.cache_path.empty() ? cache_file_for(type, default_cache_dir())
                                               : fs::path(cfg.cache_path);
  out << "built " << type.name() << ": order " << loaded.g.order() << ", "
      << loaded.rs.all_roots.size() << " roots, cache " << file.string() << "\n";
  return loaded.g.order() == type.expected_order() ? kExitOk : kExitFailed;
}

int cmd_counts(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto type = GroupType::parse(cfg.group);
  const auto [rs, g] = load_group(type, cfg, err, false);
  const bool ok = solomon_check(g, rs.exponents);
  const auto& counts = g.counts_by_fixed_dim();
  if (cfg.format == "text") {
    out << "group " << type.name() << "  order " << g.order() << "  positive roots "
        << rs.positive_root_count() << "\n";
    out << "k  |W^k|\n";
    for (std::size_t k = 0; k < counts.size(); ++k) out << k << "  " << counts[k] << "\n";
    out << "exponents";
    for (int m : rs.exponents) out << " " << m;
    out << "\nsolomon " << (ok ? "ok" : "MISMATCH") << "\n";
  } else {
    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["group"] = type.name();
    j["order"] = g.order();
    j["positive_roots"] = rs.positive_root_count();
    j["counts_by_fixed_dim"] = counts;
    j["exponents"] = rs.exponents;
    j["solomon"] = ok;
    out << (cfg.format == "json" ? j.dump(2) : j.dump()) << "\n";
  }
  return ok ? kExitOk : kExitFailed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto type = GroupType::parse(cfg.group);
  const auto [rs, g] = load_group(type, cfg, err, false);
  const auto reports = run_identity(cfg.identity, rs, g, cfg);
  if (reports.empty()) throw UsageError("no checks selected");
  emit(reports, cfg, out);
  return all_passed(reports) ? kExitOk : kExitFailed;
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<GroupType> types;
  if (cfg.group.empty() || cfg.group == "all" || cfg.group == "ALL") {
    types = supported_groups(cfg.h4_enabled);
  } else {
    types.push_back(GroupType::parse(cfg.group));
  }
  RunConfig json_cfg = cfg;
  if (json_cfg.format == "text") json_cfg.format = "json";
  std::vector<VerificationReport> reports;
  for (const auto& t : types) {
    const auto [rs, g] = load_group(t, cfg, err, false);
    auto part = verify_all(rs, g, verify_options(cfg));
    reports.insert(reports.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
  }
  emit(reports, json_cfg, out);
  return all_passed(reports) ? kExitOk : kExitFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"ccl: angle measures of cones of finite reflection groups", "ccl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  auto* build = app.add_subcommand("build", "Enumerate the group and write the cache");
  add_common(build, cfg, true);
  auto* counts = app.add_subcommand("counts", "Print |W^k| and the Solomon check");
  add_common(counts, cfg, true);
  auto* verify = app.add_subcommand("verify", "Verify one identity (or all)");
  add_common(verify, cfg, true);
  verify->add_option("identity", cfg.identity, "Identity to verify")
      ->required()
      ->check(CLI::IsMember(kIdentities));
  verify->add_option("--k", cfg.k, "Restrict to one face dimension");
  verify->add_option("--face", cfg.face, "Restrict to one face, 1-based, e.g. 1,3");
  auto* report = app.add_subcommand("report", "Run the full suite, emit a JSON array");
  add_common(report, cfg, false);

  // CLI11 wants argv order with the program name first, reversed internally.
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.tol.validate();
    if (*build) return cmd_build(cfg, out, err);
    if (*counts) return cmd_counts(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out, err);
    if (*report) return cmd_report(cfg, out, err);
  } catch (const UsageError& e) {
    err << "ccl: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedGroup& e) {
    err << "ccl: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FeatureDisabled& e) {
    err << "ccl: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "ccl: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "ccl: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace ccl::cli
