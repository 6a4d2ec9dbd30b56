#pragma once

#include "ccl/cone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string_view>
#include <thread>
#include <vector>

namespace ccl {

enum class AngleMethod { Exact0, Exact1, Exact2Arc, Exact3Girard, MonteCarlo };

std::string_view to_string(AngleMethod m);

/// A relative angle measure sigma(C) = vol(C n B) / vol(B), B the unit ball
/// of span(C). `std_error` is 0 exactly when the method is exact.
struct AngleEstimate {
  double value = 0.0;
  double std_error = 0.0;
  AngleMethod method = AngleMethod::Exact0;
  long long samples = 0;

  bool exact() const { return method != AngleMethod::MonteCarlo; }
};

struct McConfig {
  long long samples = 1'000'000;
  std::uint64_t seed = 42;
  long long chunk_size = 65'536;
  /// Worker threads; 0 picks std::thread::hardware_concurrency(). Results
  /// do not depend on this value.
  int workers = 0;

  void validate() const;
  /// Same config with a seed derived from (seed, stream). Used to give
  /// independent streams to the separate cones of one verification.
  McConfig with_stream(std::uint64_t stream) const;
};

/// SplitMix64 finalizer.
std::uint64_t mix_seed(std::uint64_t x);

/// Seed of chunk `chunk` under base seed `seed`.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk);

struct McResult {
  double fraction = 0.0;
  double std_error = 0.0;
  long long hits = 0;
  long long samples = 0;
};

/// Fraction of standard Gaussian points of R^dim accepted by `indicator`.
///
/// Work is cut into chunks of mc.chunk_size samples; chunk j draws from its
/// own mt19937_64 seeded by chunk_seed(mc.seed, j). Chunks are distributed
/// over workers but only integer hit counts are combined, so the result is
/// bit-identical for any worker count. `indicator` is called as
/// bool(std::span<const double>) and must be pure.
template <class Indicator>
McResult mc_fraction(const Indicator& indicator, int dim, const McConfig& mc) {
  mc.validate();
  const long long chunks = (mc.samples + mc.chunk_size - 1) / mc.chunk_size;
  std::vector<long long> hits(static_cast<std::size_t>(chunks), 0);

  auto run_chunk = [&](long long j) {
    std::mt19937_64 rng(chunk_seed(mc.seed, static_cast<std::uint64_t>(j)));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> point(static_cast<std::size_t>(dim));
    const long long begin = j * mc.chunk_size;
    const long long end = std::min(mc.samples, begin + mc.chunk_size);
    long long local = 0;
    for (long long s = begin; s < end; ++s) {
      for (auto& x : point) x = normal(rng);
      if (indicator(std::span<const double>(point))) ++local;
    }
    hits[static_cast<std::size_t>(j)] = local;
  };

  int workers = mc.workers > 0 ? mc.workers
                               : static_cast<int>(std::thread::hardware_concurrency());
  workers = static_cast<int>(std::clamp<long long>(workers, 1, chunks));
  if (workers == 1) {
    for (long long j = 0; j < chunks; ++j) run_chunk(j);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (long long j = w; j < chunks; j += workers) run_chunk(j);
      });
    }
    for (auto& t : pool) t.join();
  }

  McResult r;
  r.samples = mc.samples;
  for (long long h : hits) r.hits += h;
  const double n = static_cast<double>(mc.samples);
  r.fraction = static_cast<double>(r.hits) / n;
  r.std_error = std::sqrt(r.fraction * (1.0 - r.fraction) / n);
  return r;
}

/// sigma(c): exact for dim <= 3 (1, 1/2, arc, Girard excess), Monte Carlo
/// for dim >= 4. sigma({0}) is taken to be 1.
AngleEstimate measure(const SimplicialCone& c, const McConfig& mc = {});

/// Forces the Monte Carlo path for any dim >= 1 (dim 0 still returns 1).
AngleEstimate measure_monte_carlo(const SimplicialCone& c, const McConfig& mc = {});

/// Exact paths only; throws InvalidArgument for dim >= 4.
AngleEstimate measure_exact(const SimplicialCone& c);

}  // namespace ccl
