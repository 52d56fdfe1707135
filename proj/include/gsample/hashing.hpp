#pragma once

#include <cstdint>
#include <random>

#include "gsample/graph.hpp"

namespace gsample {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

/// Seeded hash of a node id; a fixed random permutation of ids per seed.
constexpr std::uint64_t hash_node(std::uint64_t seed, NodeId id) noexcept {
  return mix64(mix64(seed + 0x9E3779B97F4A7C15ULL) ^
               static_cast<std::uint64_t>(id));
}

/// Seeded hash over the canonical (min, max) endpoint pair.
constexpr std::uint64_t hash_edge(std::uint64_t seed, Edge e) noexcept {
  const Edge c = e.canonical();
  return mix64(hash_node(seed, c.u) + 0x632BE59BD9B4E019ULL *
                                           static_cast<std::uint64_t>(c.v));
}

/// Derives an independent sub-seed for one purpose (sampler RNG, CV folds...)
/// from a trial seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::uint64_t salt) noexcept {
  return mix64(seed ^ mix64(salt + 0xD1B54A32D192ED03ULL));
}

/// Seeded generator with platform-independent bounded draws.
///
/// std::uniform_int_distribution is implementation-defined, so draws go
/// through Lemire's multiply-shift rejection instead to keep samples
/// bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Number of failures before the first success, success probability
  /// 1 - p, i.e. P(k) = p^k (1 - p) with mean p / (1 - p).
  std::uint64_t geometric_failures(double p) {
    std::uint64_t k = 0;
    while (uniform01() < p) ++k;
    return k;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gsample
