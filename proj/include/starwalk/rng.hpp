// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace starwalk {

/// splitmix64: the recommended seeding sequence for xoshiro-family engines.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

/// Deterministic random source: xoshiro256++ seeded via splitmix64 from a
/// (seed, stream) pair, with an own Box--Muller normal generator.
///
/// Everything here is specified exactly (no implementation-defined standard
/// library distributions), so a (seed, stream) pair reproduces the identical
/// bit stream on every platform.  Per-path generators derive from
/// (seed, stream, path_id) alone -- independent of thread count or call
/// order -- which is what makes ensemble results shard-invariant.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0) {
    reseed(mix(seed, stream));
  }

  static Rng for_path(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t path_id) {
    Rng r;
    r.reseed(mix(mix(seed, stream), path_id));
    return r;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos() { return 1.0 - uniform(); }

  /// Standard normal via Box--Muller (deterministic draw count: two
  /// uniforms per pair, second value cached).
  double normal() {
    if (has_cache_) {
      has_cache_ = false;
      return cache_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double a = 6.28318530717958647692 * uniform();
    cache_ = r * std::sin(a);
    has_cache_ = true;
    return r * std::cos(a);
  }

  double exponential(double rate) {
    if (!(rate > 0.0))
      throw std::invalid_argument("Rng::exponential: rate must be > 0");
    return -std::log(uniform_pos()) / rate;
  }

  /// Index in [0, w.size()) with probabilities proportional to w.
  int categorical(const std::vector<double>& w) {
    double total = 0.0;
    for (double x : w) total += x;
    double u = uniform() * total;
    for (std::size_t i = 0; i < w.size(); ++i) {
      u -= w[i];
      if (u < 0.0) return static_cast<int>(i);
    }
    return static_cast<int>(w.size()) - 1;  // roundoff fell off the end
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  /// Order-sensitive 64-bit combiner (mix(a,b) != mix(b,a)).
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    SplitMix64 m{a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2))};
    m.next();
    return m.next();
  }

  void reseed(std::uint64_t s) {
    SplitMix64 m{s};
    for (auto& w : s_) w = m.next();
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // forbidden state
    has_cache_ = false;
    cache_ = 0.0;
  }

  std::uint64_t s_[4] = {};
  double cache_ = 0.0;
  bool has_cache_ = false;
};

}  // namespace starwalk
