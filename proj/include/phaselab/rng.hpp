// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace phaselab {

/// Counter-based 64-bit generator (splitmix64). The i-th output is a pure
/// function of seed + i*GAMMA, so streams are reproducible regardless of how
/// work is scheduled across threads. Gaussian variates come from Box-Muller
/// on top of it; no library distributions are used, keeping every draw
/// bit-stable across platforms and worker counts.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double next_double_open0() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard real Gaussian via Box-Muller (one spare cached).
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = next_double_open0();
    double v = next_double();
    double r = std::sqrt(-2.0 * std::log(u));
    double a = 6.283185307179586476925286766559 * v;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Uniform integer in [0, bound) by rejection (unbiased).
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// splitmix64 finalizer used as a one-shot mixing function.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Per-trial stream derivation: chained mixing of the base seed with the
/// grid coordinates. Order-sensitive, so (i,j) and (j,i) give distinct
/// streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t delta_index,
                                 std::uint64_t rho_index, std::uint64_t trial_index) {
  std::uint64_t s = mix64(base + 0x9E3779B97F4A7C15ULL);
  s = mix64(s ^ (delta_index + 0xD1B54A32D192ED03ULL));
  s = mix64(s ^ (rho_index + 0x8CB92BA72F3D8DD7ULL));
  s = mix64(s ^ (trial_index + 0xA24BAED4963EE407ULL));
  return s;
}

}  // namespace phaselab
