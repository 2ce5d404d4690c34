#pragma once

#include <cstdint>

namespace psync {

/// Knuth's MMIX linear congruential generator,
///
///     state' = state * 6364136223846793005 + 1442695040888963407  (mod 2^64)
///
/// with the high 32 bits of the new state as output. Every draw below is
/// defined in terms of next32() alone so sequences are portable across
/// platforms and standard libraries (std:: distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint32_t next32() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<std::uint32_t>(state_ >> 32);
  }

  /// Uniform in [0, bound) by multiply-shift; bound must be positive.
  std::uint32_t below(std::uint32_t bound) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(next32()) * bound) >> 32);
  }

  /// Uniform in [0, 1) with 32 bits of resolution.
  double unit() { return next32() * (1.0 / 4294967296.0); }

 private:
  std::uint64_t state_;
};

}  // namespace psync
