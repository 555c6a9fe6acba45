#pragma once

#include <cstdint>

namespace turntable {

/// 64-bit linear congruential generator with Knuth's MMIX constants. The
/// stream is fully specified so seeded runs reproduce across implementations:
///   state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64)
/// and every draw advances the state exactly once.
class Lcg64 {
 public:
  static constexpr std::uint64_t multiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t increment = 1442695040888963407ULL;

  explicit constexpr Lcg64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ = state_ * multiplier + increment;
    return state_;
  }

  /// Uniform integer in [0, bound) from the high 31 bits; bound > 0.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept { return (next() >> 33) % bound; }

  /// Uniform double in [0, 1) from the high 53 bits.
  constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace turntable
