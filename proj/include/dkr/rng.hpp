#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace dkr {

/// Name of the random stream algorithm, recorded in output metadata so result
/// files identify how their randomness was produced. The integer stream is
/// bit-portable; the real-valued mappings (uniform, normal) go through the
/// platform libm and may differ in the last ulp between C libraries.
inline constexpr const char* kRngAlgorithm = "splitmix64-boxmuller-v1";

/// Mixes a base seed with a stream index into an independent-looking sub-seed.
/// Used to derive per-segment and per-repetition streams from one user seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// SplitMix64 generator (Steele, Lea, Flood 2014). Small, seedable, and fully
/// specified by its update function, so seeded runs reproduce everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via the Box-Muller cosine branch. Consumes exactly two
  /// draws per variate; no cached spare, so the stream position is a pure
  /// function of the number of calls.
  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]: keeps log() finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  /// Uniform integer in [0, bound) via bitmask rejection; unbiased and
  /// independent of the platform's integer division behavior.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    std::uint64_t draw;
    do {
      draw = next() & mask;
    } while (draw >= bound);
    return draw;
  }

 private:
  std::uint64_t state_;
};

}  // namespace dkr
