#pragma once

#include <cstdint>
#include <limits>

namespace tricorr {

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator so it can drive
/// the <random> distributions; cheap enough to construct one per sample.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Seed of the independent stream for item `index` under `master_seed`.
/// Streams depend only on (master_seed, index), never on scheduling.
inline std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
  SplitMix64 mix(master_seed ^ 0x6A09E667F3BCC908ull);
  std::uint64_t h = mix();
  SplitMix64 mix2(h + index * 0xD1B54A32D192ED03ull);
  return mix2();
}

}  // namespace tricorr
