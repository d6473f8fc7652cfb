#pragma once

#include <cstdint>
#include <random>

namespace repmas::scenario {

/// Seeded generator for world dynamics. The engine is std::mt19937_64, whose
/// output sequence is fixed by the C++ standard; the mappings below are
/// spelled out here rather than taken from <random> distributions, which are
/// implementation-defined. Same seed, same stream, on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Top 53 bits scaled to [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n) by rejection; n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace repmas::scenario
