#pragma once

#include <cstdint>
#include <random>

namespace qkd {

// Deterministic draw source: one 64-bit seed, one stream of uniform values
// in [0,1) with 53-bit resolution. Every random decision in a session
// consumes draws from a single source in a fixed order, so a (config, seed)
// pair fully determines the run.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  bool chance(double probability) { return uniform() < probability; }

  // Uniform index in [0, n); n must be >= 1 and small.
  std::size_t pick(std::size_t n) {
    std::size_t i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qkd
