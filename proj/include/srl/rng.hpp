#pragma once

#include <cstdint>
#include <random>

namespace srl {

// Deterministic random source.  std::mt19937_64 has a sequence fixed by the
// standard, so a given seed reproduces the same stream on every platform.
// The bounded draw uses rejection sampling (no modulo bias, and independent
// of std::uniform_int_distribution, whose mapping is implementation defined).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform draw from [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    // Smallest power-of-two mask covering n-1.
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      std::uint64_t v = engine_() & mask;
      if (v < n) return v;
    }
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace srl
