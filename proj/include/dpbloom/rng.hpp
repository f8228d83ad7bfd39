#pragma once

#include <cstdint>

namespace dpbloom {

// 64-bit finalizer (SplitMix64 / Stafford mix13). Bijective, full avalanche.
inline constexpr uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Keyed pseudo-random function over a 64-bit counter. Two finalizer
// rounds with the key injected between them; used for per-bit flip
// decisions and per-trial substream derivation, so that any draw is
// addressable by index without sequential state.
inline constexpr uint64_t prf64(uint64_t key, uint64_t counter) {
  return mix64(key ^ mix64(counter + 0x9e3779b97f4a7c15ULL));
}

// Sequential generator for sampling loops. splitmix64: tiny state,
// passes BigCrush, reproducible everywhere.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(uint64_t seed) : state_(seed) {}

  constexpr uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    return mix64(z);
  }

  // Unbiased uniform draw from [0, bound) via rejection.
  uint64_t next_below(uint64_t bound) {
    const uint64_t limit = bound * (UINT64_MAX / bound);
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  double next_unit() { return (next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

}  // namespace dpbloom
