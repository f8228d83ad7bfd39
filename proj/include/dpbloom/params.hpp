#pragma once

#include <cstdint>

#include "dpbloom/error.hpp"

namespace dpbloom {

inline constexpr uint32_t kMaxHashFunctions = 64;

// Shared dimensions of a filter: bit-array length m, hash count k,
// universe size n (elements are integers in [0, n)), and the root seed
// every hash function is derived from.
struct FilterParams {
  uint64_t m = 0;
  uint32_t k = 0;
  uint64_t n = 0;
  uint64_t seed = 0;

  void validate() const {
    if (m < 2) throw DomainError("FilterParams: m must be >= 2");
    if (k < 1 || k > kMaxHashFunctions)
      throw DomainError("FilterParams: k must be in [1, 64]");
    if (n < 1) throw DomainError("FilterParams: n must be >= 1");
  }

  friend bool operator==(const FilterParams&, const FilterParams&) = default;
};

}  // namespace dpbloom
