#pragma once

#include <cstdint>
#include <vector>

#include "dpbloom/error.hpp"
#include "dpbloom/params.hpp"
#include "dpbloom/rng.hpp"

namespace dpbloom {

// k hash functions [n] -> [m], all derived deterministically from one
// root seed. Each index i gets its own lane key from a splitmix stream,
// and h_i(x) applies a two-round keyed mix to x before reduction mod m,
// so the k values for one element behave like independent uniform draws.
// Stateless after construction; shareable across threads.
class HashFamily {
 public:
  explicit HashFamily(const FilterParams& params) : params_(params) {
    params_.validate();
    lane_keys_.resize(params_.k);
    SplitMix64 stream(mix64(params_.seed ^ 0x243f6a8885a308d3ULL));
    for (auto& key : lane_keys_) key = stream.next();
  }

  // h_i(x). Throws DomainError when i >= k or x >= n.
  uint64_t index(uint32_t i, uint64_t x) const {
    if (i >= params_.k) throw DomainError("hash_index: hash index out of range");
    if (x >= params_.n) throw DomainError("hash_index: element outside universe");
    return index_unchecked(i, x);
  }

  uint64_t index_unchecked(uint32_t i, uint64_t x) const {
    return prf64(lane_keys_[i], x) % params_.m;
  }

  const FilterParams& params() const { return params_; }

 private:
  FilterParams params_;
  std::vector<uint64_t> lane_keys_;
};

// Free-function form used throughout the API surface.
inline uint64_t hash_index(const FilterParams& params, uint32_t i, uint64_t x) {
  return HashFamily(params).index(i, x);
}

}  // namespace dpbloom
