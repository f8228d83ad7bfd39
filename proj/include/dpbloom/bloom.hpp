#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dpbloom/bit_array.hpp"
#include "dpbloom/hash.hpp"
#include "dpbloom/params.hpp"

namespace dpbloom {

// Standard Bloom filter: bit array of m bits populated by k hashes per
// element. Immutable after construction; concurrent reads are safe.
class BloomFilter {
 public:
  BloomFilter(FilterParams params, BitArray bits, uint64_t inserted_count)
      : params_(params),
        hashes_(params),
        bits_(std::move(bits)),
        inserted_count_(inserted_count) {}

  const FilterParams& params() const { return params_; }
  const BitArray& bits() const { return bits_; }
  const HashFamily& hashes() const { return hashes_; }
  uint64_t inserted_count() const { return inserted_count_; }
  double load_factor() const {
    return static_cast<double>(bits_.popcount()) / static_cast<double>(params_.m);
  }

 private:
  FilterParams params_;
  HashFamily hashes_;
  BitArray bits_;
  uint64_t inserted_count_;
};

// Builds the ground-truth bit array: sets h_i(x) for every element and
// every hash. Duplicate elements are deduplicated before counting, so
// inserted_count is the number of distinct elements.
BloomFilter bloom_init(std::span<const uint64_t> dataset, const FilterParams& params);

// Membership query: true iff all k probed bits are set. Inserted
// elements always answer true.
bool bloom_query(const BloomFilter& filter, uint64_t y);

}  // namespace dpbloom
