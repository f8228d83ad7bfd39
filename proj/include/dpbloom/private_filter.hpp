#pragma once

#include <cstdint>

#include "dpbloom/bit_array.hpp"
#include "dpbloom/bloom.hpp"
#include "dpbloom/budget.hpp"
#include "dpbloom/params.hpp"

namespace dpbloom {

// Perturbed filter: the released artifact. Carries the budget that
// produced it and the flip-pass seed for reproducibility. Immutable.
class PrivateBloomFilter {
 public:
  PrivateBloomFilter(FilterParams params, BitArray bits, PrivacyBudget budget,
                     uint64_t rng_seed)
      : params_(params),
        hashes_(params),
        bits_(std::move(bits)),
        budget_(budget),
        rng_seed_(rng_seed) {}

  const FilterParams& params() const { return params_; }
  const BitArray& bits() const { return bits_; }
  const HashFamily& hashes() const { return hashes_; }
  const PrivacyBudget& budget() const { return budget_; }
  uint64_t rng_seed() const { return rng_seed_; }

 private:
  FilterParams params_;
  HashFamily hashes_;
  BitArray bits_;
  PrivacyBudget budget_;
  uint64_t rng_seed_;
};

// Random-response pass: every bit is kept with probability keep_prob
// and complemented with flip_prob, one counter-indexed draw per bit, so
// the result is a pure function of (filter, budget, rng_seed). The
// budget's recorded (m, k, |A|) must match the filter.
PrivateBloomFilter privatize(const BloomFilter& filter, const PrivacyBudget& budget,
                             uint64_t rng_seed);

// Query over the perturbed array; same conjunction as the standard
// filter, no further randomness.
bool private_query(const PrivateBloomFilter& filter, uint64_t y);

}  // namespace dpbloom
