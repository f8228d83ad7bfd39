#include "dpbloom/private_filter.hpp"

#include <cmath>

#include "dpbloom/error.hpp"
#include "dpbloom/rng.hpp"

namespace dpbloom {

namespace {

// Threshold such that a uniform 64-bit draw falls below it with
// probability p (up to one part in 2^64).
uint64_t flip_threshold(double p) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return UINT64_MAX;
  const long double scaled = static_cast<long double>(p) * 18446744073709551616.0L;
  return static_cast<uint64_t>(scaled);
}

}  // namespace

PrivateBloomFilter privatize(const BloomFilter& filter, const PrivacyBudget& budget,
                             uint64_t rng_seed) {
  const FilterParams& p = filter.params();
  if (budget.m != p.m || budget.k != p.k ||
      budget.dataset_size != filter.inserted_count())
    throw DomainError(
        "privatize: budget was derived for different (m, k, |A|) than this filter");

  const uint64_t threshold = flip_threshold(budget.flip_prob);
  const uint64_t key = mix64(rng_seed ^ 0x5851f42d4c957f2dULL);
  BitArray bits = filter.bits();
  for (uint64_t j = 0; j < p.m; ++j)
    if (prf64(key, j) < threshold) bits.assign(j, !bits.get(j));
  return PrivateBloomFilter(p, std::move(bits), budget, rng_seed);
}

bool private_query(const PrivateBloomFilter& filter, uint64_t y) {
  const FilterParams& p = filter.params();
  if (y >= p.n) throw DomainError("private_query: element outside universe [0, n)");
  for (uint32_t i = 0; i < p.k; ++i)
    if (!filter.bits().get(filter.hashes().index_unchecked(i, y))) return false;
  return true;
}

}  // namespace dpbloom
