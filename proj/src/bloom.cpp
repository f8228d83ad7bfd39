#include "dpbloom/bloom.hpp"

#include <algorithm>

#include "dpbloom/error.hpp"

namespace dpbloom {

BloomFilter bloom_init(std::span<const uint64_t> dataset, const FilterParams& params) {
  params.validate();
  std::vector<uint64_t> elements(dataset.begin(), dataset.end());
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!elements.empty() && elements.back() >= params.n)
    throw DomainError("bloom_init: element outside universe [0, n)");

  HashFamily hashes(params);
  BitArray bits(params.m);
  for (uint64_t x : elements)
    for (uint32_t i = 0; i < params.k; ++i) bits.set(hashes.index_unchecked(i, x));
  return BloomFilter(params, std::move(bits), elements.size());
}

bool bloom_query(const BloomFilter& filter, uint64_t y) {
  const FilterParams& p = filter.params();
  if (y >= p.n) throw DomainError("bloom_query: element outside universe [0, n)");
  for (uint32_t i = 0; i < p.k; ++i)
    if (!filter.bits().get(filter.hashes().index_unchecked(i, y))) return false;
  return true;
}

}  // namespace dpbloom
