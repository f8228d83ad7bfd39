#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "dpbloom/bloom.hpp"
#include "dpbloom/private_filter.hpp"

namespace dpbloom {

// Binary filter file: fixed little-endian header followed by the raw
// bit array (bit j at byte j/8, position j%8, LSB first). The header
// carries the privacy provenance of a released array; the epsilon
// fields and N are zero and flags bit 0 clear for a plain filter.
struct FilterFileHeader {
  static constexpr char kMagic[8] = {'D', 'P', 'B', 'L', 'O', 'O', 'M', '1'};
  static constexpr uint16_t kVersion = 1;
  static constexpr uint16_t kFlagPrivatized = 1;
  static constexpr size_t kSize = 100;

  uint16_t version = kVersion;
  uint16_t flags = 0;
  uint64_t m = 0;
  uint64_t k = 0;
  uint64_t n = 0;
  uint64_t hash_seed = 0;
  uint64_t inserted_count = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double epsilon0 = 0.0;
  uint64_t big_n = 0;
  uint64_t rng_seed = 0;
  uint64_t payload_len = 0;

  bool privatized() const { return flags & kFlagPrivatized; }
};

// In-memory image of a filter file; exactly one of the two filter kinds
// depending on header flags.
struct LoadedFilter {
  FilterFileHeader header;
  BitArray bits;

  BloomFilter to_bloom() const;
  PrivateBloomFilter to_private() const;
};

void save_filter(const BloomFilter& filter, std::ostream& out);
void save_filter(const PrivateBloomFilter& filter, std::ostream& out);
LoadedFilter load_filter(std::istream& in);

void save_filter_file(const BloomFilter& filter, const std::string& path);
void save_filter_file(const PrivateBloomFilter& filter, const std::string& path);
LoadedFilter load_filter_file(const std::string& path);

}  // namespace dpbloom
