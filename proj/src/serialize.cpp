#include "dpbloom/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "dpbloom/error.hpp"

namespace dpbloom {

namespace {

void put_u16(std::vector<uint8_t>& buf, uint16_t v) {
  buf.push_back(static_cast<uint8_t>(v));
  buf.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u64(std::vector<uint8_t>& buf, uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<uint8_t>& buf, double v) {
  put_u64(buf, std::bit_cast<uint64_t>(v));
}

uint16_t get_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (uint16_t{p[1]} << 8));
}

uint64_t get_u64(const uint8_t* p) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= uint64_t{p[i]} << (8 * i);
  return v;
}

double get_f64(const uint8_t* p) { return std::bit_cast<double>(get_u64(p)); }

std::vector<uint8_t> encode_header(const FilterFileHeader& h) {
  std::vector<uint8_t> buf;
  buf.reserve(FilterFileHeader::kSize);
  buf.insert(buf.end(), std::begin(FilterFileHeader::kMagic),
             std::end(FilterFileHeader::kMagic));
  put_u16(buf, h.version);
  put_u16(buf, h.flags);
  put_u64(buf, h.m);
  put_u64(buf, h.k);
  put_u64(buf, h.n);
  put_u64(buf, h.hash_seed);
  put_u64(buf, h.inserted_count);
  put_f64(buf, h.epsilon);
  put_f64(buf, h.delta);
  put_f64(buf, h.epsilon0);
  put_u64(buf, h.big_n);
  put_u64(buf, h.rng_seed);
  put_u64(buf, h.payload_len);
  return buf;
}

void write_file(const FilterFileHeader& header, const BitArray& bits, std::ostream& out) {
  const std::vector<uint8_t> head = encode_header(header);
  const std::vector<uint8_t> payload = bits.to_bytes();
  out.write(reinterpret_cast<const char*>(head.data()),
            static_cast<std::streamsize>(head.size()));
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoError("filter write failed");
}

}  // namespace

void save_filter(const BloomFilter& filter, std::ostream& out) {
  FilterFileHeader h;
  h.m = filter.params().m;
  h.k = filter.params().k;
  h.n = filter.params().n;
  h.hash_seed = filter.params().seed;
  h.inserted_count = filter.inserted_count();
  h.payload_len = (h.m + 7) / 8;
  write_file(h, filter.bits(), out);
}

void save_filter(const PrivateBloomFilter& filter, std::ostream& out) {
  FilterFileHeader h;
  h.flags = FilterFileHeader::kFlagPrivatized;
  h.m = filter.params().m;
  h.k = filter.params().k;
  h.n = filter.params().n;
  h.hash_seed = filter.params().seed;
  h.inserted_count = filter.budget().dataset_size;
  h.epsilon = filter.budget().epsilon;
  h.delta = filter.budget().delta;
  h.epsilon0 = filter.budget().epsilon0;
  h.big_n = filter.budget().big_n;
  h.rng_seed = filter.rng_seed();
  h.payload_len = (h.m + 7) / 8;
  write_file(h, filter.bits(), out);
}

LoadedFilter load_filter(std::istream& in) {
  uint8_t raw[FilterFileHeader::kSize];
  in.read(reinterpret_cast<char*>(raw), FilterFileHeader::kSize);
  if (in.gcount() != static_cast<std::streamsize>(FilterFileHeader::kSize))
    throw IoError("filter file truncated: short header");
  if (std::memcmp(raw, FilterFileHeader::kMagic, 8) != 0)
    throw IoError("not a filter file: bad magic");

  FilterFileHeader h;
  h.version = get_u16(raw + 8);
  if (h.version != FilterFileHeader::kVersion)
    throw IoError("unsupported filter file version " + std::to_string(h.version));
  h.flags = get_u16(raw + 10);
  h.m = get_u64(raw + 12);
  h.k = get_u64(raw + 20);
  h.n = get_u64(raw + 28);
  h.hash_seed = get_u64(raw + 36);
  h.inserted_count = get_u64(raw + 44);
  h.epsilon = get_f64(raw + 52);
  h.delta = get_f64(raw + 60);
  h.epsilon0 = get_f64(raw + 68);
  h.big_n = get_u64(raw + 76);
  h.rng_seed = get_u64(raw + 84);
  h.payload_len = get_u64(raw + 92);

  if (h.k > kMaxHashFunctions || h.m < 2 || h.n < 1)
    throw IoError("filter file header has invalid dimensions");
  if (h.payload_len != (h.m + 7) / 8)
    throw IoError("filter file header has inconsistent payload length");
  if (h.privatized() != (h.epsilon0 > 0.0 || h.big_n > 0))
    throw IoError("filter file privatized flag disagrees with budget fields");

  std::vector<uint8_t> payload(h.payload_len);
  in.read(reinterpret_cast<char*>(payload.data()),
          static_cast<std::streamsize>(payload.size()));
  if (in.gcount() != static_cast<std::streamsize>(payload.size()))
    throw IoError("filter file truncated: short payload");

  LoadedFilter out;
  out.header = h;
  out.bits = BitArray::from_bytes(h.m, payload);
  return out;
}

BloomFilter LoadedFilter::to_bloom() const {
  if (header.privatized())
    throw DomainError("filter file holds a privatized filter, not a plain one");
  FilterParams params{header.m, static_cast<uint32_t>(header.k), header.n,
                      header.hash_seed};
  return BloomFilter(params, bits, header.inserted_count);
}

PrivateBloomFilter LoadedFilter::to_private() const {
  if (!header.privatized())
    throw DomainError("filter file holds a plain filter, not a privatized one");
  FilterParams params{header.m, static_cast<uint32_t>(header.k), header.n,
                      header.hash_seed};
  PrivacyBudget budget = PrivacyBudget::from_epsilon0(
      header.epsilon0, header.m, static_cast<uint32_t>(header.k), header.inserted_count);
  budget.epsilon = header.epsilon;
  budget.delta = header.delta;
  budget.big_n = static_cast<uint32_t>(header.big_n);
  return PrivateBloomFilter(params, bits, budget, header.rng_seed);
}

void save_filter_file(const BloomFilter& filter, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  save_filter(filter, out);
}

void save_filter_file(const PrivateBloomFilter& filter, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  save_filter(filter, out);
}

LoadedFilter load_filter_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  return load_filter(in);
}

}  // namespace dpbloom
