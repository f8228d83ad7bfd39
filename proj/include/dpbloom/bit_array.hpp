#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "dpbloom/error.hpp"

namespace dpbloom {

// Fixed-size bit array backed by 64-bit words. Bit j lives in word
// j/64 at position j%64; serialized byte j/8 holds bit j at position
// j%8, LSB first (matching the little-endian word layout).
class BitArray {
 public:
  BitArray() = default;
  explicit BitArray(uint64_t size)
      : size_(size), words_((size + 63) / 64, 0) {}

  uint64_t size() const { return size_; }

  bool get(uint64_t j) const { return (words_[j >> 6] >> (j & 63)) & 1; }
  void set(uint64_t j) { words_[j >> 6] |= uint64_t{1} << (j & 63); }
  void assign(uint64_t j, bool v) {
    const uint64_t mask = uint64_t{1} << (j & 63);
    if (v)
      words_[j >> 6] |= mask;
    else
      words_[j >> 6] &= ~mask;
  }

  uint64_t popcount() const {
    uint64_t total = 0;
    for (uint64_t w : words_) total += std::popcount(w);
    return total;
  }

  // Number of positions where the two arrays differ.
  uint64_t hamming_distance(const BitArray& other) const {
    if (size_ != other.size_)
      throw DomainError("BitArray: size mismatch in hamming_distance");
    uint64_t total = 0;
    for (size_t i = 0; i < words_.size(); ++i)
      total += std::popcount(words_[i] ^ other.words_[i]);
    return total;
  }

  // Payload bytes, bit j at byte j/8 position j%8 (LSB first).
  std::vector<uint8_t> to_bytes() const {
    std::vector<uint8_t> bytes((size_ + 7) / 8, 0);
    for (size_t b = 0; b < bytes.size(); ++b)
      bytes[b] = static_cast<uint8_t>(words_[b >> 3] >> ((b & 7) * 8));
    return bytes;
  }

  static BitArray from_bytes(uint64_t size, const std::vector<uint8_t>& bytes) {
    if (bytes.size() != (size + 7) / 8)
      throw DomainError("BitArray: payload length does not match bit count");
    BitArray out(size);
    for (size_t b = 0; b < bytes.size(); ++b)
      out.words_[b >> 3] |= uint64_t{bytes[b]} << ((b & 7) * 8);
    // Bits past `size` in the last byte must be zero.
    if (size % 8 != 0 && !bytes.empty()) {
      const uint8_t tail = bytes.back() >> (size % 8);
      if (tail != 0) throw DomainError("BitArray: nonzero padding bits");
    }
    return out;
  }

  friend bool operator==(const BitArray&, const BitArray&) = default;

 private:
  uint64_t size_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace dpbloom
