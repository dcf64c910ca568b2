// Copyright 2026 The LEDP Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEDP_BITS_HPP_
#define LEDP_BITS_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ledp {

// Packed, fixed-length bit vector. Bits past size() in the last word are
// always zero, so word-level popcounts and comparisons are exact.
class BitVector {
 public:
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t size)
      : size_(size), words_(WordCount(size), 0) {}
  BitVector(std::initializer_list<int> bits) : BitVector(bits.size()) {
    std::size_t i = 0;
    for (int b : bits) Set(i++, b != 0);
  }

  static constexpr std::size_t WordCount(std::size_t bits) {
    return (bits + kWordBits - 1) / kWordBits;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool Get(std::size_t i) const {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
  }
  bool operator[](std::size_t i) const { return Get(i); }

  void Set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void Flip(std::size_t i) {
    words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits);
  }

  std::size_t Count() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return total;
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }

  // Lowercase hex, two digits per byte, byte b holding bits [8b, 8b+8) with
  // bit 8b as the least significant bit of the byte.
  std::string ToHex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t bytes = (size_ + 7) / 8;
    std::string out;
    out.reserve(2 * bytes);
    for (std::size_t b = 0; b < bytes; ++b) {
      const auto byte = static_cast<unsigned>(
          (words_[b / 8] >> (8 * (b % 8))) & 0xffu);
      out.push_back(kDigits[byte >> 4]);
      out.push_back(kDigits[byte & 0xfu]);
    }
    return out;
  }

  static BitVector FromHex(const std::string& hex, std::size_t size) {
    if (hex.size() != 2 * ((size + 7) / 8)) {
      throw std::invalid_argument("BitVector::FromHex: length mismatch");
    }
    BitVector out(size);
    for (std::size_t b = 0; b < hex.size() / 2; ++b) {
      const std::uint64_t byte = std::stoul(hex.substr(2 * b, 2), nullptr, 16);
      out.words_[b / 8] |= byte << (8 * (b % 8));
    }
    if (size % kWordBits != 0 && !out.words_.empty() &&
        (out.words_.back() >> (size % kWordBits)) != 0) {
      throw std::invalid_argument("BitVector::FromHex: bits past size set");
    }
    return out;
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::size_t HammingDistance(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("HammingDistance: size mismatch");
  }
  std::size_t d = 0;
  for (std::size_t w = 0; w < a.words().size(); ++w) {
    d += std::popcount(a.words()[w] ^ b.words()[w]);
  }
  return d;
}

}  // namespace ledp

#endif  // LEDP_BITS_HPP_
