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

#ifndef LEDP_RNG_HPP_
#define LEDP_RNG_HPP_

// Counter-based random streams. Every random decision in the library is drawn
// from a Stream identified by (master seed, path of integer tags), e.g.
// (seed, trial, vertex, invocation). Streams are pure functions of their
// identity, so results never depend on execution order or worker count.
//
// The block function is Philox4x32-10 (Salmon et al., SC 2011): the 64-bit
// master seed is the Philox key, the top 64 counter bits carry the hashed
// stream path, and the low 64 counter bits index the block within a stream.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace ledp {

class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block Generate(Block counter, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeylA;
        key[1] += kWeylB;
      }
      counter = Round(counter, key);
    }
    return counter;
  }

 private:
  static constexpr std::uint32_t kWeylA = 0x9E3779B9;
  static constexpr std::uint32_t kWeylB = 0xBB67AE85;
  static constexpr std::uint32_t kMulA = 0xD2511F53;
  static constexpr std::uint32_t kMulB = 0xCD9E8D57;

  static Block Round(const Block& c, const Key& key) {
    const std::uint64_t p0 = std::uint64_t{kMulA} * c[0];
    const std::uint64_t p1 = std::uint64_t{kMulB} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ key[0], lo1, hi0 ^ c[3] ^ key[1], lo0};
  }
};

// SplitMix64 finalizer; used only to hash stream paths.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Stream;

// Identity of a random stream. Child() extends the path by one tag; distinct
// paths give (with overwhelming probability) disjoint Philox counter ranges.
class StreamKey {
 public:
  constexpr StreamKey() = default;
  constexpr explicit StreamKey(std::uint64_t seed) : seed_(seed) {}

  constexpr StreamKey Child(std::uint64_t tag) const {
    StreamKey out = *this;
    out.path_ = Mix64(path_ ^ Mix64(tag + 0x9E3779B97F4A7C15ULL));
    return out;
  }
  template <typename... Tags>
  constexpr StreamKey Child(std::uint64_t first, Tags... rest) const {
    if constexpr (sizeof...(rest) == 0) {
      return Child(first);
    } else {
      return Child(first).Child(static_cast<std::uint64_t>(rest)...);
    }
  }

  constexpr std::uint64_t seed() const { return seed_; }
  constexpr std::uint64_t path() const { return path_; }

  Stream Open() const;

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t path_ = 0x6A09E667F3BCC909ULL;
};

// Tag constants that name sub-streams, so call sites read as intent.
enum StreamTag : std::uint64_t {
  kTagTrial = 1,
  kTagVertex = 2,
  kTagGraph = 3,
  kTagQueries = 4,
  kTagPrepare = 5,
  kTagAnswer = 6,
  kTagSearch = 7,
  kTagDataset = 8,
  kTagMatrix = 9,
  kTagSample = 10,
};

// A sequential view of one stream. Satisfies UniformRandomBitGenerator.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(const StreamKey& key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    if (buffered_ == 0) Refill();
    return buffer_[--buffered_];
  }

  // Uniform on [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Uniform on {0, ..., bound - 1} by rejection (no modulo bias).
  std::uint64_t Below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Stream::Below: bound == 0");
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % bound;
  }

  int Sign() { return ((*this)() >> 63) != 0 ? 1 : -1; }

  const StreamKey& key() const { return key_; }

 private:
  void Refill() {
    const Philox4x32::Block counter = {
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(key_.path()),
        static_cast<std::uint32_t>(key_.path() >> 32)};
    const Philox4x32::Key k = {static_cast<std::uint32_t>(key_.seed()),
                               static_cast<std::uint32_t>(key_.seed() >> 32)};
    const Philox4x32::Block out = Philox4x32::Generate(counter, k);
    ++block_;
    // Served in reverse, so the first draw is (out[1] << 32) | out[0].
    buffer_[1] = (std::uint64_t{out[1]} << 32) | out[0];
    buffer_[0] = (std::uint64_t{out[3]} << 32) | out[2];
    buffered_ = 2;
  }

  StreamKey key_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

inline Stream StreamKey::Open() const { return Stream(*this); }

}  // namespace ledp

#endif  // LEDP_RNG_HPP_
