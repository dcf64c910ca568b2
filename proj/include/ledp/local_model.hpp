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

#ifndef LEDP_LOCAL_MODEL_HPP_
#define LEDP_LOCAL_MODEL_HPP_

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ledp/bits.hpp"
#include "ledp/graph.hpp"
#include "ledp/privacy.hpp"
#include "ledp/rng.hpp"

namespace ledp {

// Which part of a party's adjacency row a randomizer consumes. Vertex i in
// kUpperTriangle mode reads only bits j > i, so every potential edge is read
// by exactly one party; kFullRow reads the whole row.
enum class ReleaseMode { kUpperTriangle, kFullRow };

inline const char* ToString(ReleaseMode mode) {
  return mode == ReleaseMode::kUpperTriangle ? "upper" : "full";
}

// The slice of `row` (length n) that vertex v consumes under `mode`.
inline BitVector ConsumedBits(Vertex v, const BitVector& row,
                              ReleaseMode mode) {
  if (mode == ReleaseMode::kFullRow) return row;
  const std::size_t n = row.size();
  BitVector out(v + 1 < n ? n - v - 1 : 0);
  for (std::size_t j = v + 1; j < n; ++j) out.Set(j - v - 1, row.Get(j));
  return out;
}

struct RandomizerOutput {
  Vertex vertex = 0;
  std::uint64_t tag = 0;  // distinguishes invocations of one party in a round
  std::string randomizer;
  PrivacyParams params;
  BitVector payload;
};

// A local randomizer per vertex. Release() sees the full adjacency row; the
// family's Mode() declares which bits it reads, which drives the ledger.
template <typename F>
concept RandomizerFamily =
    requires(const F& f, Vertex v, const BitVector& row, Stream& rng) {
      { f.Name() } -> std::convertible_to<std::string>;
      { f.Params() } -> std::same_as<PrivacyParams>;
      { f.Mode() } -> std::same_as<ReleaseMode>;
      { f.Release(v, row, rng) } -> std::same_as<BitVector>;
    };

class RandomizedResponseFamily {
 public:
  explicit RandomizedResponseFamily(
      double epsilon, ReleaseMode mode = ReleaseMode::kUpperTriangle)
      : epsilon_(epsilon), mode_(mode) {
    CheckEpsilon(epsilon, "RandomizedResponseFamily");
  }

  std::string Name() const {
    return std::string("randomized_response/") + ToString(mode_);
  }
  PrivacyParams Params() const { return {epsilon_, 0.0}; }
  ReleaseMode Mode() const { return mode_; }
  double epsilon() const { return epsilon_; }

  BitVector Release(Vertex v, const BitVector& row, Stream& rng) const {
    return RandomizedResponse(ConsumedBits(v, row, mode_), epsilon_, rng);
  }

 private:
  double epsilon_;
  ReleaseMode mode_;
};

// Releases the consumed bits verbatim. Not private; charged epsilon = +inf.
class IdentityFamily {
 public:
  explicit IdentityFamily(ReleaseMode mode = ReleaseMode::kUpperTriangle)
      : mode_(mode) {}

  std::string Name() const {
    return std::string("identity/") + ToString(mode_);
  }
  PrivacyParams Params() const { return PrivacyParams::NotPrivate(); }
  ReleaseMode Mode() const { return mode_; }

  BitVector Release(Vertex v, const BitVector& row, Stream&) const {
    return ConsumedBits(v, row, mode_);
  }

 private:
  ReleaseMode mode_;
};

// Ordered record of randomizer invocations plus the edge-level privacy
// ledger. Each invocation charges its params to every potential edge whose
// bit it consumed; the global ledger is the maximum over edges.
class Transcript {
 public:
  Transcript() = default;
  explicit Transcript(std::size_t parties)
      : parties_(parties),
        pair_epsilon_(parties * (parties - (parties > 0)) / 2, 0.0),
        pair_delta_(pair_epsilon_.size(), 0.0) {}

  std::size_t parties() const { return parties_; }

  std::size_t BeginRound() {
    rounds_.emplace_back();
    round_charges_.push_back({});
    return rounds_.size() - 1;
  }

  // Appends to the current round, keeping (vertex, tag) order.
  void Record(RandomizerOutput output, ReleaseMode mode) {
    if (rounds_.empty()) {
      throw std::logic_error("Transcript::Record before BeginRound");
    }
    if (output.vertex >= parties_) {
      throw std::out_of_range("Transcript::Record: vertex out of range");
    }
    Charge(output.vertex, output.params, mode);
    PrivacyParams& rc = round_charges_.back();
    rc.epsilon = std::max(rc.epsilon, output.params.epsilon);
    rc.delta = std::max(rc.delta, output.params.delta);
    auto& round = rounds_.back();
    const auto pos = std::upper_bound(
        round.begin(), round.end(), output,
        [](const RandomizerOutput& a, const RandomizerOutput& b) {
          return std::pair(a.vertex, a.tag) < std::pair(b.vertex, b.tag);
        });
    round.insert(pos, std::move(output));
  }

  const std::vector<std::vector<RandomizerOutput>>& rounds() const {
    return rounds_;
  }

  const RandomizerOutput& Find(std::size_t round, Vertex vertex,
                               std::uint64_t tag = 0) const {
    const auto& r = rounds_.at(round);
    for (const auto& out : r) {
      if (out.vertex == vertex && out.tag == tag) return out;
    }
    throw std::out_of_range("Transcript::Find: no such invocation");
  }

  std::size_t InvocationCount() const {
    std::size_t total = 0;
    for (const auto& r : rounds_) total += r.size();
    return total;
  }

  std::size_t InvocationsOf(Vertex v) const {
    std::size_t total = 0;
    for (const auto& r : rounds_) {
      for (const auto& out : r) total += out.vertex == v;
    }
    return total;
  }

  // Accumulated charge on potential edge {i, j}.
  PrivacyParams PairLedger(Vertex i, Vertex j) const {
    const std::size_t idx = PairIndex(i, j);
    return {pair_epsilon_[idx], pair_delta_[idx]};
  }

  // Per-round guarantee: the largest charge of any invocation in the round.
  PrivacyParams RoundCharge(std::size_t round) const {
    return round_charges_.at(round);
  }

  PrivacyParams GlobalLedger() const {
    PrivacyParams g;
    for (std::size_t p = 0; p < pair_epsilon_.size(); ++p) {
      g.epsilon = std::max(g.epsilon, pair_epsilon_[p]);
      g.delta = std::max(g.delta, pair_delta_[p]);
    }
    return g;
  }

  // Dump: {"entries": [{round, vertex, randomizer, epsilon, delta,
  // payload_hex}], "ledger": {epsilon_total, delta_total}}. An infinite
  // epsilon (non-private release) is written as null.
  nlohmann::ordered_json ToJson() const {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < rounds_.size(); ++r) {
      for (const auto& out : rounds_[r]) {
        nlohmann::ordered_json e;
        e["round"] = r;
        e["vertex"] = out.vertex;
        e["randomizer"] = out.randomizer;
        e["epsilon"] = EpsilonJson(out.params.epsilon);
        e["delta"] = out.params.delta;
        e["payload_hex"] = out.payload.ToHex();
        entries.push_back(std::move(e));
      }
    }
    const PrivacyParams g = GlobalLedger();
    nlohmann::ordered_json out;
    out["entries"] = std::move(entries);
    out["ledger"] = {{"epsilon_total", EpsilonJson(g.epsilon)},
                     {"delta_total", g.delta}};
    return out;
  }

 private:
  static nlohmann::ordered_json EpsilonJson(double eps) {
    return std::isfinite(eps) ? nlohmann::ordered_json(eps)
                              : nlohmann::ordered_json(nullptr);
  }

  std::size_t PairIndex(Vertex i, Vertex j) const {
    if (i == j || i >= parties_ || j >= parties_) {
      throw std::out_of_range("Transcript: bad vertex pair");
    }
    if (i > j) std::swap(i, j);
    // Row-major index into the strict upper triangle.
    return i * parties_ - i * (i + 1) / 2 + (j - i - 1);
  }

  void Charge(Vertex v, const PrivacyParams& p, ReleaseMode mode) {
    const Vertex first = mode == ReleaseMode::kUpperTriangle ? v + 1 : 0;
    for (Vertex j = first; j < parties_; ++j) {
      if (j == v) continue;
      const std::size_t idx = PairIndex(v, j);
      pair_epsilon_[idx] += p.epsilon;
      pair_delta_[idx] += p.delta;
    }
  }

  std::size_t parties_ = 0;
  std::vector<std::vector<RandomizerOutput>> rounds_;
  std::vector<PrivacyParams> round_charges_;
  std::vector<double> pair_epsilon_;
  std::vector<double> pair_delta_;
};

// Thrown when a randomizer fails mid-round; carries the valid prefix of the
// transcript built so far.
class LocalRunError : public std::runtime_error {
 public:
  LocalRunError(const std::string& what, Transcript prefix)
      : std::runtime_error(what), prefix_(std::move(prefix)) {}
  const Transcript& prefix() const { return prefix_; }

 private:
  Transcript prefix_;
};

template <typename P>
concept Postprocessor =
    requires(const P& p, std::span<const RandomizerOutput> outputs,
             std::size_t n) { p(outputs, n); };

template <typename Result>
struct NoninteractiveRun {
  Result result;
  Transcript transcript;
};

// One round: every vertex's randomizer runs once on its adjacency row with
// stream key.Child(kTagVertex, v, 0); the postprocessor sees the outputs in
// vertex order.
template <RandomizerFamily Family, Postprocessor Post>
auto RunNoninteractive(const Graph& g, const Family& family, const Post& post,
                       const StreamKey& key) {
  using Result = std::invoke_result_t<const Post&,
                                      std::span<const RandomizerOutput>,
                                      std::size_t>;
  Transcript transcript(g.n());
  transcript.BeginRound();
  const PrivacyParams params = family.Params();
  const std::string name = family.Name();
  for (Vertex v = 0; v < g.n(); ++v) {
    Stream rng = key.Child(kTagVertex, v, 0).Open();
    BitVector payload;
    try {
      payload = family.Release(v, g.RowBits(v), rng);
    } catch (const std::exception& e) {
      throw LocalRunError(e.what(), std::move(transcript));
    }
    transcript.Record({v, 0, name, params, std::move(payload)}, family.Mode());
  }
  const auto& outputs = transcript.rounds().front();
  Result result = post(std::span<const RandomizerOutput>(outputs), g.n());
  return NoninteractiveRun<Result>{std::move(result), std::move(transcript)};
}

// Reassembles the released (possibly noisy) graph from one output per vertex,
// taking each pair {i, j}, i < j, from vertex i's payload.
inline Graph ReleasedGraph(std::span<const RandomizerOutput> outputs,
                           std::size_t n, ReleaseMode mode) {
  if (outputs.size() != n) {
    throw std::invalid_argument("ReleasedGraph: need one output per vertex");
  }
  GraphBuilder b(n);
  for (const auto& out : outputs) {
    const Vertex i = out.vertex;
    const std::size_t offset = mode == ReleaseMode::kUpperTriangle ? i + 1 : 0;
    const std::size_t expected = mode == ReleaseMode::kUpperTriangle
                                     ? (i + 1 < n ? n - i - 1 : 0)
                                     : n;
    if (out.payload.size() != expected) {
      throw std::invalid_argument("ReleasedGraph: payload length mismatch");
    }
    for (Vertex j = i + 1; j < n; ++j) {
      if (out.payload.Get(j - offset)) b.AddEdge(i, j);
    }
  }
  return std::move(b).Build();
}

// Exact triangle count of the released graph (zero error for identity).
class ExactCountPostprocessor {
 public:
  explicit ExactCountPostprocessor(
      ReleaseMode mode = ReleaseMode::kUpperTriangle)
      : mode_(mode) {}

  double operator()(std::span<const RandomizerOutput> outputs,
                    std::size_t n) const {
    return static_cast<double>(
        CountTrianglesFast(ReleasedGraph(outputs, n, mode_)));
  }

 private:
  ReleaseMode mode_;
};

struct CountReleasedBits {
  std::size_t operator()(std::span<const RandomizerOutput> outputs,
                         std::size_t) const {
    std::size_t total = 0;
    for (const auto& out : outputs) total += out.payload.size();
    return total;
  }
};

}  // namespace ledp

#endif  // LEDP_LOCAL_MODEL_HPP_
