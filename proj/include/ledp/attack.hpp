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

#ifndef LEDP_ATTACK_HPP_
#define LEDP_ATTACK_HPP_

// Reconstruction attack against noninteractive triangle counters: a secret
// bit matrix X is embedded as a bipartite graph, outer-product queries on X
// are answered by triangle counts of query graphs using only two stored
// randomizer invocations per secret vertex, and an attacker searches for a
// matrix consistent with most answers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ledp/anticoncentration.hpp"
#include "ledp/bits.hpp"
#include "ledp/graph.hpp"
#include "ledp/local_model.hpp"
#include "ledp/parallel.hpp"
#include "ledp/privacy.hpp"
#include "ledp/rng.hpp"
#include "ledp/rr_estimator.hpp"
#include "ledp/stats.hpp"

namespace ledp {

inline constexpr double kDefaultGamma = 1.0 / 9.0;

// Secret n x n bit matrix, row-major.
class BitDataset {
 public:
  BitDataset() = default;
  explicit BitDataset(std::size_t n) : n_(n), bits_(n * n) {}
  BitDataset(std::initializer_list<std::initializer_list<int>> rows)
      : BitDataset(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != n_) {
        throw std::invalid_argument("BitDataset: matrix is not square");
      }
      std::size_t j = 0;
      for (int v : row) Set(i, j++, v != 0);
      ++i;
    }
  }

  std::size_t n() const { return n_; }
  bool Get(std::size_t i, std::size_t j) const { return bits_.Get(i * n_ + j); }
  void Set(std::size_t i, std::size_t j, bool v) { bits_.Set(i * n_ + j, v); }
  void Flip(std::size_t i, std::size_t j) { bits_.Flip(i * n_ + j); }
  std::size_t Popcount() const { return bits_.Count(); }
  const BitVector& bits() const { return bits_; }
  BitVector& mutable_bits() { return bits_; }

  static BitDataset Random(std::size_t n, Stream& rng) {
    BitDataset out(n);
    for (std::size_t e = 0; e < n * n; ++e) out.bits_.Set(e, rng() >> 63);
    return out;
  }

  friend bool operator==(const BitDataset&, const BitDataset&) = default;

 private:
  std::size_t n_ = 0;
  BitVector bits_;
};

inline std::size_t HammingDistance(const BitDataset& a, const BitDataset& b) {
  return HammingDistance(a.bits(), b.bits());
}

// X - Y.
inline DiffMatrix Difference(const BitDataset& x, const BitDataset& y) {
  if (x.n() != y.n()) throw std::invalid_argument("Difference: size mismatch");
  DiffMatrix m(x.n());
  for (std::size_t i = 0; i < x.n(); ++i) {
    for (std::size_t j = 0; j < x.n(); ++j) {
      m.Set(i, j, int{x.Get(i, j)} - int{y.Get(i, j)});
    }
  }
  return m;
}

struct OuterProductQuery {
  std::vector<std::int8_t> a;
  std::vector<std::int8_t> b;

  void Validate(std::size_t n) const {
    if (a.size() != n || b.size() != n) {
      throw std::invalid_argument("OuterProductQuery: dimension mismatch");
    }
    for (const auto& v : {std::cref(a), std::cref(b)}) {
      for (std::int8_t s : v.get()) {
        if (s != 1 && s != -1) {
          throw std::invalid_argument("OuterProductQuery: entry not +-1");
        }
      }
    }
  }
};

struct SubmatrixQuery {
  BitVector q1;
  BitVector q2;
};

// A^T X B.
inline std::int64_t OuterProductAnswer(const BitDataset& x,
                                       const OuterProductQuery& q) {
  q.Validate(x.n());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < x.n(); ++i) {
    std::int64_t row = 0;
    for (std::size_t j = 0; j < x.n(); ++j) row += x.Get(i, j) * q.b[j];
    total += q.a[i] * row;
  }
  return total;
}

// (Q1)^T X Q2.
inline std::int64_t SubmatrixAnswer(const BitDataset& x,
                                    const SubmatrixQuery& q) {
  if (q.q1.size() != x.n() || q.q2.size() != x.n()) {
    throw std::invalid_argument("SubmatrixQuery: dimension mismatch");
  }
  std::int64_t total = 0;
  for (std::size_t i = 0; i < x.n(); ++i) {
    if (!q.q1.Get(i)) continue;
    for (std::size_t j = 0; j < x.n(); ++j) total += q.q2.Get(j) && x.Get(i, j);
  }
  return total;
}

// An outer-product query as three submatrix queries (A', B'), (A'', B''),
// (1, 1) with A' = (A + 1)/2 and A'' = (1 - A)/2.
struct OuterProductSplit {
  std::array<SubmatrixQuery, 3> queries;

  template <typename T>
  static T Combine(T a1, T a2, T a3) {
    return 2 * (a1 + a2) - a3;
  }
};

inline OuterProductSplit SplitOuterProduct(const OuterProductQuery& q) {
  const std::size_t n = q.a.size();
  q.Validate(n);
  OuterProductSplit out;
  for (auto& sq : out.queries) sq = {BitVector(n), BitVector(n)};
  for (std::size_t i = 0; i < n; ++i) {
    out.queries[0].q1.Set(i, q.a[i] > 0);
    out.queries[1].q1.Set(i, q.a[i] < 0);
    out.queries[2].q1.Set(i, true);
    out.queries[0].q2.Set(i, q.b[i] > 0);
    out.queries[1].q2.Set(i, q.b[i] < 0);
    out.queries[2].q2.Set(i, true);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graphs on the 3n-vertex layout U1 = [0, n), U2 = [n, 2n), W = [2n, 3n).

inline VertexPartition AttackPartition(std::size_t n) {
  VertexPartition p{{{}, {}, {}}, {"U1", "U2", "W"}};
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t i = 0; i < n; ++i) p.parts[t].push_back(t * n + i);
  }
  return p;
}

inline GraphBuilder SecretGraphBuilder(const BitDataset& x) {
  const std::size_t n = x.n();
  GraphBuilder b(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (x.Get(i, j)) b.AddEdge(i, n + j);
    }
  }
  return b;
}

inline PartitionedGraph BuildSecretGraph(const BitDataset& x) {
  return {SecretGraphBuilder(x).Build(), AttackPartition(x.n())};
}

// The secret graph plus an edge from every selected U vertex to all of W.
inline Graph BuildQueryGraph(const BitDataset& x, const SubmatrixQuery& q) {
  const std::size_t n = x.n();
  if (q.q1.size() != n || q.q2.size() != n) {
    throw std::invalid_argument("BuildQueryGraph: dimension mismatch");
  }
  GraphBuilder b = SecretGraphBuilder(x);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t w = 2 * n; w < 3 * n; ++w) {
      if (q.q1.Get(i)) b.AddEdge(i, w);
      if (q.q2.Get(i)) b.AddEdge(n + i, w);
    }
  }
  return std::move(b).Build();
}

// Adjacency row of any W vertex in the query graph; it depends on Q only.
inline BitVector QueryRowOfW(std::size_t n, const SubmatrixQuery& q) {
  BitVector row(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    row.Set(i, q.q1.Get(i));
    row.Set(n + i, q.q2.Get(i));
  }
  return row;
}

// ---------------------------------------------------------------------------
// Gray box.

// Two stored outputs per U vertex: round 0 holds r0(v), computed on the
// secret neighbourhood, round 1 holds r1(v), computed on the secret
// neighbourhood plus all of W. The secret matrix is not retained.
template <RandomizerFamily Family>
class GrayBoxState {
 public:
  GrayBoxState(std::size_t n, Family family, Transcript transcript)
      : n_(n), family_(std::move(family)), transcript_(std::move(transcript)) {
    for (std::size_t b = 0; b < 2; ++b) {
      owned_[b].resize(2 * n_);
      for (Vertex v = 0; v < 2 * n_; ++v) {
        owned_[b][v] = OwnedPairs(v, transcript_.Find(b, v).payload);
      }
    }
  }

  std::size_t n() const { return n_; }
  const Family& family() const { return family_; }
  const Transcript& transcript() const { return transcript_; }

  PrivacyParams charge() const {
    return ComposeLedger({transcript_.RoundCharge(0),
                          transcript_.RoundCharge(1)});
  }

  const RandomizerOutput& Stored(bool b, Vertex v) const {
    return transcript_.Find(b ? 1 : 0, v);
  }

  // Released pairs {v, j}, j > v, of the stored output r_b(v).
  const std::vector<Vertex>& OwnedPairsOf(bool b, Vertex v) const {
    return owned_[b ? 1 : 0][v];
  }

  // Same convention as ReleasedGraph: pair {i, j}, i < j, comes from i.
  std::vector<Vertex> OwnedPairs(Vertex v, const BitVector& payload) const {
    const std::size_t total = 3 * n_;
    const std::size_t offset =
        family_.Mode() == ReleaseMode::kUpperTriangle ? v + 1 : 0;
    std::vector<Vertex> out;
    for (Vertex j = v + 1; j < total; ++j) {
      if (payload.Get(j - offset)) out.push_back(j);
    }
    return out;
  }

 private:
  std::size_t n_;
  Family family_;
  Transcript transcript_;
  std::array<std::vector<std::vector<Vertex>>, 2> owned_;
};

// Runs every U vertex's randomizer twice; r_b(v) uses stream
// key.Child(kTagVertex, v, b).
template <RandomizerFamily Family>
GrayBoxState<Family> GrayBoxPrepare(const BitDataset& x, Family family,
                                    const StreamKey& key) {
  const std::size_t n = x.n();
  if (n == 0) throw std::invalid_argument("GrayBoxPrepare: n == 0");
  const Graph secret = BuildSecretGraph(x).graph;
  Transcript transcript(3 * n);
  const std::string name = family.Name();
  const PrivacyParams params = family.Params();
  for (std::size_t b = 0; b < 2; ++b) {
    transcript.BeginRound();
    for (Vertex v = 0; v < 2 * n; ++v) {
      BitVector row = secret.RowBits(v);
      if (b == 1) {
        for (Vertex w = 2 * n; w < 3 * n; ++w) row.Set(w, true);
      }
      Stream rng = key.Child(kTagVertex, v, b).Open();
      BitVector payload;
      try {
        payload = family.Release(v, row, rng);
      } catch (const std::exception& e) {
        throw LocalRunError(e.what(), std::move(transcript));
      }
      transcript.Record({v, 0, name, params, std::move(payload)},
                        family.Mode());
    }
  }
  return GrayBoxState<Family>(n, std::move(family), std::move(transcript));
}

// Submatrix answer from stored U outputs plus fresh W outputs (stream
// key.Child(kTagVertex, w, 0)); the postprocessor's output is divided by n.
template <RandomizerFamily Family, Postprocessor Post>
double GrayBoxAnswerSubmatrix(const GrayBoxState<Family>& state,
                              const SubmatrixQuery& q, const Post& post,
                              const StreamKey& key) {
  const std::size_t n = state.n();
  if (q.q1.size() != n || q.q2.size() != n) {
    throw std::invalid_argument("GrayBoxAnswerSubmatrix: size mismatch");
  }
  std::vector<RandomizerOutput> outputs;
  outputs.reserve(3 * n);
  for (Vertex v = 0; v < 2 * n; ++v) {
    const bool b = v < n ? q.q1.Get(v) : q.q2.Get(v - n);
    outputs.push_back(state.Stored(b, v));
  }
  const BitVector w_row = QueryRowOfW(n, q);
  const Family& family = state.family();
  for (Vertex w = 2 * n; w < 3 * n; ++w) {
    Stream rng = key.Child(kTagVertex, w, 0).Open();
    outputs.push_back(
        {w, 0, family.Name(), family.Params(), family.Release(w, w_row, rng)});
  }
  const double p = post(std::span<const RandomizerOutput>(outputs), 3 * n);
  return p / static_cast<double>(n);
}

// Same answer as GrayBoxAnswerSubmatrix with a postprocessor over the
// released graph, skipping the per-query output copies. Used for long query
// batches.
template <RandomizerFamily Family, typename GraphPost>
double GrayBoxAnswerSubmatrixFast(const GrayBoxState<Family>& state,
                                  const SubmatrixQuery& q,
                                  const GraphPost& post,
                                  const StreamKey& key) {
  const std::size_t n = state.n();
  GraphBuilder released(3 * n);
  for (Vertex v = 0; v < 2 * n; ++v) {
    const bool b = v < n ? q.q1.Get(v) : q.q2.Get(v - n);
    for (Vertex j : state.OwnedPairsOf(b, v)) released.AddEdge(v, j);
  }
  const BitVector w_row = QueryRowOfW(n, q);
  const Family& family = state.family();
  for (Vertex w = 2 * n; w < 3 * n; ++w) {
    Stream rng = key.Child(kTagVertex, w, 0).Open();
    for (Vertex j : state.OwnedPairs(w, family.Release(w, w_row, rng))) {
      released.AddEdge(w, j);
    }
  }
  return post(released.Build()) / static_cast<double>(n);
}

// Sub-query s of the split uses key.Child(s).
template <RandomizerFamily Family, Postprocessor Post>
double GrayBoxAnswerOuter(const GrayBoxState<Family>& state,
                          const OuterProductQuery& q, const Post& post,
                          const StreamKey& key) {
  const OuterProductSplit split = SplitOuterProduct(q);
  std::array<double, 3> a;
  for (std::size_t s = 0; s < 3; ++s) {
    a[s] = GrayBoxAnswerSubmatrix(state, split.queries[s], post, key.Child(s));
  }
  return OuterProductSplit::Combine(a[0], a[1], a[2]);
}

template <RandomizerFamily Family, typename GraphPost>
double GrayBoxAnswerOuterFast(const GrayBoxState<Family>& state,
                              const OuterProductQuery& q,
                              const GraphPost& post, const StreamKey& key) {
  const OuterProductSplit split = SplitOuterProduct(q);
  std::array<double, 3> a;
  for (std::size_t s = 0; s < 3; ++s) {
    a[s] = GrayBoxAnswerSubmatrixFast(state, split.queries[s], post,
                                      key.Child(s));
  }
  return OuterProductSplit::Combine(a[0], a[1], a[2]);
}

// ---------------------------------------------------------------------------
// Queries and catching.

// k queries stored row-major: A of query l is a[l*n .. l*n + n).
struct QuerySet {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::int8_t> a;
  std::vector<std::int8_t> b;

  const std::int8_t* A(std::size_t l) const { return a.data() + l * n; }
  const std::int8_t* B(std::size_t l) const { return b.data() + l * n; }

  OuterProductQuery Query(std::size_t l) const {
    return {{A(l), A(l) + n}, {B(l), B(l) + n}};
  }
};

// ceil(128 n^2 / gamma^2), robust to gamma = 1/d not being exact in binary.
inline std::size_t DefaultQueryCount(std::size_t n, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in (0, 1)");
  }
  const double k = 128.0 * static_cast<double>(n * n) / (gamma * gamma);
  return static_cast<std::size_t>(std::ceil(k * (1.0 - 1e-12)));
}

// Query l draws A then B, one sign per 64-bit output, from a single stream.
inline QuerySet SampleQueries(std::size_t n, std::size_t k,
                              const StreamKey& key) {
  if (k == 0) throw std::invalid_argument("SampleQueries: k must be >= 1");
  QuerySet qs{n, k, std::vector<std::int8_t>(k * n),
              std::vector<std::int8_t>(k * n)};
  Stream rng = key.Open();
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      qs.a[l * n + i] = static_cast<std::int8_t>(rng.Sign());
    }
    for (std::size_t i = 0; i < n; ++i) {
      qs.b[l * n + i] = static_cast<std::int8_t>(rng.Sign());
    }
  }
  return qs;
}

inline std::vector<double> ExactAnswers(const BitDataset& x,
                                        const QuerySet& qs) {
  std::vector<double> out(qs.k);
  for (std::size_t l = 0; l < qs.k; ++l) {
    out[l] = static_cast<double>(OuterProductAnswer(x, qs.Query(l)));
  }
  return out;
}

struct AttackThresholds {
  double accuracy = 0.0;             // sqrt(gamma) n / 4
  double disagreement_budget = 0.0;  // gamma^2 k / 64
  double catch_separation = 0.0;     // sqrt(gamma) n / 2
  double catch_count = 0.0;          // gamma^2 k / 32
  double success_hamming = 0.0;      // gamma n^2

  static AttackThresholds For(std::size_t n, std::size_t k, double gamma) {
    const auto nd = static_cast<double>(n);
    const auto kd = static_cast<double>(k);
    return {std::sqrt(gamma) * nd / 4.0, gamma * gamma * kd / 64.0,
            std::sqrt(gamma) * nd / 2.0, gamma * gamma * kd / 32.0,
            gamma * nd * nd};
  }
};

inline std::size_t CountSeparatingQueries(const QuerySet& qs,
                                          const DiffMatrix& m,
                                          double separation) {
  if (m.n() != qs.n) throw std::invalid_argument("catches: size mismatch");
  std::size_t count = 0;
  for (std::size_t l = 0; l < qs.k; ++l) {
    const std::int64_t u = BilinearForm(m, qs.A(l), qs.B(l));
    count += static_cast<double>(std::llabs(u)) > separation;
  }
  return count;
}

// True iff more than gamma^2 k / 32 queries have |A^T M B| > sqrt(gamma) n/2.
inline bool Catches(const QuerySet& qs, const DiffMatrix& m, double gamma) {
  const AttackThresholds t = AttackThresholds::For(qs.n, qs.k, gamma);
  return static_cast<double>(
             CountSeparatingQueries(qs, m, t.catch_separation)) >
         t.catch_count;
}

// ---------------------------------------------------------------------------
// Attacker.

// Number of queries whose answer misses A^T Y B by more than `accuracy`;
// stops counting once the count exceeds `stop_above`.
inline std::size_t CountInaccurate(
    const QuerySet& qs, const std::vector<double>& answers,
    const BitDataset& y, double accuracy,
    std::size_t stop_above = std::numeric_limits<std::size_t>::max()) {
  const std::size_t n = qs.n;
  std::vector<std::int8_t> ym(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) ym[i * n + j] = y.Get(i, j);
  }
  std::size_t count = 0;
  for (std::size_t l = 0; l < qs.k; ++l) {
    const std::int8_t* a = qs.A(l);
    const std::int8_t* b = qs.B(l);
    std::int64_t u = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t row = 0;
      for (std::size_t j = 0; j < n; ++j) row += ym[i * n + j] * b[j];
      u += a[i] * row;
    }
    if (std::abs(static_cast<double>(u) - answers[l]) > accuracy) {
      if (++count > stop_above) return count;
    }
  }
  return count;
}

enum class SearchStrategy { kExhaustive, kHillClimb };

inline const char* ToString(SearchStrategy s) {
  return s == SearchStrategy::kExhaustive ? "exhaustive" : "hillclimb";
}

inline constexpr std::size_t kMaxExhaustiveCells = 20;

struct SearchResult {
  BitDataset best;               // lowest inaccurate count found
  std::size_t inaccurate = 0;    // its inaccurate count
  bool feasible = false;         // inaccurate <= disagreement budget
  std::size_t restarts_run = 0;  // hill-climb only
};

namespace internal {

// The squared-residual objective sum_l (A_l^T Y B_l - a_l)^2 as a quadratic
// form over the n^2 cells: F(y) = y^T G y - 2 c^T y + const with
// G = sum_l z_l z_l^T and c = sum_l a_l z_l, where z_l(i, j) = A_i B_j.
struct QuadraticObjective {
  std::size_t cells = 0;
  std::vector<std::int64_t> gram;  // cells x cells
  std::vector<double> linear;      // c
};

inline QuadraticObjective BuildObjective(const QuerySet& qs,
                                         const std::vector<double>& answers) {
  const std::size_t n = qs.n;
  const std::size_t cells = n * n;
  QuadraticObjective obj{cells, std::vector<std::int64_t>(cells * cells, 0),
                         std::vector<double>(cells, 0.0)};
  for (std::size_t l = 0; l < qs.k; ++l) {
    const std::int8_t* a = qs.A(l);
    const std::int8_t* b = qs.B(l);
    for (std::size_t i = 0; i < n; ++i) {
      const double ai = a[i] * answers[l];
      for (std::size_t j = 0; j < n; ++j) obj.linear[i * n + j] += ai * b[j];
    }
  }
  // z z^T only depends on the sign patterns of A and B up to a global sign,
  // so queries are grouped by pattern pair before the n^4 expansion.
  auto pattern = [n](const std::int8_t* v) {
    std::uint64_t key = 0;
    for (std::size_t i = 1; i < n; ++i) key |= std::uint64_t{v[i] != v[0]} << i;
    return key;
  };
  std::unordered_map<std::uint64_t, std::uint32_t> a_ids, b_ids;
  std::vector<std::uint64_t> a_keys, b_keys;
  auto intern = [](auto& ids, auto& keys, std::uint64_t key) {
    const auto [it, inserted] =
        ids.try_emplace(key, static_cast<std::uint32_t>(keys.size()));
    if (inserted) keys.push_back(key);
    return it->second;
  };
  std::unordered_map<std::uint64_t, std::int64_t> pair_counts;
  for (std::size_t l = 0; l < qs.k; ++l) {
    const std::uint64_t ia = intern(a_ids, a_keys, pattern(qs.A(l)));
    const std::uint64_t ib = intern(b_ids, b_keys, pattern(qs.B(l)));
    ++pair_counts[(ia << 32) | ib];
  }
  auto products = [n](std::uint64_t key) {
    std::vector<std::int8_t> p(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        p[i * n + j] = (((key >> i) ^ (key >> j)) & 1u) ? -1 : 1;
      }
    }
    return p;
  };
  std::vector<std::vector<std::int8_t>> pa, pb;
  for (std::uint64_t key : a_keys) pa.push_back(products(key));
  for (std::uint64_t key : b_keys) pb.push_back(products(key));
  for (const auto& [ids, count] : pair_counts) {
    const auto& ma = pa[ids >> 32];
    const auto& mb = pb[ids & 0xffffffffu];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t ip = 0; ip < n; ++ip) {
        const std::int64_t sa = count * ma[i * n + ip];
        for (std::size_t j = 0; j < n; ++j) {
          std::int64_t* out = &obj.gram[(i * n + j) * cells + ip * n];
          const std::int8_t* sb = &mb[j * n];
          for (std::size_t jp = 0; jp < n; ++jp) out[jp] += sa * sb[jp];
        }
      }
    }
  }
  return obj;
}

// Greedy single-cell descent on F from `start` until no flip lowers F.
// Ties between equally good flips are broken uniformly at random.
inline BitDataset Descend(const QuadraticObjective& obj, BitDataset y,
                          Stream& rng) {
  const std::size_t cells = obj.cells;
  // h = G y - c; flipping cell e changes F by G_ee + 2 s_e h_e with
  // s_e = 1 - 2 y_e.
  std::vector<double> h(cells);
  for (std::size_t e = 0; e < cells; ++e) {
    double gy = 0.0;
    for (std::size_t f = 0; f < cells; ++f) {
      if (y.bits().Get(f)) gy += static_cast<double>(obj.gram[e * cells + f]);
    }
    h[e] = gy - obj.linear[e];
  }
  const std::size_t max_steps = 16 * cells + 16;
  for (std::size_t step = 0; step < max_steps; ++step) {
    double best = 0.0;
    std::size_t pick = cells;
    std::uint64_t ties = 0;
    for (std::size_t e = 0; e < cells; ++e) {
      const double s = y.bits().Get(e) ? -1.0 : 1.0;
      const double delta =
          static_cast<double>(obj.gram[e * cells + e]) + 2.0 * s * h[e];
      if (delta < best) {
        best = delta;
        pick = e;
        ties = 1;
      } else if (pick < cells && delta == best && rng.Below(++ties) == 0) {
        pick = e;
      }
    }
    if (pick == cells) break;
    const double s = y.bits().Get(pick) ? -1.0 : 1.0;
    y.mutable_bits().Flip(pick);
    for (std::size_t f = 0; f < cells; ++f) {
      h[f] += s * static_cast<double>(obj.gram[f * cells + pick]);
    }
  }
  return y;
}

}  // namespace internal

// Randomized hill-climb: `restarts` greedy descents on the squared-residual
// surrogate from uniform random starts (restart r uses key.Child(r)), each
// local optimum scored by its inaccurate count. Stops early at a zero count.
inline SearchResult HillClimbSearch(const QuerySet& qs,
                                    const std::vector<double>& answers,
                                    double gamma, std::size_t restarts,
                                    const StreamKey& key) {
  if (restarts == 0) throw std::invalid_argument("search budget must be >= 1");
  const AttackThresholds t = AttackThresholds::For(qs.n, qs.k, gamma);
  const internal::QuadraticObjective obj =
      internal::BuildObjective(qs, answers);
  SearchResult result;
  result.inaccurate = std::numeric_limits<std::size_t>::max();
  for (std::size_t r = 0; r < restarts; ++r) {
    Stream rng = key.Child(r).Open();
    BitDataset y = internal::Descend(obj, BitDataset::Random(qs.n, rng), rng);
    const std::size_t bad = CountInaccurate(qs, answers, y, t.accuracy);
    ++result.restarts_run;
    if (bad < result.inaccurate) {
      result.inaccurate = bad;
      result.best = std::move(y);
    }
    if (result.inaccurate == 0) break;
  }
  result.feasible =
      static_cast<double>(result.inaccurate) <= t.disagreement_budget;
  return result;
}

// Exact minimiser of the inaccurate count over all 2^(n^2) matrices, the
// first in enumeration order (cell i*n + j is bit i*n + j of the counter)
// among ties. A short hill-climb supplies the initial pruning bound.
inline SearchResult ExhaustiveSearch(const QuerySet& qs,
                                     const std::vector<double>& answers,
                                     double gamma, const StreamKey& key) {
  const std::size_t n = qs.n;
  if (n * n > kMaxExhaustiveCells) {
    throw std::invalid_argument("exhaustive search needs n^2 <= 20");
  }
  const AttackThresholds t = AttackThresholds::For(n, qs.k, gamma);
  std::size_t bound = HillClimbSearch(qs, answers, gamma, 2, key).inaccurate;
  std::optional<std::uint64_t> best_mask;
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  BitDataset y(n);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t e = 0; e < n * n; ++e) {
      y.mutable_bits().Set(e, (mask >> e) & 1u);
    }
    const std::size_t bad = CountInaccurate(qs, answers, y, t.accuracy, bound);
    if (bad < bound || (bad == bound && !best_mask)) {
      bound = bad;
      best_mask = mask;
    }
  }
  SearchResult result;
  result.best = BitDataset(n);
  for (std::size_t e = 0; e < n * n; ++e) {
    result.best.mutable_bits().Set(e, (*best_mask >> e) & 1u);
  }
  result.inaccurate = bound;
  result.feasible = static_cast<double>(bound) <= t.disagreement_budget;
  return result;
}

// ---------------------------------------------------------------------------
// End-to-end attack.

enum class Mechanism { kRandomizedResponse, kIdentity, kOracle };

inline const char* ToString(Mechanism m) {
  switch (m) {
    case Mechanism::kRandomizedResponse:
      return "rr";
    case Mechanism::kIdentity:
      return "identity";
    case Mechanism::kOracle:
      return "oracle";
  }
  return "?";
}

inline Mechanism ParseMechanism(const std::string& s) {
  if (s == "rr") return Mechanism::kRandomizedResponse;
  if (s == "identity") return Mechanism::kIdentity;
  if (s == "oracle") return Mechanism::kOracle;
  throw std::invalid_argument("mechanism must be rr, identity or oracle");
}

inline SearchStrategy ParseSearch(const std::string& s) {
  if (s == "exhaustive") return SearchStrategy::kExhaustive;
  if (s == "hillclimb") return SearchStrategy::kHillClimb;
  throw std::invalid_argument("search must be exhaustive or hillclimb");
}

struct AttackConfig {
  std::size_t n = 8;
  double gamma = kDefaultGamma;
  std::optional<std::size_t> k;  // default ceil(128 n^2 / gamma^2)
  double epsilon = 1.0;          // used by the rr mechanism only
  Mechanism mechanism = Mechanism::kRandomizedResponse;
  SearchStrategy search = SearchStrategy::kHillClimb;
  std::size_t budget = 8;  // hill-climb restarts
  int workers = 1;

  void Validate() const {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    if (!(gamma > 0.0 && gamma < 0.5)) {
      throw std::invalid_argument("gamma must lie in (0, 1/2)");
    }
    if (k && *k == 0) throw std::invalid_argument("k must be >= 1");
    if (mechanism == Mechanism::kRandomizedResponse) {
      CheckEstimatorEpsilon(epsilon);
    }
    if (budget == 0) throw std::invalid_argument("budget must be >= 1");
    if (search == SearchStrategy::kExhaustive &&
        n * n > kMaxExhaustiveCells) {
      throw std::invalid_argument("exhaustive search needs n^2 <= 20");
    }
  }

  std::size_t QueryCount() const {
    return k ? *k : DefaultQueryCount(n, gamma);
  }
};

struct AttackReport {
  AttackConfig config;
  std::size_t k = 0;
  AttackThresholds thresholds;
  BitDataset x;
  std::optional<BitDataset> y_star;  // present iff the search was feasible
  std::optional<std::size_t> hamming;
  BitDataset best_candidate;  // lowest inaccurate count, feasible or not
  std::size_t best_hamming = 0;
  std::size_t inaccurate_count = 0;
  bool success = false;  // feasible and hamming <= gamma n^2
  PrivacyParams charge;  // edge-level ledger of the stored invocations
  std::size_t secret_invocations = 0;
  double max_abs_answer_error = 0.0;
};

// Answers to every query from the chosen mechanism. Query l of the gray box
// uses key.Child(kTagAnswer, l) for its fresh W randomness.
inline std::vector<double> MechanismAnswers(const AttackConfig& config,
                                            const BitDataset& x,
                                            const QuerySet& qs,
                                            const StreamKey& key,
                                            AttackReport* report) {
  std::vector<double> answers(qs.k);
  if (config.mechanism == Mechanism::kOracle) {
    answers = ExactAnswers(x, qs);
    report->charge = PrivacyParams::NotPrivate();
    report->secret_invocations = 0;
    return answers;
  }
  auto run = [&](auto family, auto post) {
    const auto state = GrayBoxPrepare(x, std::move(family),
                                      key.Child(kTagPrepare));
    ParallelFor(qs.k, config.workers, [&](std::size_t l) {
      answers[l] = GrayBoxAnswerOuterFast(state, qs.Query(l), post,
                                          key.Child(kTagAnswer, l));
    });
    report->charge = state.transcript().GlobalLedger();
    report->secret_invocations = state.transcript().InvocationCount();
  };
  if (config.mechanism == Mechanism::kIdentity) {
    run(IdentityFamily(), [](const Graph& g) {
      return static_cast<double>(CountTrianglesFast(g));
    });
  } else {
    const double eps = config.epsilon;
    run(RandomizedResponseFamily(eps), [eps](const Graph& g) {
      return SumRescaledTriplesByCounts(g, eps);
    });
  }
  return answers;
}

// One attack on a given secret. Streams: queries key.Child(kTagQueries),
// mechanism randomness key.Child(kTagPrepare / kTagAnswer), search
// key.Child(kTagSearch).
inline AttackReport RunAttack(const AttackConfig& config, const BitDataset& x,
                              const StreamKey& key) {
  config.Validate();
  if (x.n() != config.n) throw std::invalid_argument("RunAttack: size mismatch");
  AttackReport report;
  report.config = config;
  report.k = config.QueryCount();
  report.thresholds = AttackThresholds::For(config.n, report.k, config.gamma);
  report.x = x;
  const QuerySet qs = SampleQueries(config.n, report.k, key.Child(kTagQueries));
  const std::vector<double> answers =
      MechanismAnswers(config, x, qs, key, &report);
  const std::vector<double> exact = ExactAnswers(x, qs);
  for (std::size_t l = 0; l < qs.k; ++l) {
    report.max_abs_answer_error =
        std::max(report.max_abs_answer_error, std::abs(answers[l] - exact[l]));
  }
  const StreamKey search_key = key.Child(kTagSearch);
  const SearchResult found =
      config.search == SearchStrategy::kExhaustive
          ? ExhaustiveSearch(qs, answers, config.gamma, search_key)
          : HillClimbSearch(qs, answers, config.gamma, config.budget,
                            search_key);
  report.best_candidate = found.best;
  report.best_hamming = HammingDistance(found.best, x);
  report.inaccurate_count = found.inaccurate;
  if (found.feasible) {
    report.y_star = found.best;
    report.hamming = report.best_hamming;
    report.success = static_cast<double>(report.best_hamming) <=
                     report.thresholds.success_hamming;
  }
  return report;
}

// Secret drawn uniformly from key.Child(kTagDataset).
inline AttackReport RunAttack(const AttackConfig& config,
                              const StreamKey& key) {
  Stream rng = key.Child(kTagDataset).Open();
  return RunAttack(config, BitDataset::Random(config.n, rng), key);
}

inline nlohmann::ordered_json EpsilonToJson(double eps) {
  return std::isfinite(eps) ? nlohmann::ordered_json(eps)
                            : nlohmann::ordered_json(nullptr);
}

inline nlohmann::ordered_json AttackReportJson(const AttackReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.config.n;
  j["gamma"] = r.config.gamma;
  j["k"] = r.k;
  j["mechanism"] = ToString(r.config.mechanism);
  j["epsilon"] = r.config.mechanism == Mechanism::kRandomizedResponse
                     ? nlohmann::ordered_json(r.config.epsilon)
                     : nlohmann::ordered_json(nullptr);
  j["search"] = ToString(r.config.search);
  j["budget"] = r.config.budget;
  j["thresholds"] = {
      {"accuracy", r.thresholds.accuracy},
      {"disagreement_budget", r.thresholds.disagreement_budget},
      {"catch_separation", r.thresholds.catch_separation},
      {"catch_count", r.thresholds.catch_count},
      {"success_hamming", r.thresholds.success_hamming}};
  j["x_hex"] = r.x.bits().ToHex();
  j["y_star_hex"] = r.y_star ? nlohmann::ordered_json(r.y_star->bits().ToHex())
                             : nlohmann::ordered_json(nullptr);
  j["hamming"] = r.hamming ? nlohmann::ordered_json(*r.hamming)
                           : nlohmann::ordered_json(nullptr);
  j["best_candidate_hex"] = r.best_candidate.bits().ToHex();
  j["best_hamming"] = r.best_hamming;
  j["inaccurate_count"] = r.inaccurate_count;
  j["feasible"] = r.y_star.has_value();
  j["success"] = r.success;
  j["max_abs_answer_error"] = r.max_abs_answer_error;
  j["ledger"] = {{"epsilon_total", EpsilonToJson(r.charge.epsilon)},
                 {"delta_total", r.charge.delta}};
  j["secret_invocations"] = r.secret_invocations;
  return j;
}

// ---------------------------------------------------------------------------
// Expected distance of the attacker's output from a uniform secret.

struct PrivacyDistanceReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::vector<std::size_t> hammings;
  double mean_hamming = 0.0;
  double standard_error = 0.0;
  PrivacyParams charge;
  bool bound_applies = false;  // false for non-private mechanisms
  double bound = 0.0;          // e^-eps (1/2 - delta) n^2, NaN if n/a
  bool respects_bound = true;  // mean >= bound - 4 SE
  std::size_t successes = 0;
};

inline constexpr std::size_t kMinDiagnosticTrials = 20;

// Trial t attacks a fresh uniform secret with key.Child(kTagTrial, t). The
// distance of the best candidate counts even when the attack fails.
inline PrivacyDistanceReport PrivacyDistanceDiagnostic(
    const AttackConfig& config, std::size_t trials, const StreamKey& key) {
  if (trials < kMinDiagnosticTrials) {
    throw std::invalid_argument("privacy diagnostic needs >= 20 trials");
  }
  PrivacyDistanceReport out;
  out.n = config.n;
  out.trials = trials;
  std::vector<double> distances;
  for (std::size_t t = 0; t < trials; ++t) {
    const AttackReport r = RunAttack(config, key.Child(kTagTrial, t));
    out.hammings.push_back(r.best_hamming);
    distances.push_back(static_cast<double>(r.best_hamming));
    out.successes += r.success;
    out.charge = r.charge;
  }
  out.mean_hamming = Mean(distances);
  out.standard_error = StandardError(distances);
  out.bound_applies = out.charge.IsPrivate();
  if (out.bound_applies) {
    const auto nn = static_cast<double>(config.n * config.n);
    out.bound = std::exp(-out.charge.epsilon) * (0.5 - out.charge.delta) * nn;
    out.respects_bound =
        out.mean_hamming >= out.bound - 4.0 * out.standard_error;
  } else {
    out.bound = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace ledp

#endif  // LEDP_ATTACK_HPP_
