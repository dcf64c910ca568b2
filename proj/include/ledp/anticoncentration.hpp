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

#ifndef LEDP_ANTICONCENTRATION_HPP_
#define LEDP_ANTICONCENTRATION_HPP_

// Distribution of U = A^T M B for uniform sign vectors A, B and a difference
// matrix M over {-1, 0, 1}: exact moments and tails by enumeration, Monte
// Carlo tails beyond the enumeration cap, and the two scalar bounds used in
// the attack analysis.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ledp/csv.hpp"
#include "ledp/parallel.hpp"
#include "ledp/rng.hpp"

namespace ledp {

// n x n matrix over {-1, 0, 1}; m counts the nonzero entries.
class DiffMatrix {
 public:
  DiffMatrix() = default;
  explicit DiffMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {}

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }

  int Get(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  void Set(std::size_t i, std::size_t j, int value) {
    if (value < -1 || value > 1) {
      throw std::invalid_argument("DiffMatrix: entry outside {-1, 0, 1}");
    }
    std::int8_t& e = entries_.at(i * n_ + j);
    m_ += (value != 0) - (e != 0);
    e = static_cast<std::int8_t>(value);
  }

  const std::vector<std::int8_t>& entries() const { return entries_; }

  // Uniform random matrix with exactly `m` nonzeros at uniform positions,
  // each with a uniform sign.
  static DiffMatrix Random(std::size_t n, std::size_t m, Stream& rng) {
    if (m > n * n) throw std::invalid_argument("DiffMatrix: m > n^2");
    std::vector<std::size_t> cells(n * n);
    for (std::size_t c = 0; c < cells.size(); ++c) cells[c] = c;
    DiffMatrix out(n);
    for (std::size_t t = 0; t < m; ++t) {
      const std::size_t pick = t + rng.Below(cells.size() - t);
      std::swap(cells[t], cells[pick]);
      out.Set(cells[t] / n, cells[t] % n, rng.Sign());
    }
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::int8_t> entries_;
};

// U = A^T M B with sign vectors given as int8 spans of length n.
inline std::int64_t BilinearForm(const DiffMatrix& m, const std::int8_t* a,
                                 const std::int8_t* b) {
  const std::size_t n = m.n();
  std::int64_t u = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t row = 0;
    for (std::size_t j = 0; j < n; ++j) row += m.Get(i, j) * b[j];
    u += a[i] * row;
  }
  return u;
}

inline constexpr std::size_t kMaxExhaustiveSide = 7;

// Raw sums over all 4^n sign pairs; divide by `pairs` for the moments.
struct ExactMoments {
  std::uint64_t pairs = 0;
  std::int64_t sum1 = 0;
  std::int64_t sum2 = 0;
  std::int64_t sum4 = 0;

  double mean() const { return static_cast<double>(sum1) / pairs; }
  double second() const { return static_cast<double>(sum2) / pairs; }
  double fourth() const { return static_cast<double>(sum4) / pairs; }
};

namespace internal {

inline void CheckExhaustiveSize(const DiffMatrix& m, const char* where) {
  if (m.n() > kMaxExhaustiveSide) {
    throw std::invalid_argument(std::string(where) + ": n exceeds 7");
  }
}

// Calls fn(u) for U of every sign pair; A and B run over bitmasks where bit
// i set means coordinate i is -1.
template <typename Fn>
void ForEachSignPair(const DiffMatrix& m, Fn&& fn) {
  const std::size_t n = m.n();
  const std::uint32_t count = std::uint32_t{1} << n;
  for (std::uint32_t amask = 0; amask < count; ++amask) {
    // v = A^T M, then U = v . B.
    std::vector<std::int64_t> v(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const int ai = (amask >> i) & 1u ? -1 : 1;
      for (std::size_t j = 0; j < n; ++j) v[j] += ai * m.Get(i, j);
    }
    for (std::uint32_t bmask = 0; bmask < count; ++bmask) {
      std::int64_t u = 0;
      for (std::size_t j = 0; j < n; ++j) u += (bmask >> j) & 1u ? -v[j] : v[j];
      fn(u);
    }
  }
}

}  // namespace internal

inline ExactMoments MomentsExhaustive(const DiffMatrix& m) {
  internal::CheckExhaustiveSize(m, "MomentsExhaustive");
  ExactMoments out;
  out.pairs = std::uint64_t{1} << (2 * m.n());
  internal::ForEachSignPair(m, [&out](std::int64_t u) {
    const std::int64_t u2 = u * u;
    out.sum1 += u;
    out.sum2 += u2;
    out.sum4 += u2 * u2;
  });
  return out;
}

struct TailCount {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  double probability() const { return static_cast<double>(hits) / total; }
};

// Exact Pr[|U| > threshold] (strict) over all sign pairs.
inline TailCount TailProbabilityExhaustive(const DiffMatrix& m,
                                           double threshold) {
  internal::CheckExhaustiveSize(m, "TailProbabilityExhaustive");
  TailCount out;
  out.total = std::uint64_t{1} << (2 * m.n());
  internal::ForEachSignPair(m, [&](std::int64_t u) {
    out.hits += static_cast<double>(std::llabs(u)) > threshold;
  });
  return out;
}

struct TailEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  double fourth_moment = 0.0;  // Monte Carlo estimate of E[U^4]
};

inline constexpr std::size_t kMcBlock = 1024;

// Monte Carlo tail. Block b of kMcBlock samples draws from
// key.Child(kTagSample, b), so the result does not depend on `workers`.
inline TailEstimate TailProbabilityMc(const DiffMatrix& m, double threshold,
                                      std::size_t samples,
                                      const StreamKey& key, int workers = 1) {
  if (samples < 1000) {
    throw std::invalid_argument("TailProbabilityMc: samples must be >= 1000");
  }
  const std::size_t n = m.n();
  const std::size_t blocks = (samples + kMcBlock - 1) / kMcBlock;
  std::vector<std::uint64_t> hits(blocks, 0);
  std::vector<double> fourth(blocks, 0.0);
  ParallelFor(blocks, workers, [&](std::size_t blk) {
    Stream rng = key.Child(kTagSample, blk).Open();
    std::vector<std::int8_t> a(n), b(n);
    const std::size_t end = std::min(samples, (blk + 1) * kMcBlock);
    for (std::size_t s = blk * kMcBlock; s < end; ++s) {
      for (auto& x : a) x = static_cast<std::int8_t>(rng.Sign());
      for (auto& x : b) x = static_cast<std::int8_t>(rng.Sign());
      const std::int64_t u = BilinearForm(m, a.data(), b.data());
      hits[blk] += static_cast<double>(std::llabs(u)) > threshold;
      const double u2 = static_cast<double>(u * u);
      fourth[blk] += u2 * u2;
    }
  });
  std::uint64_t total_hits = 0;
  double total_fourth = 0.0;
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    total_hits += hits[blk];
    total_fourth += fourth[blk];
  }
  TailEstimate out;
  out.samples = samples;
  out.probability = static_cast<double>(total_hits) / samples;
  out.standard_error =
      std::sqrt(out.probability * (1.0 - out.probability) / samples);
  out.fourth_moment = total_fourth / samples;
  return out;
}

// (1 - theta)^2 * ez^2 / ez2.
inline double PaleyZygmundBound(double theta, double ez, double ez2) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("PaleyZygmundBound: theta outside [0, 1]");
  }
  if (!(ez >= 0.0)) throw std::invalid_argument("PaleyZygmundBound: ez < 0");
  if (!(ez2 > 0.0)) throw std::invalid_argument("PaleyZygmundBound: ez2 <= 0");
  if (ez * ez > ez2 * (1.0 + 1e-12)) {
    throw std::invalid_argument("PaleyZygmundBound: ez^2 > ez2");
  }
  return (1.0 - theta) * (1.0 - theta) * ez * ez / ez2;
}

// exp(-delta^2 mu / 2).
inline double ChernoffTailBound(double mu, double delta) {
  if (!(mu > 0.0)) throw std::invalid_argument("ChernoffTailBound: mu <= 0");
  if (!(delta > 0.0)) {
    throw std::invalid_argument("ChernoffTailBound: delta <= 0");
  }
  return std::exp(-delta * delta * mu / 2.0);
}

// ---------------------------------------------------------------------------
// Report.

struct AnticoncentrationRow {
  std::size_t n = 0;
  std::size_t m = 0;
  double gamma = 0.0;
  double threshold = 0.0;
  double tail = 0.0;
  bool exact = true;
  double lemma_bound = 0.0;
  double fourth_moment = 0.0;
  double fourth_bound = 0.0;
};

// For every (n, gamma), `instances` random matrices with m drawn uniformly
// from [ceil(gamma n^2), n^2]. Tails use threshold sqrt(m)/2; n <= 7 is
// exact, larger n uses `samples` Monte Carlo draws.
inline std::vector<AnticoncentrationRow> AnticoncentrationStudy(
    const std::vector<std::size_t>& ns, const std::vector<double>& gammas,
    std::size_t instances, std::size_t samples, const StreamKey& key,
    int workers = 1) {
  std::vector<AnticoncentrationRow> rows;
  for (std::size_t n : ns) {
    if (n == 0) throw std::invalid_argument("AnticoncentrationStudy: n == 0");
    for (double gamma : gammas) {
      if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("AnticoncentrationStudy: gamma not in (0,1]");
      }
      for (std::size_t t = 0; t < instances; ++t) {
        const StreamKey cell = key.Child(kTagMatrix, rows.size());
        Stream rng = cell.Open();
        const std::size_t nn = n * n;
        const auto lo = static_cast<std::size_t>(
            std::ceil(gamma * static_cast<double>(nn) - 1e-9));
        const std::size_t m = lo + rng.Below(nn - lo + 1);
        const DiffMatrix mat = DiffMatrix::Random(n, m, rng);
        AnticoncentrationRow row;
        row.n = n;
        row.m = m;
        row.gamma = gamma;
        row.threshold = std::sqrt(static_cast<double>(m)) / 2.0;
        row.lemma_bound = gamma * gamma / 16.0;
        const double n4 = static_cast<double>(nn) * static_cast<double>(nn);
        row.fourth_bound = 9.0 * n4;
        if (n <= kMaxExhaustiveSide) {
          row.tail = TailProbabilityExhaustive(mat, row.threshold).probability();
          row.fourth_moment = MomentsExhaustive(mat).fourth();
        } else {
          const TailEstimate est = TailProbabilityMc(
              mat, row.threshold, samples, cell.Child(kTagSample), workers);
          row.tail = est.probability;
          row.exact = false;
          row.fourth_moment = est.fourth_moment;
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

inline CsvTable AnticoncentrationCsv(
    const std::vector<AnticoncentrationRow>& rows) {
  CsvTable table({"n", "m", "gamma", "threshold", "tail_exact_or_mc",
                  "lemma_bound", "fourth_moment", "fourth_bound"});
  for (const auto& r : rows) {
    table.AddRow({std::to_string(r.n), std::to_string(r.m),
                  FormatDouble(r.gamma), FormatDouble(r.threshold),
                  FormatDouble(r.tail), FormatDouble(r.lemma_bound),
                  FormatDouble(r.fourth_moment), FormatDouble(r.fourth_bound)});
  }
  return table;
}

}  // namespace ledp

#endif  // LEDP_ANTICONCENTRATION_HPP_
