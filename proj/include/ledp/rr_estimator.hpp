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

#ifndef LEDP_RR_ESTIMATOR_HPP_
#define LEDP_RR_ESTIMATOR_HPP_

// Triangle counting from one round of randomized response: every vertex
// releases its upper-triangle adjacency bits through randomized response,
// each noisy bit x is rescaled to y = ((e^eps + 1) x - 1) / (e^eps - 1) so
// that E[y] is the true edge indicator, and the estimate is the sum over all
// vertex triples of the product of their three rescaled edges.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ledp/csv.hpp"
#include "ledp/graph.hpp"
#include "ledp/local_model.hpp"
#include "ledp/parallel.hpp"
#include "ledp/privacy.hpp"
#include "ledp/rng.hpp"
#include "ledp/stats.hpp"

namespace ledp {

// Smallest epsilon the estimator accepts; below it the rescaled atoms exceed
// 1e6 in magnitude and cancellation dominates.
inline constexpr double kMinEstimatorEpsilon = 1e-6;

// The two values a rescaled edge can take.
struct RescaledAtoms {
  double absent;   // -1 / (e^eps - 1)
  double present;  // e^eps / (e^eps - 1)
};

inline RescaledAtoms RescaleAtoms(double epsilon) {
  CheckEpsilon(epsilon, "Rescale");
  const double em1 = std::expm1(epsilon);
  if (!(em1 >= 1e-300)) {
    throw std::invalid_argument("Rescale: e^eps - 1 underflows");
  }
  return {-1.0 / em1, (em1 + 1.0) / em1};
}

inline double Rescale(bool x, double epsilon) {
  const RescaledAtoms atoms = RescaleAtoms(epsilon);
  return x ? atoms.present : atoms.absent;
}

// Var[y] for one rescaled edge: e^eps / (e^eps - 1)^2.
inline double RescaledVariance(double epsilon) {
  CheckEpsilon(epsilon, "RescaledVariance");
  const double em1 = std::expm1(epsilon);
  return (em1 + 1.0) / (em1 * em1);
}

// Sum over all triples of the product of rescaled noisy edges, by direct
// enumeration of the C(n, 3) triples.
inline double SumRescaledTriples(const Graph& noisy, double epsilon) {
  const RescaledAtoms atoms = RescaleAtoms(epsilon);
  const std::size_t n = noisy.n();
  std::vector<double> y(n * n);
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = 0; j < n; ++j) {
      y[i * n + j] = noisy.HasEdge(i, j) ? atoms.present : atoms.absent;
    }
  }
  double total = 0.0;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      const double yij = y[i * n + j];
      for (Vertex k = j + 1; k < n; ++k) {
        total += yij * y[j * n + k] * y[i * n + k];
      }
    }
  }
  return total;
}

// Same sum, expanded in the released-graph statistics. Writing every
// rescaled edge as a + c x with x in {0, 1}, the triple products sum to
//   a^3 C(n,3) + a^2 c |E| (n - 2) + a c^2 W + c^3 T
// where W counts wedges (edge pairs sharing a vertex) and T triangles.
inline double SumRescaledTriplesByCounts(const Graph& noisy, double epsilon) {
  const RescaledAtoms atoms = RescaleAtoms(epsilon);
  const double a = atoms.absent;
  const double c = atoms.present - atoms.absent;
  const auto n = static_cast<double>(noisy.n());
  if (noisy.n() < 3) return 0.0;
  double wedges = 0.0;
  for (Vertex v = 0; v < noisy.n(); ++v) {
    const auto d = static_cast<double>(noisy.Degree(v));
    wedges += d * (d - 1.0) / 2.0;
  }
  const auto edges = static_cast<double>(noisy.EdgeCount());
  const auto triangles = static_cast<double>(CountTrianglesFast(noisy));
  const double triples = n * (n - 1.0) * (n - 2.0) / 6.0;
  return a * a * a * triples + a * a * c * edges * (n - 2.0) +
         a * c * c * wedges + c * c * c * triangles;
}

// Postprocessor of the estimator: reassembles the upper-triangle noisy bits
// and returns the rescaled triple sum.
class RescaledTriangleSum {
 public:
  explicit RescaledTriangleSum(double epsilon,
                               ReleaseMode mode = ReleaseMode::kUpperTriangle)
      : epsilon_(epsilon), mode_(mode) {
    RescaleAtoms(epsilon);
  }

  double operator()(std::span<const RandomizerOutput> outputs,
                    std::size_t n) const {
    return SumRescaledTriplesByCounts(ReleasedGraph(outputs, n, mode_),
                                      epsilon_);
  }

  double epsilon() const { return epsilon_; }

 private:
  double epsilon_;
  ReleaseMode mode_;
};

struct TriangleEstimate {
  double t_hat = 0.0;
  double epsilon = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> exact_t;
};

struct TriangleRun {
  TriangleEstimate estimate;
  Transcript transcript;
};

inline void CheckEstimatorEpsilon(double epsilon) {
  CheckEpsilon(epsilon, "EstimateTriangles");
  if (epsilon < kMinEstimatorEpsilon) {
    throw std::invalid_argument("EstimateTriangles: epsilon below 1e-6");
  }
}

// One run of the estimator. Randomness comes from key.Child(kTagVertex, v, 0)
// per vertex.
inline TriangleRun EstimateTriangles(const Graph& g, double epsilon,
                                     const StreamKey& key) {
  CheckEstimatorEpsilon(epsilon);
  auto run = RunNoninteractive(g, RandomizedResponseFamily(epsilon),
                               RescaledTriangleSum(epsilon), key);
  TriangleRun out;
  out.estimate.t_hat = run.result;
  out.estimate.epsilon = epsilon;
  out.estimate.n = g.n();
  out.estimate.seed = key.seed();
  out.transcript = std::move(run.transcript);
  return out;
}

// ---------------------------------------------------------------------------
// Exact oracles.

struct EstimatorMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// Largest number of vertex pairs for which flip patterns are enumerated.
inline constexpr std::size_t kMaxEnumeratedPairs = 24;

// Exact mean and variance of the estimate by summing over all 2^C(n,2) flip
// patterns, each weighted by its probability.
inline EstimatorMoments EnumerateEstimatorMoments(const Graph& g,
                                                  double epsilon) {
  const std::size_t n = g.n();
  const std::size_t pairs = n * (n - 1) / 2;
  if (pairs > kMaxEnumeratedPairs) {
    throw std::invalid_argument("EnumerateEstimatorMoments: graph too large");
  }
  const RescaledAtoms atoms = RescaleAtoms(epsilon);
  const long double q = FlipProbability(epsilon);

  std::vector<std::size_t> pair_index(n * n, 0);
  std::vector<bool> truth(pairs);
  {
    std::size_t p = 0;
    for (Vertex i = 0; i < n; ++i) {
      for (Vertex j = i + 1; j < n; ++j) {
        pair_index[i * n + j] = p;
        truth[p++] = g.HasEdge(i, j);
      }
    }
  }
  std::vector<std::array<std::size_t, 3>> triples;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      for (Vertex k = j + 1; k < n; ++k) {
        triples.push_back({pair_index[i * n + j], pair_index[j * n + k],
                           pair_index[i * n + k]});
      }
    }
  }

  const std::uint64_t patterns = std::uint64_t{1} << pairs;
  std::vector<long double> value(patterns), weight(patterns);
  std::vector<long double> y(pairs);
  for (std::uint64_t flips = 0; flips < patterns; ++flips) {
    long double w = 1.0L;
    for (std::size_t p = 0; p < pairs; ++p) {
      const bool flipped = (flips >> p) & 1u;
      w *= flipped ? q : 1.0L - q;
      y[p] = (truth[p] != flipped) ? atoms.present : atoms.absent;
    }
    long double t = 0.0L;
    for (const auto& tr : triples) t += y[tr[0]] * y[tr[1]] * y[tr[2]];
    value[flips] = t;
    weight[flips] = w;
  }
  long double mean = 0.0L;
  for (std::uint64_t f = 0; f < patterns; ++f) mean += weight[f] * value[f];
  long double var = 0.0L;
  for (std::uint64_t f = 0; f < patterns; ++f) {
    const long double d = value[f] - mean;
    var += weight[f] * d * d;
  }
  return {static_cast<double>(mean), static_cast<double>(var)};
}

struct ExpectationOracle {
  double by_linearity = 0.0;
  std::optional<double> by_enumeration;
};

// E[estimate]: by linearity it is the exact triangle count; graphs with at
// most kMaxEnumeratedPairs pairs are also enumerated, and the two routes must
// agree to 1e-9 relative.
inline ExpectationOracle ExactExpectationOracle(const Graph& g,
                                                double epsilon) {
  ExpectationOracle out;
  out.by_linearity = static_cast<double>(CountTrianglesExact(g));
  if (g.n() * (g.n() - 1) / 2 <= kMaxEnumeratedPairs) {
    const double e = EnumerateEstimatorMoments(g, epsilon).mean;
    // Tolerance relative to the largest possible single-pattern value.
    const auto nn = static_cast<double>(g.n());
    const double atom = RescaleAtoms(epsilon).present;
    const double scale = std::max(
        1.0, nn * (nn - 1.0) * (nn - 2.0) / 6.0 * atom * atom * atom);
    if (std::abs(e - out.by_linearity) > 1e-9 * scale) {
      throw std::logic_error("ExactExpectationOracle: routes disagree");
    }
    out.by_enumeration = e;
  }
  return out;
}

// Exact Var[estimate] from the covariance decomposition:
//   sum over triples of Var[Z_ijk] = (s + 1_ij)(s + 1_jk)(s + 1_ik) - 1_ijk
// plus, for every ordered pair of distinct triples {i,j,k}, {j,k,l} sharing
// the vertex pair {j, k}, the covariance s * 1_ij 1_ik 1_lj 1_lk, where
// s = e^eps / (e^eps - 1)^2. Triples sharing at most one vertex share no
// edge and are independent.
inline double ExactVarianceOracle(const Graph& g, double epsilon) {
  const double s = RescaledVariance(epsilon);
  const std::size_t n = g.n();
  auto ind = [&g](Vertex a, Vertex b) { return g.HasEdge(a, b) ? 1.0 : 0.0; };

  double triple_terms = 0.0;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      for (Vertex k = j + 1; k < n; ++k) {
        const double tri = ind(i, j) * ind(j, k) * ind(i, k);
        triple_terms +=
            (s + ind(i, j)) * (s + ind(j, k)) * (s + ind(i, k)) - tri;
      }
    }
  }

  // Shared pair {j, k}; ordered choice of the two private vertices i != l.
  double covariance_terms = 0.0;
  for (Vertex j = 0; j < n; ++j) {
    for (Vertex k = j + 1; k < n; ++k) {
      for (Vertex i = 0; i < n; ++i) {
        if (i == j || i == k) continue;
        for (Vertex l = 0; l < n; ++l) {
          if (l == i || l == j || l == k) continue;
          covariance_terms +=
              s * ind(i, j) * ind(i, k) * ind(l, j) * ind(l, k);
        }
      }
    }
  }
  return triple_terms + covariance_terms;
}

// ---------------------------------------------------------------------------
// Variance sweep.

// Families: "empty", "complete", "cycle", "star" (n - 1 leaves) and "er"
// (G(n, 1/2) drawn from key.Child(kTagGraph, n)).
inline Graph MakeFamilyGraph(const std::string& family, std::size_t n,
                             const StreamKey& key) {
  if (family == "empty") return EmptyGraph(n);
  if (family == "complete") return CompleteGraph(n);
  if (family == "cycle") return CycleGraph(n);
  if (family == "star") return StarGraph(n - 1);
  if (family == "er") return ErdosRenyi(n, 0.5, key.Child(kTagGraph, n));
  throw std::invalid_argument("unknown graph family: " + family);
}

struct VarianceSweepRow {
  std::size_t n = 0;
  double epsilon = 0.0;
  std::string family;
  std::size_t trials = 0;
  std::uint64_t t_exact = 0;
  std::uint64_t c4 = 0;
  double var_empirical = 0.0;
  double var_oracle = 0.0;
  double ratio = 0.0;
  std::uint64_t seed = 0;
};

// Repeated independent estimates of one graph; trial t uses
// key.Child(kTagTrial, t). Results are index-ordered.
inline std::vector<double> RepeatEstimates(const Graph& g, double epsilon,
                                           std::size_t trials,
                                           const StreamKey& key, int workers) {
  CheckEstimatorEpsilon(epsilon);
  std::vector<double> out(trials);
  const RandomizedResponseFamily family(epsilon);
  const RescaledTriangleSum post(epsilon);
  ParallelFor(trials, workers, [&](std::size_t t) {
    out[t] = RunNoninteractive(g, family, post, key.Child(kTagTrial, t)).result;
  });
  return out;
}

inline std::vector<VarianceSweepRow> VarianceSweep(
    const std::vector<std::size_t>& ns, const std::vector<double>& epsilons,
    const std::vector<std::string>& families, std::size_t trials,
    const StreamKey& key, int workers = 1) {
  if (trials < 1000) {
    throw std::invalid_argument("VarianceSweep: trials must be >= 1000");
  }
  std::vector<VarianceSweepRow> rows;
  for (const std::string& family : families) {
    for (std::size_t n : ns) {
      const Graph g = MakeFamilyGraph(family, n, key);
      for (std::size_t e = 0; e < epsilons.size(); ++e) {
        VarianceSweepRow row;
        row.n = n;
        row.epsilon = epsilons[e];
        row.family = family;
        row.trials = trials;
        row.t_exact = CountTrianglesExact(g);
        row.c4 = CountC4Exact(g);
        row.seed = key.seed();
        const StreamKey cell = key.Child(rows.size());
        const std::vector<double> est =
            RepeatEstimates(g, epsilons[e], trials, cell, workers);
        row.var_empirical = SampleVariance(est);
        row.var_oracle = ExactVarianceOracle(g, epsilons[e]);
        row.ratio = row.var_empirical / row.var_oracle;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

inline CsvTable VarianceSweepCsv(const std::vector<VarianceSweepRow>& rows) {
  CsvTable table({"n", "epsilon", "family", "trials", "t_exact", "c4",
                  "var_empirical", "var_oracle", "ratio", "seed"});
  for (const auto& r : rows) {
    table.AddRow({std::to_string(r.n), FormatDouble(r.epsilon), r.family,
                  std::to_string(r.trials), std::to_string(r.t_exact),
                  std::to_string(r.c4), FormatDouble(r.var_empirical),
                  FormatDouble(r.var_oracle), FormatDouble(r.ratio),
                  std::to_string(r.seed)});
  }
  return table;
}

}  // namespace ledp

#endif  // LEDP_RR_ESTIMATOR_HPP_
