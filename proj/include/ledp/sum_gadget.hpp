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

#ifndef LEDP_SUM_GADGET_HPP_
#define LEDP_SUM_GADGET_HPP_

// Reduction from private summation to private triangle counting: a bit
// vector x becomes a graph with exactly n * sum(x) triangles. A direct
// randomized-response sum estimator serves as the baseline.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ledp/bits.hpp"
#include "ledp/csv.hpp"
#include "ledp/graph.hpp"
#include "ledp/parallel.hpp"
#include "ledp/privacy.hpp"
#include "ledp/rng.hpp"
#include "ledp/rr_estimator.hpp"
#include "ledp/stats.hpp"

namespace ledp {

// V1 = [0, n) and V2 = [n, 3n) with V1 x V2 complete. Party i owns the V2
// vertices n + 2i and n + 2i + 1, which are adjacent iff x_i = 1.
inline PartitionedGraph BuildSumGadget(const BitVector& x) {
  const std::size_t n = x.size();
  GraphBuilder b(3 * n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = n; v < 3 * n; ++v) b.AddEdge(u, v);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (x.Get(i)) b.AddEdge(n + 2 * i, n + 2 * i + 1);
  }
  VertexPartition p{{{}, {}}, {"V1", "V2"}};
  for (Vertex v = 0; v < 3 * n; ++v) p.parts[v < n ? 0 : 1].push_back(v);
  return {std::move(b).Build(), std::move(p)};
}

inline double TrianglesToSum(double t_hat, std::size_t n) {
  if (n == 0) throw std::invalid_argument("TrianglesToSum: n == 0");
  return t_hat / static_cast<double>(n);
}

// Every bit through randomized response, debiased and summed. Unbiased with
// variance n e^eps / (e^eps - 1)^2.
inline double LdpSumBaseline(const BitVector& x, double epsilon, Stream& rng) {
  CheckEstimatorEpsilon(epsilon);
  const BitVector y = RandomizedResponse(x, epsilon, rng);
  const RescaledAtoms atoms = RescaleAtoms(epsilon);
  const std::size_t ones = y.Count();
  return static_cast<double>(ones) * atoms.present +
         static_cast<double>(x.size() - ones) * atoms.absent;
}

// Gadget, then the randomized-response triangle estimator, then T / n.
inline double EndToEndSumViaTriangles(const BitVector& x, double epsilon,
                                      const StreamKey& key) {
  CheckEstimatorEpsilon(epsilon);
  const Graph g = BuildSumGadget(x).graph;
  const double t_hat =
      RunNoninteractive(g, RandomizedResponseFamily(epsilon),
                        RescaledTriangleSum(epsilon), key)
          .result;
  return TrianglesToSum(t_hat, x.size());
}

struct SumScalingRow {
  std::size_t n = 0;
  double epsilon = 0.0;
  std::size_t trials = 0;
  double mean_abs_error_baseline = 0.0;
  double mean_abs_error_via_triangles = 0.0;  // NaN above the cap
  double fitted_exponent = 0.0;               // slope over all baseline rows
};

// Largest n for which the triangle route is run by default; the gadget has
// 3n vertices and each trial randomizes ~4.5 n^2 bits.
inline constexpr std::size_t kDefaultViaTrianglesCap = 64;

// Cell n uses x drawn from key.Child(kTagDataset, n); baseline trial t uses
// key.Child(n, kTagTrial, t) and triangle trial t key.Child(n, kTagSample, t).
inline std::vector<SumScalingRow> SumScaling(
    const std::vector<std::size_t>& ns, double epsilon, std::size_t trials,
    const StreamKey& key, int workers = 1,
    std::size_t via_cap = kDefaultViaTrianglesCap) {
  CheckEstimatorEpsilon(epsilon);
  if (trials == 0) throw std::invalid_argument("SumScaling: trials == 0");
  std::vector<SumScalingRow> rows;
  std::vector<double> xs, ys;
  for (std::size_t n : ns) {
    if (n == 0) throw std::invalid_argument("SumScaling: n == 0");
    Stream data_rng = key.Child(kTagDataset, n).Open();
    BitVector x(n);
    for (std::size_t i = 0; i < n; ++i) x.Set(i, data_rng() >> 63);
    const auto s = static_cast<double>(x.Count());
    const StreamKey cell = key.Child(n);

    std::vector<double> base(trials);
    ParallelFor(trials, workers, [&](std::size_t t) {
      Stream rng = cell.Child(kTagTrial, t).Open();
      base[t] = std::abs(LdpSumBaseline(x, epsilon, rng) - s);
    });
    SumScalingRow row;
    row.n = n;
    row.epsilon = epsilon;
    row.trials = trials;
    row.mean_abs_error_baseline = Mean(base);
    row.mean_abs_error_via_triangles = std::numeric_limits<double>::quiet_NaN();
    if (n <= via_cap) {
      std::vector<double> via(trials);
      ParallelFor(trials, workers, [&](std::size_t t) {
        via[t] = std::abs(
            EndToEndSumViaTriangles(x, epsilon, cell.Child(kTagSample, t)) - s);
      });
      row.mean_abs_error_via_triangles = Mean(via);
    }
    xs.push_back(static_cast<double>(n));
    ys.push_back(row.mean_abs_error_baseline);
    rows.push_back(row);
  }
  const double slope = rows.size() >= 2
                           ? LogLogFit(xs, ys).slope
                           : std::numeric_limits<double>::quiet_NaN();
  for (auto& r : rows) r.fitted_exponent = slope;
  return rows;
}

// Cells above the triangle-route cap are left empty.
inline CsvTable SumScalingCsv(const std::vector<SumScalingRow>& rows) {
  CsvTable table({"n", "epsilon", "trials", "mean_abs_error_baseline",
                  "mean_abs_error_via_triangles", "fitted_exponent"});
  for (const auto& r : rows) {
    table.AddRow({std::to_string(r.n), FormatDouble(r.epsilon),
                  std::to_string(r.trials),
                  FormatDouble(r.mean_abs_error_baseline),
                  std::isnan(r.mean_abs_error_via_triangles)
                      ? std::string()
                      : FormatDouble(r.mean_abs_error_via_triangles),
                  FormatDouble(r.fitted_exponent)});
  }
  return table;
}

}  // namespace ledp

#endif  // LEDP_SUM_GADGET_HPP_
