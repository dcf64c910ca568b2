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

#ifndef LEDP_STATS_HPP_
#define LEDP_STATS_HPP_

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace ledp {

// Pairwise (cascade) summation in a fixed association order: the result
// depends only on the input sequence.
inline double PairwiseSum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return PairwiseSum(xs.first(half)) + PairwiseSum(xs.subspan(half));
}

inline double Mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("Mean: empty sample");
  return PairwiseSum(xs) / static_cast<double>(xs.size());
}

// Unbiased sample variance, two-pass.
inline double SampleVariance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("SampleVariance: need 2");
  const double mu = Mean(xs);
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sq[i] = (xs[i] - mu) * (xs[i] - mu);
  }
  return PairwiseSum(sq) / static_cast<double>(xs.size() - 1);
}

inline double StandardError(std::span<const double> xs) {
  return std::sqrt(SampleVariance(xs) / static_cast<double>(xs.size()));
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares of log(y) on log(x).
inline LineFit LogLogFit(std::span<const double> xs,
                         std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("LogLogFit: need >= 2 paired points");
  }
  std::vector<double> lx(xs.size()), ly(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0 && ys[i] > 0.0)) {
      throw std::invalid_argument("LogLogFit: values must be positive");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  const double mx = Mean(lx), my = Mean(ly);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

}  // namespace ledp

#endif  // LEDP_STATS_HPP_
