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

#ifndef LEDP_PRIVACY_HPP_
#define LEDP_PRIVACY_HPP_

#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>

#include "ledp/bits.hpp"
#include "ledp/rng.hpp"

namespace ledp {

// (epsilon, delta) charge. A valid charge has epsilon > 0 and
// 0 <= delta < 1; epsilon == +inf marks a non-private release. Ledger totals
// reuse this type and may be (0, 0) for an empty composition.
struct PrivacyParams {
  double epsilon = 0.0;
  double delta = 0.0;

  static PrivacyParams NotPrivate() {
    return {std::numeric_limits<double>::infinity(), 0.0};
  }

  bool IsPrivate() const { return std::isfinite(epsilon); }

  void Validate() const {
    if (!(epsilon > 0.0)) {
      throw std::invalid_argument("PrivacyParams: epsilon must be > 0");
    }
    if (!(delta >= 0.0 && delta < 1.0)) {
      throw std::invalid_argument("PrivacyParams: delta must lie in [0, 1)");
    }
  }

  friend bool operator==(const PrivacyParams&, const PrivacyParams&) = default;
};

// Basic composition: (sum of epsilons, sum of deltas).
inline PrivacyParams ComposeLedger(std::span<const PrivacyParams> charges) {
  PrivacyParams total;
  for (const PrivacyParams& c : charges) {
    c.Validate();
    total.epsilon += c.epsilon;
    total.delta += c.delta;
  }
  return total;
}

inline PrivacyParams ComposeLedger(std::initializer_list<PrivacyParams> charges) {
  return ComposeLedger(std::span<const PrivacyParams>(charges.begin(),
                                                      charges.size()));
}

inline void CheckEpsilon(double epsilon, const char* where) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument(std::string(where) + ": epsilon must be > 0");
  }
}

// Probability that randomized response flips a bit: 1 / (e^eps + 1).
inline double FlipProbability(double epsilon) {
  CheckEpsilon(epsilon, "FlipProbability");
  // 1/(e^eps + 1) == e^-eps / (1 + e^-eps), stable for large eps.
  const double t = std::exp(-epsilon);
  return t / (1.0 + t);
}

// Keeps each bit with probability e^eps / (e^eps + 1), flips it otherwise.
// Bit i consumes the i-th uniform draw of `rng`.
inline BitVector RandomizedResponse(const BitVector& bits, double epsilon,
                                    Stream& rng) {
  const double flip = FlipProbability(epsilon);
  BitVector out = bits;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (rng.Bernoulli(flip)) out.Flip(i);
  }
  return out;
}

}  // namespace ledp

#endif  // LEDP_PRIVACY_HPP_
