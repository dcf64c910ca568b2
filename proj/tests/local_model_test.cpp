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

#include "ledp/local_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ledp/privacy.hpp"

namespace ledp {
namespace {

TEST(FlipProbability, ClosedFormValues) {
  EXPECT_NEAR(FlipProbability(std::log(3.0)), 0.25, 1e-15);
  EXPECT_NEAR(FlipProbability(std::log(9.0)), 0.1, 1e-15);
  EXPECT_NEAR(FlipProbability(1e-6), 0.5, 1e-6);
  EXPECT_THROW(FlipProbability(0.0), std::invalid_argument);
  EXPECT_THROW(FlipProbability(-1.0), std::invalid_argument);
}

TEST(RandomizedResponse, MarginalFlipRate) {
  const double eps = std::log(3.0);
  const std::size_t bits = 1'000'000;
  for (bool input : {false, true}) {
    BitVector x(bits);
    for (std::size_t i = 0; i < bits; ++i) x.Set(i, input);
    Stream rng = StreamKey(21).Child(input).Open();
    const BitVector y = RandomizedResponse(x, eps, rng);
    ASSERT_EQ(y.size(), bits);
    const double kept =
        static_cast<double>(bits - HammingDistance(x, y)) / bits;
    const double p = 0.75;
    EXPECT_NEAR(kept, p, 4.0 * std::sqrt(p * (1 - p) / bits));
    EXPECT_NEAR(1.0 - kept, 0.25, 0.005);
  }
}

TEST(RandomizedResponse, AdjacentFlipsUncorrelated) {
  const std::size_t bits = 1'000'000;
  const BitVector x(bits);
  Stream rng = StreamKey(22).Open();
  const BitVector y = RandomizedResponse(x, 1.0, rng);
  // Correlation of flip indicators at positions (2t, 2t + 1).
  const std::size_t pairs = bits / 2;
  double sa = 0, sb = 0, sab = 0;
  for (std::size_t t = 0; t < pairs; ++t) {
    const double a = y.Get(2 * t), b = y.Get(2 * t + 1);
    sa += a;
    sb += b;
    sab += a * b;
  }
  const double ma = sa / pairs, mb = sb / pairs;
  const double cov = sab / pairs - ma * mb;
  const double corr = cov / std::sqrt(ma * (1 - ma) * mb * (1 - mb));
  EXPECT_LT(std::abs(corr), 4.0 / std::sqrt(static_cast<double>(pairs)));
}

TEST(RandomizedResponse, EmptyAndDeterministic) {
  Stream rng = StreamKey(1).Open();
  EXPECT_EQ(RandomizedResponse(BitVector(0), 1.0, rng).size(), 0u);
  BitVector x(300);
  for (std::size_t i = 0; i < 300; i += 3) x.Set(i, true);
  Stream a = StreamKey(5).Open(), b = StreamKey(5).Open();
  EXPECT_EQ(RandomizedResponse(x, 0.5, a), RandomizedResponse(x, 0.5, b));
  EXPECT_THROW(RandomizedResponse(x, 0.0, a), std::invalid_argument);
}

TEST(ComposeLedger, Arithmetic) {
  const PrivacyParams two = ComposeLedger({{0.7, 1e-6}, {0.7, 1e-6}});
  EXPECT_DOUBLE_EQ(two.epsilon, 1.4);
  EXPECT_DOUBLE_EQ(two.delta, 2e-6);
  const PrivacyParams none = ComposeLedger(std::span<const PrivacyParams>{});
  EXPECT_EQ(none.epsilon, 0.0);
  EXPECT_EQ(none.delta, 0.0);
  EXPECT_NEAR(ComposeLedger({{0.1, 0}, {0.2, 0}, {0.3, 0}}).epsilon, 0.6,
              1e-12);
}

TEST(ComposeLedger, OrderInvariantAndAssociative) {
  Stream rng = StreamKey(8).Open();
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<PrivacyParams> c(6);
    for (auto& p : c) p = {0.01 + rng.Uniform(), 0.1 * rng.Uniform()};
    const PrivacyParams whole = ComposeLedger(c);
    const PrivacyParams left =
        ComposeLedger(std::span<const PrivacyParams>(c).first(2));
    const PrivacyParams right =
        ComposeLedger(std::span<const PrivacyParams>(c).subspan(2));
    const PrivacyParams nested = ComposeLedger({left, right});
    std::reverse(c.begin(), c.end());
    const PrivacyParams reversed = ComposeLedger(c);
    EXPECT_NEAR(whole.epsilon, nested.epsilon, 1e-12);
    EXPECT_NEAR(whole.delta, nested.delta, 1e-12);
    EXPECT_NEAR(whole.epsilon, reversed.epsilon, 1e-12);
  }
}

TEST(ComposeLedger, RejectsInvalidCharges) {
  EXPECT_THROW(ComposeLedger({{-1.0, 0.0}}), std::invalid_argument);
  EXPECT_THROW(ComposeLedger({{1.0, 1.0}}), std::invalid_argument);
}

TEST(RunNoninteractive, ReleasedBitCounts) {
  const Graph k3 = CompleteGraph(3);
  const auto upper = RunNoninteractive(
      k3, IdentityFamily(ReleaseMode::kUpperTriangle), CountReleasedBits{},
      StreamKey(1));
  EXPECT_EQ(upper.result, 3u);
  const auto full = RunNoninteractive(k3, IdentityFamily(ReleaseMode::kFullRow),
                                      CountReleasedBits{}, StreamKey(1));
  EXPECT_EQ(full.result, 9u);
  EXPECT_EQ(upper.transcript.rounds().size(), 1u);
  EXPECT_EQ(upper.transcript.InvocationCount(), 3u);
}

TEST(RunNoninteractive, LedgerIsEpsilonPerEdge) {
  const Graph g = CompleteGraph(6);
  for (ReleaseMode mode : {ReleaseMode::kUpperTriangle, ReleaseMode::kFullRow}) {
    const auto run =
        RunNoninteractive(g, RandomizedResponseFamily(0.8, mode),
                          CountReleasedBits{}, StreamKey(2));
    const Transcript& t = run.transcript;
    // Full rows read every edge twice (once per endpoint).
    const double per_edge = mode == ReleaseMode::kFullRow ? 1.6 : 0.8;
    for (Vertex i = 0; i < 6; ++i) {
      for (Vertex j = i + 1; j < 6; ++j) {
        EXPECT_DOUBLE_EQ(t.PairLedger(i, j).epsilon, per_edge);
      }
    }
    EXPECT_DOUBLE_EQ(t.GlobalLedger().epsilon, per_edge);
    EXPECT_EQ(t.GlobalLedger().delta, 0.0);
    EXPECT_DOUBLE_EQ(t.RoundCharge(0).epsilon, 0.8);
  }
}

TEST(RunNoninteractive, IdentityLedgerIsInfinite) {
  const auto run = RunNoninteractive(CompleteGraph(4), IdentityFamily(),
                                     CountReleasedBits{}, StreamKey(3));
  EXPECT_FALSE(run.transcript.GlobalLedger().IsPrivate());
  const auto json = run.transcript.ToJson();
  EXPECT_TRUE(json["ledger"]["epsilon_total"].is_null());
}

TEST(RunNoninteractive, IdentityReleasesExactTriangleCount) {
  const Graph g = ErdosRenyi(15, 0.5, StreamKey(4));
  const auto run = RunNoninteractive(g, IdentityFamily(),
                                     ExactCountPostprocessor(), StreamKey(4));
  EXPECT_EQ(run.result, static_cast<double>(CountTrianglesExact(g)));
}

TEST(Transcript, JsonLayout) {
  const auto run = RunNoninteractive(CompleteGraph(3), IdentityFamily(),
                                     CountReleasedBits{}, StreamKey(1));
  const auto json = run.transcript.ToJson();
  ASSERT_EQ(json["entries"].size(), 3u);
  const auto& e0 = json["entries"][0];
  EXPECT_EQ(e0["round"], 0);
  EXPECT_EQ(e0["vertex"], 0);
  EXPECT_EQ(e0["randomizer"], "identity/upper");
  EXPECT_EQ(e0["payload_hex"], "03");  // bits {1, 2} of row 0
  EXPECT_EQ(json["entries"][2]["payload_hex"], "");
  EXPECT_EQ(json["ledger"]["delta_total"], 0.0);
}

TEST(Transcript, RecordKeepsVertexTagOrder) {
  Transcript t(4);
  t.BeginRound();
  const PrivacyParams p{1.0, 0.0};
  t.Record({2, 1, "r", p, BitVector(1)}, ReleaseMode::kUpperTriangle);
  t.Record({0, 0, "r", p, BitVector(3)}, ReleaseMode::kUpperTriangle);
  t.Record({2, 0, "r", p, BitVector(1)}, ReleaseMode::kUpperTriangle);
  const auto& r = t.rounds()[0];
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].vertex, 0u);
  EXPECT_EQ(r[1].tag, 0u);
  EXPECT_EQ(r[2].tag, 1u);
  EXPECT_EQ(t.InvocationsOf(2), 2u);
  EXPECT_DOUBLE_EQ(t.PairLedger(2, 3).epsilon, 2.0);
  EXPECT_DOUBLE_EQ(t.PairLedger(0, 1).epsilon, 1.0);
  EXPECT_THROW(t.Find(0, 1), std::out_of_range);
}

// Fails on one chosen vertex.
class FailingFamily {
 public:
  explicit FailingFamily(Vertex bad) : bad_(bad) {}
  std::string Name() const { return "failing"; }
  PrivacyParams Params() const { return {1.0, 0.0}; }
  ReleaseMode Mode() const { return ReleaseMode::kUpperTriangle; }
  BitVector Release(Vertex v, const BitVector& row, Stream&) const {
    if (v == bad_) throw std::runtime_error("boom");
    return ConsumedBits(v, row, Mode());
  }

 private:
  Vertex bad_;
};

TEST(RunNoninteractive, FailureCarriesValidPrefix) {
  try {
    RunNoninteractive(CompleteGraph(5), FailingFamily(3), CountReleasedBits{},
                      StreamKey(1));
    FAIL() << "expected LocalRunError";
  } catch (const LocalRunError& e) {
    EXPECT_STREQ(e.what(), "boom");
    EXPECT_EQ(e.prefix().InvocationCount(), 3u);
    EXPECT_EQ(e.prefix().rounds().size(), 1u);
  }
}

}  // namespace
}  // namespace ledp
