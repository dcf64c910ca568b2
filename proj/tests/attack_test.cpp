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

#include "ledp/attack.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ledp/local_model.hpp"
#include "ledp/rr_estimator.hpp"
#include "ledp/stats.hpp"

namespace ledp {
namespace {

OuterProductQuery RandomQuery(std::size_t n, Stream& rng) {
  OuterProductQuery q{std::vector<std::int8_t>(n), std::vector<std::int8_t>(n)};
  for (auto& s : q.a) s = static_cast<std::int8_t>(rng.Sign());
  for (auto& s : q.b) s = static_cast<std::int8_t>(rng.Sign());
  return q;
}

SubmatrixQuery RandomSubmatrixQuery(std::size_t n, Stream& rng) {
  SubmatrixQuery q{BitVector(n), BitVector(n)};
  for (std::size_t i = 0; i < n; ++i) {
    q.q1.Set(i, rng() >> 63);
    q.q2.Set(i, rng() >> 63);
  }
  return q;
}

// Test-only: sum_ij A_i X_ij B_j straight from the definition.
std::int64_t NaiveBilinear(const BitDataset& x, const std::vector<int>& a,
                           const std::vector<int>& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.n(); ++i)
    for (std::size_t j = 0; j < x.n(); ++j) s += a[i] * x.Get(i, j) * b[j];
  return s;
}

TEST(OuterProductAnswer, Examples) {
  const BitDataset id{{1, 0}, {0, 1}};
  EXPECT_EQ(OuterProductAnswer(id, {{1, 1}, {1, 1}}), 2);
  EXPECT_EQ(OuterProductAnswer(BitDataset(3), {{1, -1, 1}, {-1, -1, 1}}), 0);
  const BitDataset x{{1, 1}, {0, 1}};
  EXPECT_EQ(OuterProductAnswer(x, {{1, -1}, {1, 1}}), 1);
  EXPECT_THROW(OuterProductAnswer(x, {{1, -1, 1}, {1, 1}}),
               std::invalid_argument);
  EXPECT_THROW(OuterProductAnswer(x, {{1, 0}, {1, 1}}), std::invalid_argument);
}

TEST(SubmatrixAnswer, Examples) {
  Stream rng = StreamKey(1).Open();
  const BitDataset x = BitDataset::Random(5, rng);
  SubmatrixQuery ones{BitVector(5), BitVector(5)};
  for (std::size_t i = 0; i < 5; ++i) {
    ones.q1.Set(i, true);
    ones.q2.Set(i, true);
  }
  EXPECT_EQ(SubmatrixAnswer(x, ones),
            static_cast<std::int64_t>(x.Popcount()));
  ones.q1 = BitVector(5);
  EXPECT_EQ(SubmatrixAnswer(x, ones), 0);
  const BitDataset y{{1, 0}, {1, 1}};
  EXPECT_EQ(SubmatrixAnswer(y, {BitVector{1, 1}, BitVector{1, 0}}), 2);
}

TEST(SplitOuterProduct, SignExamples) {
  const BitDataset x{{1, 1, 0}, {0, 1, 1}, {1, 0, 0}};
  const auto pop = static_cast<std::int64_t>(x.Popcount());
  OuterProductQuery all_ones{{1, 1, 1}, {1, 1, 1}};
  const auto s1 = SplitOuterProduct(all_ones);
  EXPECT_EQ(SubmatrixAnswer(x, s1.queries[1]), 0);
  EXPECT_EQ(OuterProductSplit::Combine(pop, std::int64_t{0}, pop), pop);
  OuterProductQuery neg{{-1, -1, -1}, {1, 1, 1}};
  const auto s2 = SplitOuterProduct(neg);
  std::array<std::int64_t, 3> a;
  for (int s = 0; s < 3; ++s) a[s] = SubmatrixAnswer(x, s2.queries[s]);
  EXPECT_EQ(a[0], 0);
  EXPECT_EQ(a[1], 0);
  EXPECT_EQ(OuterProductSplit::Combine(a[0], a[1], a[2]), -pop);
  EXPECT_EQ(OuterProductAnswer(x, neg), -pop);
}

TEST(SplitOuterProduct, DecompositionIdentity) {
  Stream rng = StreamKey(2).Open();
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + rep % 10;
    const BitDataset x = BitDataset::Random(n, rng);
    const OuterProductQuery q = RandomQuery(n, rng);
    const auto split = SplitOuterProduct(q);
    std::array<std::int64_t, 3> a;
    for (int s = 0; s < 3; ++s) a[s] = SubmatrixAnswer(x, split.queries[s]);
    const std::vector<int> av(q.a.begin(), q.a.end()), bv(q.b.begin(), q.b.end());
    EXPECT_EQ(OuterProductSplit::Combine(a[0], a[1], a[2]),
              NaiveBilinear(x, av, bv));
    EXPECT_EQ(OuterProductAnswer(x, q), NaiveBilinear(x, av, bv));
  }
}

TEST(BuildSecretGraph, Layout) {
  const PartitionedGraph id = BuildSecretGraph(BitDataset{{1, 0}, {0, 1}});
  EXPECT_EQ(id.graph.n(), 6u);
  EXPECT_EQ(id.graph.Edges(),
            (std::vector<std::pair<Vertex, Vertex>>{{0, 2}, {1, 3}}));
  EXPECT_EQ(id.partition.Part("W"), (std::vector<Vertex>{4, 5}));
  EXPECT_NO_THROW(id.partition.Validate(6));
  EXPECT_EQ(BuildSecretGraph(BitDataset(4)).graph.EdgeCount(), 0u);
  Stream rng = StreamKey(3).Open();
  for (int rep = 0; rep < 20; ++rep) {
    const BitDataset x = BitDataset::Random(1 + rep % 7, rng);
    EXPECT_EQ(BuildSecretGraph(x).graph.EdgeCount(), x.Popcount());
  }
}

TEST(BuildQueryGraph, TriangleIdentityAndTripartite) {
  Stream rng = StreamKey(4).Open();
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rep % 5;
    const BitDataset x = BitDataset::Random(n, rng);
    const SubmatrixQuery q = RandomSubmatrixQuery(n, rng);
    const Graph g = BuildQueryGraph(x, q);
    EXPECT_EQ(static_cast<std::int64_t>(CountTrianglesExact(g)),
              static_cast<std::int64_t>(n) * SubmatrixAnswer(x, q));
    for (std::size_t part = 0; part < 3; ++part) {
      for (Vertex u = part * n; u < (part + 1) * n; ++u) {
        for (Vertex v = part * n; v < (part + 1) * n; ++v) {
          ASSERT_FALSE(g.HasEdge(u, v));
        }
      }
    }
  }
}

TEST(BuildQueryGraph, Examples) {
  const BitDataset ones{{1, 1}, {1, 1}};
  EXPECT_EQ(CountTrianglesExact(
                BuildQueryGraph(ones, {BitVector{1, 1}, BitVector{1, 1}})),
            8u);
  EXPECT_EQ(CountTrianglesExact(
                BuildQueryGraph(ones, {BitVector{0, 0}, BitVector{1, 1}})),
            0u);
}

TEST(GrayBoxPrepare, StoredOutputsAndCharge) {
  Stream rng = StreamKey(5).Open();
  const BitDataset x = BitDataset::Random(4, rng);
  const auto state = GrayBoxPrepare(x, RandomizedResponseFamily(0.7),
                                    StreamKey(6));
  const Transcript& t = state.transcript();
  EXPECT_EQ(t.InvocationCount(), 2u * 8u);
  for (Vertex v = 0; v < 8; ++v) EXPECT_EQ(t.InvocationsOf(v), 2u);
  for (Vertex w = 8; w < 12; ++w) EXPECT_EQ(t.InvocationsOf(w), 0u);
  EXPECT_DOUBLE_EQ(state.charge().epsilon, 1.4);
  EXPECT_EQ(state.charge().delta, 0.0);
  // Every secret pair is read twice by its U1 endpoint.
  EXPECT_DOUBLE_EQ(t.PairLedger(0, 4).epsilon, 1.4);
  EXPECT_DOUBLE_EQ(t.GlobalLedger().epsilon, 1.4);
}

TEST(GrayBoxPrepare, SingleBitTouchesTwoRandomizerInputs) {
  const std::size_t n = 4;
  Stream rng = StreamKey(7).Open();
  const BitDataset x = BitDataset::Random(n, rng);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      BitDataset x2 = x;
      x2.Flip(i, j);
      const Graph g1 = BuildSecretGraph(x).graph;
      const Graph g2 = BuildSecretGraph(x2).graph;
      std::vector<Vertex> changed;
      for (Vertex v = 0; v < 3 * n; ++v) {
        if (!(g1.RowBits(v) == g2.RowBits(v))) changed.push_back(v);
      }
      EXPECT_EQ(changed, (std::vector<Vertex>{i, n + j}));
    }
  }
}

TEST(GrayBox, IdentityFamilyAnswersExactly) {
  Stream rng = StreamKey(8).Open();
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 1 + rep % 6;
    const BitDataset x = BitDataset::Random(n, rng);
    const auto state = GrayBoxPrepare(x, IdentityFamily(), StreamKey(rep));
    const SubmatrixQuery q = RandomSubmatrixQuery(n, rng);
    EXPECT_EQ(GrayBoxAnswerSubmatrix(state, q, ExactCountPostprocessor(),
                                     StreamKey(1)),
              static_cast<double>(SubmatrixAnswer(x, q)));
    const OuterProductQuery oq = RandomQuery(n, rng);
    EXPECT_EQ(GrayBoxAnswerOuter(state, oq, ExactCountPostprocessor(),
                                 StreamKey(2)),
              static_cast<double>(OuterProductAnswer(x, oq)));
  }
  const BitDataset x = BitDataset::Random(3, rng);
  const auto state = GrayBoxPrepare(x, IdentityFamily(), StreamKey(1));
  EXPECT_EQ(GrayBoxAnswerSubmatrix(state, {BitVector(3), BitVector(3)},
                                   ExactCountPostprocessor(), StreamKey(1)),
            0.0);
}

TEST(GrayBox, AllOnesOuterQueryUsesEmptySecondPart) {
  Stream rng = StreamKey(9).Open();
  const BitDataset x = BitDataset::Random(4, rng);
  const auto state = GrayBoxPrepare(x, IdentityFamily(), StreamKey(1));
  const OuterProductQuery q{{1, 1, 1, 1}, {1, 1, 1, 1}};
  const auto split = SplitOuterProduct(q);
  EXPECT_EQ(split.queries[1].q1.Count(), 0u);
  const ExactCountPostprocessor post;
  const StreamKey key(3);
  const double a1 = GrayBoxAnswerSubmatrix(state, split.queries[0], post,
                                           key.Child(0));
  const double a3 = GrayBoxAnswerSubmatrix(state, split.queries[2], post,
                                           key.Child(2));
  EXPECT_EQ(GrayBoxAnswerOuter(state, q, post, key), 2 * a1 - a3);
}

TEST(GrayBox, CombinedErrorAtMostFiveTimesWorstPart) {
  // The combiner 2(a1 + a2) - a3 turns per-part errors e_s into
  // 2e_1 + 2e_2 - e_3, bounded by 5 max|e_s|.
  Stream rng = StreamKey(10).Open();
  for (int rep = 0; rep < 1000; ++rep) {
    std::array<double, 3> e;
    for (auto& v : e) v = 2.0 * rng.Uniform() - 1.0;
    const double worst =
        std::max({std::abs(e[0]), std::abs(e[1]), std::abs(e[2])});
    EXPECT_LE(std::abs(OuterProductSplit::Combine(e[0], e[1], e[2])),
              5.0 * worst + 1e-12);
  }
}

TEST(GrayBox, FastPathMatchesGenericPath) {
  Stream rng = StreamKey(11).Open();
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 2 + rep % 7;
    const double eps = 0.5 + 0.25 * (rep % 5);
    const BitDataset x = BitDataset::Random(n, rng);
    for (ReleaseMode mode :
         {ReleaseMode::kUpperTriangle, ReleaseMode::kFullRow}) {
      const auto state = GrayBoxPrepare(
          x, RandomizedResponseFamily(eps, mode), StreamKey(rep));
      const OuterProductQuery q = RandomQuery(n, rng);
      const double generic = GrayBoxAnswerOuter(
          state, q, RescaledTriangleSum(eps, mode), StreamKey(100 + rep));
      const double fast = GrayBoxAnswerOuterFast(
          state, q,
          [eps](const Graph& g) { return SumRescaledTriplesByCounts(g, eps); },
          StreamKey(100 + rep));
      EXPECT_EQ(generic, fast);
    }
  }
}

TEST(GrayBox, NeverReadsSecretAfterPrepare) {
  Stream rng = StreamKey(12).Open();
  BitDataset x = BitDataset::Random(5, rng);
  const auto state = GrayBoxPrepare(x, RandomizedResponseFamily(1.0),
                                    StreamKey(13));
  const OuterProductQuery q = RandomQuery(5, rng);
  const RescaledTriangleSum post(1.0);
  const double before = GrayBoxAnswerOuter(state, q, post, StreamKey(14));
  // Corrupt the secret; the answer only depends on the stored state.
  for (std::size_t e = 0; e < 25; ++e) x.mutable_bits().Flip(e);
  EXPECT_EQ(GrayBoxAnswerOuter(state, q, post, StreamKey(14)), before);
}

TEST(GrayBox, RandomizedResponseAnswersAreUnbiased) {
  const std::size_t n = 8;
  const double eps = 2.0;
  Stream rng = StreamKey(15).Open();
  const BitDataset x = BitDataset::Random(n, rng);
  const SubmatrixQuery q = RandomSubmatrixQuery(n, rng);
  const auto post = [eps](const Graph& g) {
    return SumRescaledTriplesByCounts(g, eps);
  };
  // Each rerun redraws the stored outputs and the W randomness.
  const std::size_t reps = 10000;
  std::vector<double> answers(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto state = GrayBoxPrepare(x, RandomizedResponseFamily(eps),
                                      StreamKey(16).Child(r));
    answers[r] = GrayBoxAnswerSubmatrixFast(state, q, post, StreamKey(17).Child(r));
  }
  EXPECT_NEAR(Mean(answers), static_cast<double>(SubmatrixAnswer(x, q)),
              4.0 * StandardError(answers));
}

TEST(SampleQueries, SignsAndDeterminism) {
  const QuerySet a = SampleQueries(4, 100000, StreamKey(18));
  for (std::size_t i = 0; i < 4; ++i) {
    double sa = 0, sb = 0;
    for (std::size_t l = 0; l < a.k; ++l) {
      sa += a.A(l)[i];
      sb += a.B(l)[i];
      ASSERT_TRUE(a.A(l)[i] == 1 || a.A(l)[i] == -1);
    }
    EXPECT_NEAR(sa / a.k, 0.0, 0.02);
    EXPECT_NEAR(sb / a.k, 0.0, 0.02);
  }
  const QuerySet b = SampleQueries(4, 100000, StreamKey(18));
  EXPECT_EQ(a.a, b.a);
  EXPECT_EQ(a.b, b.b);
  EXPECT_THROW(SampleQueries(4, 0, StreamKey(1)), std::invalid_argument);
}

TEST(DefaultQueryCount, MatchesClosedForm) {
  EXPECT_EQ(DefaultQueryCount(8, 1.0 / 9.0), 663552u);
  EXPECT_EQ(DefaultQueryCount(3, 1.0 / 9.0), 93312u);
  EXPECT_EQ(DefaultQueryCount(2, 0.5), 2048u);
  AttackConfig c;
  EXPECT_EQ(c.QueryCount(), 663552u);
}

TEST(Catches, Examples) {
  const QuerySet qs = SampleQueries(3, 500, StreamKey(19));
  EXPECT_FALSE(Catches(qs, DiffMatrix(3), 1.0 / 9.0));
  // n = 2, M all ones, the 16 sign pairs as the query set, gamma = 1.
  QuerySet all{2, 16, {}, {}};
  for (int amask = 0; amask < 4; ++amask) {
    for (int bmask = 0; bmask < 4; ++bmask) {
      for (int i = 0; i < 2; ++i) all.a.push_back((amask >> i) & 1 ? -1 : 1);
      for (int i = 0; i < 2; ++i) all.b.push_back((bmask >> i) & 1 ? -1 : 1);
    }
  }
  DiffMatrix ones(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) ones.Set(i, j, 1);
  EXPECT_EQ(CountSeparatingQueries(all, ones, 1.0), 4u);
  EXPECT_TRUE(Catches(all, ones, 1.0));
}

TEST(Catches, LargeDifferencesAreCaught) {
  const std::size_t n = 8;
  const double gamma = 1.0 / 9.0;
  const QuerySet qs =
      SampleQueries(n, DefaultQueryCount(n, gamma), StreamKey(20));
  int caught = 0;
  for (int rep = 0; rep < 100; ++rep) {
    Stream rng = StreamKey(21).Child(rep).Open();
    const auto lo = static_cast<std::size_t>(std::ceil(gamma * n * n));
    const DiffMatrix m = DiffMatrix::Random(n, lo + rng.Below(n * n - lo + 1), rng);
    caught += Catches(qs, m, gamma);
  }
  EXPECT_GE(caught, 99);
}

TEST(CountInaccurate, ZeroForTruthAndEarlyExit) {
  Stream rng = StreamKey(22).Open();
  const BitDataset x = BitDataset::Random(5, rng);
  const QuerySet qs = SampleQueries(5, 2000, StreamKey(23));
  const auto answers = ExactAnswers(x, qs);
  EXPECT_EQ(CountInaccurate(qs, answers, x, 0.5), 0u);
  BitDataset y = x;
  y.Flip(0, 0);  // every answer moves by exactly 1
  EXPECT_EQ(CountInaccurate(qs, answers, y, 0.5), 2000u);
  EXPECT_EQ(CountInaccurate(qs, answers, y, 0.5, 10), 11u);
}

TEST(ExhaustiveSearch, RecoversSecretFromExactAnswers) {
  for (int rep = 0; rep < 5; ++rep) {
    Stream rng = StreamKey(24).Child(rep).Open();
    const BitDataset x = BitDataset::Random(3, rng);
    const QuerySet qs = SampleQueries(3, 400, StreamKey(25).Child(rep));
    const SearchResult r =
        ExhaustiveSearch(qs, ExactAnswers(x, qs), 1.0 / 9.0, StreamKey(rep));
    EXPECT_TRUE(r.feasible);
    EXPECT_EQ(r.inaccurate, 0u);
    EXPECT_EQ(r.best, x);
  }
  const QuerySet big = SampleQueries(5, 10, StreamKey(1));
  EXPECT_THROW(ExhaustiveSearch(big, std::vector<double>(10), 0.1, StreamKey(1)),
               std::invalid_argument);
}

TEST(ExhaustiveSearch, PrefersFirstMinimiser) {
  // With a single all-zero answer many matrices tie; the first in
  // enumeration order is the zero matrix.
  const QuerySet qs = SampleQueries(2, 1, StreamKey(26));
  const SearchResult r =
      ExhaustiveSearch(qs, std::vector<double>{0.0}, 1.0 / 9.0, StreamKey(2));
  EXPECT_EQ(r.inaccurate, 0u);
  EXPECT_EQ(r.best, BitDataset(2));
}

TEST(HillClimbSearch, RecoversSecretFromExactAnswers) {
  Stream rng = StreamKey(27).Open();
  const BitDataset x = BitDataset::Random(8, rng);
  const QuerySet qs = SampleQueries(8, 20000, StreamKey(28));
  const SearchResult r =
      HillClimbSearch(qs, ExactAnswers(x, qs), 1.0 / 9.0, 4, StreamKey(29));
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.best, x);
  EXPECT_EQ(r.restarts_run, 1u);
}

TEST(HillClimbSearch, NoiseAnswersGiveFarCandidates) {
  const std::size_t n = 8;
  int far = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Stream rng = StreamKey(30).Child(trial).Open();
    const BitDataset x = BitDataset::Random(n, rng);
    const QuerySet qs = SampleQueries(n, 5000, StreamKey(31).Child(trial));
    std::vector<double> answers(qs.k);
    for (auto& a : answers) a = (2.0 * rng.Uniform() - 1.0) * n * n;
    const SearchResult r =
        HillClimbSearch(qs, answers, 1.0 / 9.0, 2, StreamKey(32).Child(trial));
    const std::size_t d = HammingDistance(r.best, x);
    far += !r.feasible || d >= 0.3 * n * n;
  }
  EXPECT_EQ(far, 20);
}

TEST(RunAttack, EndToEndSoundnessWithExactTriangleCounts) {
  // Identity randomizers plus exact counting form a zero-error oracle.
  for (std::size_t n : {2u, 3u, 4u}) {
    for (int trial = 0; trial < 3; ++trial) {
      AttackConfig c;
      c.n = n;
      c.k = 300;
      c.mechanism = Mechanism::kIdentity;
      c.search = SearchStrategy::kExhaustive;
      const AttackReport r = RunAttack(c, StreamKey(33).Child(n, trial));
      ASSERT_TRUE(r.hamming.has_value());
      EXPECT_LE(static_cast<double>(*r.hamming), c.gamma * n * n);
      EXPECT_TRUE(r.success);
      EXPECT_EQ(r.max_abs_answer_error, 0.0);
      // Two stored invocations per U vertex, independent of k.
      EXPECT_EQ(r.secret_invocations, 2u * 2u * n);
    }
  }
}

TEST(RunAttack, InvocationBudgetIndependentOfK) {
  for (std::size_t k : {10u, 1000u}) {
    AttackConfig c;
    c.n = 5;
    c.k = k;
    c.epsilon = 1.0;
    const AttackReport r = RunAttack(c, StreamKey(34));
    EXPECT_EQ(r.secret_invocations, 20u);
    EXPECT_DOUBLE_EQ(r.charge.epsilon, 2.0);
  }
}

TEST(RunAttack, DeterministicAcrossWorkers) {
  AttackConfig c;
  c.n = 5;
  c.k = 3000;
  c.epsilon = 1.0;
  const AttackReport one = RunAttack(c, StreamKey(35));
  c.workers = 4;
  const AttackReport four = RunAttack(c, StreamKey(35));
  EXPECT_EQ(AttackReportJson(one).dump(), AttackReportJson(four).dump());
}

TEST(RunAttack, ConfigValidation) {
  AttackConfig c;
  c.gamma = 0.5;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c = AttackConfig();
  c.search = SearchStrategy::kExhaustive;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c = AttackConfig();
  c.epsilon = 0.0;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  EXPECT_THROW(ParseMechanism("laplace"), std::invalid_argument);
}

TEST(PrivacyDistanceDiagnostic, IdentityFlagsNonPrivateLedger) {
  AttackConfig c;
  c.n = 3;
  c.k = 200;
  c.mechanism = Mechanism::kIdentity;
  const PrivacyDistanceReport r = PrivacyDistanceDiagnostic(c, 20, StreamKey(36));
  EXPECT_FALSE(r.bound_applies);
  EXPECT_TRUE(std::isnan(r.bound));
  EXPECT_EQ(r.mean_hamming, 0.0);
  EXPECT_THROW(PrivacyDistanceDiagnostic(c, 19, StreamKey(1)),
               std::invalid_argument);
}

TEST(PrivacyDistanceDiagnostic, PureEpsilonBoundSimplifies) {
  AttackConfig c;
  c.n = 4;
  c.k = 500;
  c.epsilon = 0.3;
  const PrivacyDistanceReport r = PrivacyDistanceDiagnostic(c, 20, StreamKey(37));
  ASSERT_TRUE(r.bound_applies);
  EXPECT_DOUBLE_EQ(r.charge.epsilon, 0.6);
  EXPECT_DOUBLE_EQ(r.bound, std::exp(-0.6) * 16.0 / 2.0);
  EXPECT_TRUE(r.respects_bound);
}

}  // namespace
}  // namespace ledp
