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

// ledp_lab: experiment driver for the local edge-DP laboratory.
//
//   ledp_lab <subcommand> [--config file.json] [flags...]
//
// Config files are JSON objects whose keys are flag names without the
// leading dashes; flags given on the command line override them. Reports go
// to --output (stdout when omitted) and a one-line summary is printed.
// Exit codes: 0 success, 1 runtime failure, 2 usage error, 3 attack failed.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ledp/ledp.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAttackFailed = 3;
constexpr std::uint64_t kDefaultSeed = 20260101;

class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& field, const std::string& what)
      : std::runtime_error("--" + field + ": " + what) {}
};

template <typename T>
std::vector<T> ParseList(const std::string& field, const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    T value;
    if (!CLI::detail::lexical_cast(item, value)) {
      throw UsageError(field, "cannot parse '" + item + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw UsageError(field, "empty list");
  return out;
}

// Flags shared by every subcommand.
struct Common {
  std::string config;
  std::uint64_t seed = kDefaultSeed;
  std::string output;
  std::string format;
  int workers = ledp::DefaultWorkers();
};

void AddCommon(CLI::App* sub, Common* c) {
  sub->add_option("--config", c->config, "JSON config file");
  sub->add_option("--seed", c->seed, "master seed")->capture_default_str();
  sub->add_option("--output", c->output, "report path (stdout if omitted)");
  sub->add_option("--format", c->format, "json or csv");
  sub->add_option("--workers", c->workers,
                  "worker threads (default $LEDP_WORKERS or 1)")
      ->check(CLI::PositiveNumber);
}

// Provenance block embedded in every report.
ordered_json Provenance(const std::string& subcommand, const Common& c,
                        ordered_json config) {
  ordered_json j;
  j["tool"] = "ledp_lab";
  j["version"] = LEDP_VERSION;
  j["subcommand"] = subcommand;
  j["seed"] = c.seed;
  j["config"] = std::move(config);
  return j;
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void Summary(const Common& c, const std::string& line) {
  (c.output.empty() || c.output == "-" ? std::cerr : std::cout) << line
                                                                 << "\n";
}

std::string ResolveFormat(const Common& c, bool tabular) {
  const std::string f = c.format.empty() ? (tabular ? "csv" : "json")
                                         : c.format;
  if (f != "json" && f != "csv") throw UsageError("format", "json or csv");
  if (f == "csv" && !tabular) {
    throw UsageError("format", "this subcommand only writes json");
  }
  return f;
}

// Tables go out as CSV with a provenance sidecar, or as one JSON document.
void EmitTable(const std::string& subcommand, const Common& c,
               const ordered_json& config, const ledp::CsvTable& table,
               const ordered_json& rows) {
  ordered_json prov = Provenance(subcommand, c, config);
  if (ResolveFormat(c, true) == "csv") {
    WriteText(c.output, table.ToString());
    if (!c.output.empty() && c.output != "-") {
      prov["columns"] = table.header();
      WriteText(c.output + ".meta.json", prov.dump(2) + "\n");
    }
  } else {
    prov["rows"] = rows;
    WriteText(c.output, prov.dump(2) + "\n");
  }
}

std::string Fmt(double x) { return ledp::FormatDouble(x); }

// ---------------------------------------------------------------------------

struct EstimateArgs {
  std::string graph, family = "er", transcript;
  std::size_t n = 12;
  double eps = 1.0;
  std::size_t trials = 1;
};

int RunEstimate(const EstimateArgs& a, const Common& c) {
  ResolveFormat(c, false);
  if (a.trials == 0) throw UsageError("trials", "must be >= 1");
  const ledp::StreamKey key(c.seed);
  const ledp::Graph g =
      a.graph.empty() ? ledp::MakeFamilyGraph(a.family, a.n, key)
                      : ledp::LoadGraph(a.graph);
  ledp::CheckEstimatorEpsilon(a.eps);
  const std::vector<double> est =
      ledp::RepeatEstimates(g, a.eps, a.trials, key, c.workers);
  const auto t_exact = ledp::CountTrianglesFast(g);

  ordered_json config = {{"graph", a.graph}, {"n", g.n()}, {"eps", a.eps},
                         {"trials", a.trials}};
  if (a.graph.empty()) config["family"] = a.family;
  ordered_json j = Provenance("estimate", c, config);
  ordered_json r;
  r["n"] = g.n();
  r["epsilon"] = a.eps;
  r["t_exact"] = t_exact;
  r["t_hat"] = est.front();
  r["mean"] = ledp::Mean(est);
  r["abs_error_of_mean"] = std::abs(ledp::Mean(est) - double(t_exact));
  if (est.size() >= 2) {
    r["var_empirical"] = ledp::SampleVariance(est);
    r["standard_error"] = ledp::StandardError(est);
  }
  r["var_oracle"] = ledp::ExactVarianceOracle(g, a.eps);
  j["result"] = r;
  WriteText(c.output, j.dump(2) + "\n");
  if (!a.transcript.empty()) {
    // Trial 0 again, with its transcript.
    const ledp::TriangleRun run = ledp::EstimateTriangles(
        g, a.eps, key.Child(ledp::kTagTrial, 0));
    WriteText(a.transcript, run.transcript.ToJson().dump(2) + "\n");
  }
  Summary(c, "estimate: n=" + std::to_string(g.n()) + " eps=" + Fmt(a.eps) +
                 " trials=" + std::to_string(a.trials) +
                 " t_exact=" + std::to_string(t_exact) +
                 " mean=" + Fmt(ledp::Mean(est)));
  return 0;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string n = "8,12", eps = "0.5,1,2", family = "empty,complete,cycle,star,er";
  std::size_t trials = 1000;
};

int RunSweep(const SweepArgs& a, const Common& c) {
  ResolveFormat(c, true);
  const auto ns = ParseList<std::size_t>("n", a.n);
  const auto eps = ParseList<double>("eps", a.eps);
  const auto fams = ParseList<std::string>("family", a.family);
  if (a.trials < 1000) throw UsageError("trials", "must be >= 1000");
  for (std::size_t n : ns) {
    if (n < 3) throw UsageError("n", "must be >= 3");
  }
  for (const auto& f : fams) ledp::MakeFamilyGraph(f, 3, ledp::StreamKey(0));
  const auto rows = ledp::VarianceSweep(ns, eps, fams, a.trials,
                                        ledp::StreamKey(c.seed), c.workers);
  ordered_json jr = ordered_json::array();
  double worst = 0.0;
  for (const auto& r : rows) {
    jr.push_back({{"n", r.n}, {"epsilon", r.epsilon}, {"family", r.family},
                  {"trials", r.trials}, {"t_exact", r.t_exact}, {"c4", r.c4},
                  {"var_empirical", r.var_empirical},
                  {"var_oracle", r.var_oracle}, {"ratio", r.ratio},
                  {"seed", r.seed}});
    worst = std::max(worst, std::abs(r.ratio - 1.0));
  }
  EmitTable("variance-sweep", c,
            {{"n", a.n}, {"eps", a.eps}, {"family", a.family},
             {"trials", a.trials}},
            ledp::VarianceSweepCsv(rows), jr);
  Summary(c, "variance-sweep: cells=" + std::to_string(rows.size()) +
                 " max|ratio-1|=" + Fmt(worst));
  return 0;
}

// ---------------------------------------------------------------------------

struct AttackArgs {
  std::size_t n = 8;
  double gamma = ledp::kDefaultGamma;
  std::size_t k = 0;  // 0 = default
  double eps = 1.0;
  std::string mechanism = "rr", search = "hillclimb";
  std::size_t budget = 8;
  std::size_t trials = 1;
};

int RunAttackCmd(const AttackArgs& a, const Common& c) {
  ResolveFormat(c, false);
  ledp::AttackConfig cfg;
  cfg.n = a.n;
  cfg.gamma = a.gamma;
  if (a.k > 0) cfg.k = a.k;
  cfg.epsilon = a.eps;
  try {
    cfg.mechanism = ledp::ParseMechanism(a.mechanism);
    cfg.search = ledp::ParseSearch(a.search);
  } catch (const std::invalid_argument& e) {
    throw UsageError(a.mechanism != "rr" && a.mechanism != "identity" &&
                             a.mechanism != "oracle"
                         ? "mechanism"
                         : "search",
                     e.what());
  }
  cfg.budget = a.budget;
  cfg.workers = c.workers;
  cfg.Validate();
  const ordered_json config = {
      {"n", a.n},           {"gamma", a.gamma},   {"k", cfg.QueryCount()},
      {"eps", a.eps},       {"mechanism", a.mechanism},
      {"search", a.search}, {"budget", a.budget}, {"trials", a.trials}};
  ordered_json j = Provenance("attack", c, config);
  const ledp::StreamKey key(c.seed);
  if (a.trials <= 1) {
    const ledp::AttackReport r = ledp::RunAttack(cfg, key);
    j["result"] = ledp::AttackReportJson(r);
    WriteText(c.output, j.dump(2) + "\n");
    Summary(c, std::string("attack: mechanism=") + a.mechanism +
                   " k=" + std::to_string(r.k) +
                   " feasible=" + (r.y_star ? "true" : "false") +
                   " hamming=" + std::to_string(r.best_hamming) +
                   " success=" + (r.success ? "true" : "false"));
    return r.y_star ? 0 : kExitAttackFailed;
  }
  if (a.trials < ledp::kMinDiagnosticTrials) {
    throw UsageError("trials", "1, or >= 20 for the privacy diagnostic");
  }
  const ledp::PrivacyDistanceReport d =
      ledp::PrivacyDistanceDiagnostic(cfg, a.trials, key);
  ordered_json r;
  r["trials"] = d.trials;
  r["hammings"] = d.hammings;
  r["mean_hamming"] = d.mean_hamming;
  r["standard_error"] = d.standard_error;
  r["successes"] = d.successes;
  r["ledger"] = {{"epsilon_total", ledp::EpsilonToJson(d.charge.epsilon)},
                 {"delta_total", d.charge.delta}};
  r["bound_applies"] = d.bound_applies;
  r["bound"] = d.bound_applies ? ordered_json(d.bound) : ordered_json(nullptr);
  r["respects_bound"] = d.respects_bound;
  j["result"] = r;
  WriteText(c.output, j.dump(2) + "\n");
  Summary(c, std::string("attack diagnostic: mechanism=") + a.mechanism +
                 " trials=" + std::to_string(d.trials) +
                 " mean_hamming=" + Fmt(d.mean_hamming) +
                 " bound=" + (d.bound_applies ? Fmt(d.bound) : "n/a"));
  return 0;
}

// ---------------------------------------------------------------------------

struct AntiArgs {
  std::string n = "2,3,4,5,6", gamma = "0.1111111111111111,0.25,1";
  std::size_t instances = 20, samples = 20000;
};

int RunAnti(const AntiArgs& a, const Common& c) {
  ResolveFormat(c, true);
  const auto ns = ParseList<std::size_t>("n", a.n);
  const auto gammas = ParseList<double>("gamma", a.gamma);
  for (double g : gammas) {
    if (!(g > 0.0 && g <= 1.0)) throw UsageError("gamma", "must lie in (0, 1]");
  }
  for (std::size_t n : ns) {
    if (n == 0) throw UsageError("n", "must be >= 1");
  }
  if (a.samples < 1000) throw UsageError("samples", "must be >= 1000");
  const auto rows = ledp::AnticoncentrationStudy(
      ns, gammas, a.instances, a.samples, ledp::StreamKey(c.seed), c.workers);
  ordered_json jr = ordered_json::array();
  std::size_t violations = 0;
  for (const auto& r : rows) {
    jr.push_back({{"n", r.n}, {"m", r.m}, {"gamma", r.gamma},
                  {"threshold", r.threshold}, {"tail", r.tail},
                  {"exact", r.exact}, {"lemma_bound", r.lemma_bound},
                  {"fourth_moment", r.fourth_moment},
                  {"fourth_bound", r.fourth_bound}});
    violations += r.exact && (r.tail < r.lemma_bound ||
                              r.fourth_moment > r.fourth_bound);
  }
  EmitTable("anticoncentration", c,
            {{"n", a.n}, {"gamma", a.gamma}, {"instances", a.instances},
             {"samples", a.samples}},
            ledp::AnticoncentrationCsv(rows), jr);
  Summary(c, "anticoncentration: rows=" + std::to_string(rows.size()) +
                 " exact_violations=" + std::to_string(violations));
  return 0;
}

// ---------------------------------------------------------------------------

struct GadgetArgs {
  std::string bits;
  bool exact = false;
  double eps = 1.0;
  std::size_t trials = 1000;
};

int RunGadget(const GadgetArgs& a, const Common& c) {
  ResolveFormat(c, false);
  if (a.bits.empty()) throw UsageError("bits", "required, e.g. 101");
  ledp::BitVector x(a.bits.size());
  for (std::size_t i = 0; i < a.bits.size(); ++i) {
    if (a.bits[i] != '0' && a.bits[i] != '1') {
      throw UsageError("bits", "only 0 and 1 allowed");
    }
    x.Set(i, a.bits[i] == '1');
  }
  const std::size_t n = x.size();
  const auto gadget = ledp::BuildSumGadget(x);
  const std::uint64_t t = ledp::CountTrianglesFast(gadget.graph);
  const std::size_t s = x.Count();
  ordered_json config = {{"bits", a.bits}, {"exact", a.exact}};
  if (!a.exact) {
    config["eps"] = a.eps;
    config["trials"] = a.trials;
  }
  ordered_json j = Provenance("gadget", c, config);
  ordered_json r;
  r["n"] = n;
  r["vertices"] = gadget.graph.n();
  r["S"] = s;
  r["T"] = t;
  r["T_equals_S_times_n"] = t == s * n;
  std::string line = "gadget: n=" + std::to_string(n) +
                     " S=" + std::to_string(s) + " T=" + std::to_string(t);
  if (!a.exact) {
    ledp::CheckEstimatorEpsilon(a.eps);
    if (a.trials == 0) throw UsageError("trials", "must be >= 1");
    const ledp::StreamKey key(c.seed);
    std::vector<double> via(a.trials), base(a.trials);
    ledp::ParallelFor(a.trials, c.workers, [&](std::size_t i) {
      via[i] = ledp::EndToEndSumViaTriangles(
          x, a.eps, key.Child(ledp::kTagSample, i));
      ledp::Stream rng = key.Child(ledp::kTagTrial, i).Open();
      base[i] = ledp::LdpSumBaseline(x, a.eps, rng);
    });
    r["epsilon"] = a.eps;
    r["trials"] = a.trials;
    r["mean_via_triangles"] = ledp::Mean(via);
    r["mean_baseline"] = ledp::Mean(base);
    line += " mean_via_triangles=" + Fmt(ledp::Mean(via)) +
            " mean_baseline=" + Fmt(ledp::Mean(base));
  }
  j["result"] = r;
  WriteText(c.output, j.dump(2) + "\n");
  Summary(c, line);
  return 0;
}

// ---------------------------------------------------------------------------

struct ScalingArgs {
  std::string n = "64,256,1024,4096";
  double eps = 1.0;
  std::size_t trials = 10000;
  std::size_t via_cap = ledp::kDefaultViaTrianglesCap;
};

int RunScaling(const ScalingArgs& a, const Common& c) {
  ResolveFormat(c, true);
  const auto ns = ParseList<std::size_t>("n", a.n);
  for (std::size_t n : ns) {
    if (n == 0) throw UsageError("n", "must be >= 1");
  }
  if (a.trials == 0) throw UsageError("trials", "must be >= 1");
  const auto rows = ledp::SumScaling(ns, a.eps, a.trials,
                                     ledp::StreamKey(c.seed), c.workers,
                                     a.via_cap);
  ordered_json jr = ordered_json::array();
  for (const auto& r : rows) {
    jr.push_back(
        {{"n", r.n}, {"epsilon", r.epsilon}, {"trials", r.trials},
         {"mean_abs_error_baseline", r.mean_abs_error_baseline},
         {"mean_abs_error_via_triangles",
          std::isnan(r.mean_abs_error_via_triangles)
              ? ordered_json(nullptr)
              : ordered_json(r.mean_abs_error_via_triangles)},
         {"fitted_exponent", r.fitted_exponent}});
  }
  EmitTable("sum-scaling", c,
            {{"n", a.n}, {"eps", a.eps}, {"trials", a.trials},
             {"via-cap", a.via_cap}},
            ledp::SumScalingCsv(rows), jr);
  Summary(c, "sum-scaling: rows=" + std::to_string(rows.size()) +
                 " fitted_exponent=" +
                 Fmt(rows.empty() ? NAN : rows.front().fitted_exponent));
  return 0;
}

// ---------------------------------------------------------------------------
// Selftest: a fast battery of exact invariants.

struct Check {
  std::string name;
  std::function<bool(const ledp::StreamKey&)> run;
};

std::vector<Check> SelftestChecks() {
  using namespace ledp;
  return {
      {"philox_known_answer",
       [](const StreamKey&) {
         return Philox4x32::Generate({0, 0, 0, 0}, {0, 0}) ==
                Philox4x32::Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c,
                                  0x9b00dbd8};
       }},
      {"triangles_fast_equals_exact",
       [](const StreamKey& key) {
         for (int r = 0; r < 40; ++r) {
           const Graph g = ErdosRenyi(3 + r, 0.4, key.Child(r));
           if (CountTrianglesFast(g) != CountTrianglesExact(g)) return false;
         }
         return true;
       }},
      {"named_graph_counts",
       [](const StreamKey&) {
         return CountTrianglesExact(CompleteGraph(5)) == 10 &&
                CountC4Exact(CompleteGraph(4)) == 3 &&
                CountC4Exact(CompleteBipartiteGraph(3, 3)) == 9;
       }},
      {"variance_oracle_equals_enumeration",
       [](const StreamKey& key) {
         for (int r = 0; r < 10; ++r) {
           const Graph g = ErdosRenyi(3 + r % 4, 0.5, key.Child(r));
           const double o = ExactVarianceOracle(g, 1.0);
           const double e = EnumerateEstimatorMoments(g, 1.0).variance;
           if (std::abs(o - e) > 1e-9 * o) return false;
         }
         return true;
       }},
      {"expectation_oracle_routes_agree",
       [](const StreamKey&) {
         return ExactExpectationOracle(CompleteGraph(4), 0.7).by_linearity ==
                4.0;
       }},
      {"query_graph_identity",
       [](const StreamKey& key) {
         Stream rng = key.Open();
         for (int r = 0; r < 50; ++r) {
           const std::size_t n = 2 + r % 5;
           const BitDataset x = BitDataset::Random(n, rng);
           SubmatrixQuery q{BitVector(n), BitVector(n)};
           for (std::size_t i = 0; i < n; ++i) {
             q.q1.Set(i, rng() >> 63);
             q.q2.Set(i, rng() >> 63);
           }
           if (CountTrianglesExact(BuildQueryGraph(x, q)) !=
               n * static_cast<std::uint64_t>(SubmatrixAnswer(x, q))) {
             return false;
           }
         }
         return true;
       }},
      {"outer_product_decomposition",
       [](const StreamKey& key) {
         Stream rng = key.Open();
         for (int r = 0; r < 100; ++r) {
           const std::size_t n = 1 + r % 10;
           const BitDataset x = BitDataset::Random(n, rng);
           OuterProductQuery q{std::vector<std::int8_t>(n),
                               std::vector<std::int8_t>(n)};
           for (auto& s : q.a) s = static_cast<std::int8_t>(rng.Sign());
           for (auto& s : q.b) s = static_cast<std::int8_t>(rng.Sign());
           const auto split = SplitOuterProduct(q);
           const std::int64_t combined = OuterProductSplit::Combine(
               SubmatrixAnswer(x, split.queries[0]),
               SubmatrixAnswer(x, split.queries[1]),
               SubmatrixAnswer(x, split.queries[2]));
           if (combined != OuterProductAnswer(x, q)) return false;
         }
         return true;
       }},
      {"anticoncentration_moments",
       [](const StreamKey& key) {
         Stream rng = key.Open();
         for (int r = 0; r < 40; ++r) {
           const std::size_t n = 1 + r % 5;
           const DiffMatrix m = DiffMatrix::Random(n, rng.Below(n * n + 1), rng);
           const ExactMoments mo = MomentsExhaustive(m);
           const auto n4 = static_cast<std::int64_t>(n * n * n * n);
           const auto pairs = static_cast<std::int64_t>(mo.pairs);
           if (mo.sum1 != 0 ||
               mo.sum2 != static_cast<std::int64_t>(m.m()) * pairs ||
               mo.sum4 > 9 * n4 * pairs) {
             return false;
           }
         }
         return true;
       }},
      {"gadget_identity",
       [](const StreamKey&) {
         for (std::size_t n = 1; n <= 6; ++n) {
           for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
             BitVector x(n);
             for (std::size_t i = 0; i < n; ++i) x.Set(i, (mask >> i) & 1u);
             if (CountTrianglesExact(BuildSumGadget(x).graph) !=
                 x.Count() * n) {
               return false;
             }
           }
         }
         return true;
       }},
      {"identity_graybox_exact",
       [](const StreamKey& key) {
         Stream rng = key.Open();
         const BitDataset x = BitDataset::Random(4, rng);
         const auto state = GrayBoxPrepare(x, IdentityFamily(), key.Child(1));
         const QuerySet qs = SampleQueries(4, 50, key.Child(2));
         for (std::size_t l = 0; l < qs.k; ++l) {
           if (GrayBoxAnswerOuter(state, qs.Query(l), ExactCountPostprocessor(),
                                  key.Child(3, l)) !=
               static_cast<double>(OuterProductAnswer(x, qs.Query(l)))) {
             return false;
           }
         }
         return state.transcript().InvocationCount() == 16;
       }},
      {"exhaustive_attack_recovers_secret",
       [](const StreamKey& key) {
         AttackConfig cfg;
         cfg.n = 3;
         cfg.k = 500;
         cfg.mechanism = Mechanism::kOracle;
         cfg.search = SearchStrategy::kExhaustive;
         const AttackReport r = RunAttack(cfg, key);
         return r.hamming && *r.hamming == 0;
       }},
  };
}

int RunSelftest(const Common& c) {
  ResolveFormat(c, false);
  ordered_json j = Provenance("selftest", c, ordered_json::object());
  ordered_json checks = ordered_json::array();
  std::size_t passed = 0, total = 0;
  const ledp::StreamKey key(c.seed);
  for (const Check& check : SelftestChecks()) {
    bool ok = false;
    try {
      ok = check.run(key.Child(total));
    } catch (const std::exception&) {
      ok = false;
    }
    checks.push_back({{"name", check.name}, {"passed", ok}});
    passed += ok;
    ++total;
  }
  j["checks"] = checks;
  j["passed"] = passed;
  j["total"] = total;
  WriteText(c.output, j.dump(2) + "\n");
  Summary(c, "selftest: " + std::to_string(passed) + "/" +
                 std::to_string(total) + " checks passed");
  return passed == total ? 0 : kExitRuntime;
}

// ---------------------------------------------------------------------------
// Config files: {"key": value} becomes "--key value" ahead of the real flags.

std::vector<std::string> ConfigArgs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config", "cannot open " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw UsageError("config", e.what());
  }
  if (!j.is_object()) throw UsageError("config", "must be a JSON object");
  std::vector<std::string> out;
  for (const auto& [key, value] : j.items()) {
    if (key == "config") throw UsageError("config", "nested config");
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back("--" + key);
      continue;
    }
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_array()) {
      for (const auto& item : value) {
        if (!text.empty()) text += ",";
        text += item.is_string() ? item.get<std::string>() : item.dump();
      }
    } else if (value.is_number() || value.is_null()) {
      text = value.dump();
    } else {
      throw UsageError(key, "unsupported config value");
    }
    out.push_back("--" + key);
    out.push_back(text);
  }
  return out;
}

std::vector<std::string> ExpandConfig(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::optional<std::string> config;
  for (std::size_t i = 2; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    }
  }
  if (!config || args.size() < 2) return args;
  std::vector<std::string> out(args.begin(), args.begin() + 2);
  for (auto& a : ConfigArgs(*config)) out.push_back(std::move(a));
  out.insert(out.end(), args.begin() + 2, args.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local edge-DP laboratory: estimators, attacks and bounds"};
  app.set_version_flag("--version", LEDP_VERSION);
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Common common;

  EstimateArgs est;
  auto* c_est = app.add_subcommand("estimate", "randomized-response triangle estimate");
  AddCommon(c_est, &common);
  c_est->add_option("--graph", est.graph, "graph file (overrides --family)");
  c_est->add_option("--family", est.family, "empty|complete|cycle|star|er");
  c_est->add_option("--n", est.n, "vertices for --family");
  c_est->add_option("--eps", est.eps, "privacy parameter");
  c_est->add_option("--trials", est.trials, "independent runs");
  c_est->add_option("--transcript", est.transcript, "dump trial 0 transcript");

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("variance-sweep", "empirical vs exact variance");
  AddCommon(c_sweep, &common);
  c_sweep->add_option("--n", sweep.n, "comma-separated sizes");
  c_sweep->add_option("--eps", sweep.eps, "comma-separated epsilons");
  c_sweep->add_option("--family", sweep.family, "comma-separated families");
  c_sweep->add_option("--trials", sweep.trials, "trials per cell (>= 1000)");

  AttackArgs atk;
  auto* c_atk = app.add_subcommand("attack", "reconstruction attack");
  AddCommon(c_atk, &common);
  c_atk->add_option("--n", atk.n, "secret side length");
  c_atk->add_option("--gamma", atk.gamma, "accuracy parameter in (0, 1/2)");
  c_atk->add_option("--k", atk.k, "queries (default ceil(128 n^2 / gamma^2))");
  c_atk->add_option("--eps", atk.eps, "randomized-response epsilon");
  c_atk->add_option("--mechanism", atk.mechanism, "rr|identity|oracle");
  c_atk->add_option("--search", atk.search, "exhaustive|hillclimb");
  c_atk->add_option("--budget", atk.budget, "hill-climb restarts");
  c_atk->add_option("--trials", atk.trials,
                    "1 for one attack, >= 20 for the privacy diagnostic");

  AntiArgs anti;
  auto* c_anti = app.add_subcommand("anticoncentration", "tail of A^T M B");
  AddCommon(c_anti, &common);
  c_anti->add_option("--n", anti.n, "comma-separated sizes");
  c_anti->add_option("--gamma", anti.gamma, "comma-separated gammas");
  c_anti->add_option("--instances", anti.instances, "matrices per cell");
  c_anti->add_option("--samples", anti.samples, "Monte Carlo samples (n > 7)");

  GadgetArgs gad;
  auto* c_gad = app.add_subcommand("gadget", "sum-to-triangles gadget");
  AddCommon(c_gad, &common);
  c_gad->add_option("--bits", gad.bits, "input bits, e.g. 101");
  c_gad->add_flag("--exact", gad.exact, "exact counts only");
  c_gad->add_option("--eps", gad.eps, "privacy parameter");
  c_gad->add_option("--trials", gad.trials, "noisy runs");

  ScalingArgs sc;
  auto* c_sc = app.add_subcommand("sum-scaling", "sum error vs n");
  AddCommon(c_sc, &common);
  c_sc->add_option("--n", sc.n, "comma-separated sizes");
  c_sc->add_option("--eps", sc.eps, "privacy parameter");
  c_sc->add_option("--trials", sc.trials, "trials per size");
  c_sc->add_option("--via-cap", sc.via_cap,
                   "largest n run through the triangle route");

  auto* c_self = app.add_subcommand("selftest", "invariant battery");
  AddCommon(c_self, &common);

  std::vector<std::string> args;
  try {
    args = ExpandConfig(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::vector<char*> cargs;
  for (auto& a : args) cargs.push_back(a.data());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*c_est) return RunEstimate(est, common);
    if (*c_sweep) return RunSweep(sweep, common);
    if (*c_atk) return RunAttackCmd(atk, common);
    if (*c_anti) return RunAnti(anti, common);
    if (*c_gad) return RunGadget(gad, common);
    if (*c_sc) return RunScaling(sc, common);
    if (*c_self) return RunSelftest(common);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
