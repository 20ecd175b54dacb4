// Copyright 2026 The Pazz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite. Prints one PASS/FAIL line per criterion; exit status is
// non-zero when any selected criterion fails.
//
//   acceptance_test                 run everything
//   acceptance_test --criterion 3   run one

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "pazz/pazz.hpp"
#include "toy_networks.hpp"

namespace pazz {
namespace {

using testing::BruteForceReachable;
using testing::RandomToyNetwork;
using testing::RandomToyRule;

constexpr TopologyKind kTopologies[] = {TopologyKind::kGrid4, TopologyKind::kGrid9,
                                        TopologyKind::kGrid16, TopologyKind::kFatTree4};
constexpr std::uint64_t kSeeds = 10;

struct CriterionResult {
  bool pass = true;
  std::vector<std::string> lines;

  void Check(bool ok, std::string line) {
    pass &= ok;
    lines.push_back(fmt::format("  {} {}", ok ? "ok  " : "FAIL", line));
  }
};

double Seconds(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

ExperimentConfig Default(TopologyKind topo, std::uint64_t seed, bool baseline = false) {
  ExperimentConfig c;
  c.topology = topo;
  c.seed = seed;
  c.baseline = baseline;
  return c;
}

// 1. Reachability equals exhaustive simulation on random toy networks.
CriterionResult OracleEquivalence() {
  CriterionResult o;
  std::mt19937_64 rng(20260101);
  int equal = 0, nonempty = 0;
  for (int i = 0; i < 50; ++i) {
    const auto n = RandomToyNetwork(rng, 3 + i % 3);
    const auto g = ReachabilityGraph::Build(n.topo, n.config);
    const HeaderSet got = g.Reachable(n.src, n.dst);
    const HeaderSet want = BruteForceReachable(n.topo, n.config, n.src, n.dst);
    equal += got == want;
    nonempty += !want.IsEmpty();
    if (got != want) {
      o.Check(false, fmt::format("config {}: cpc {} vs simulated {}", i, got.ToString(),
                                 want.ToString()));
    }
  }
  o.Check(equal == 50, fmt::format("{}/50 configs exact ({} with non-empty reachability)",
                                   equal, nonempty));
  return o;
}

// 2. Incremental updates equal a rebuild after every operation.
CriterionResult IncrementalEquivalence() {
  CriterionResult o;
  std::mt19937_64 rng(77);
  const int kNets = 3, kOps = 100;
  int equal = 0, adds = 0, deletes = 0;
  for (int net = 0; net < kNets; ++net) {
    auto n = RandomToyNetwork(rng, 3 + net);
    Config truth = n.config;
    auto g = std::make_unique<ReachabilityGraph>(ReachabilityGraph::Build(n.topo, truth));
    for (int op = 0; op < kOps; ++op) {
      (void)g->Reachable(n.src, n.dst);
      RuleUpdate u;
      if (truth.size() > 2 && rng() % 2 == 0) {
        auto it = truth.rules().begin();
        std::advance(it, static_cast<long>(rng() % truth.size()));
        const RuleKey k = it->first;
        u = RuleUpdate::Delete(k);
        truth.Remove(k);
        ++deletes;
      } else {
        const SwitchId sw = rng() % n.topo.switches().size();
        const std::uint32_t prio = rng() % 2 ? truth.MaxPriority(sw) + 1
                                             : 1 + static_cast<std::uint32_t>(rng() % 100);
        FlowRule r = RandomToyRule(rng, n.topo, sw, 0, prio, n.dst.sw);
        r.id = truth.NextRuleId(sw, r.table);
        u = RuleUpdate::Add(r);
        truth.Add(r);
        ++adds;
      }
      g = std::make_unique<ReachabilityGraph>(g->WithUpdate(u));
      const auto fresh = ReachabilityGraph::Build(n.topo, truth);
      const bool same = g->Canonical() == fresh.Canonical() &&
                        g->Reachable(n.src, n.dst) == fresh.Reachable(n.src, n.dst) &&
                        g->CorpusFor(n.src, n.dst) == fresh.CorpusFor(n.src, n.dst);
      equal += same;
      if (!same) o.Check(false, fmt::format("network {} diverged at op {}", net, op));
    }
  }
  o.Check(equal == kNets * kOps, fmt::format("{}/{} steps equal to rebuild ({} adds, {} deletes)",
                                             equal, kNets * kOps, adds, deletes));
  return o;
}

std::map<TopologyKind, std::vector<MetricsRecord>> RunAll(bool baseline) {
  std::map<TopologyKind, std::vector<MetricsRecord>> out;
  for (TopologyKind t : kTopologies) {
    for (std::uint64_t s = 1; s <= kSeeds; ++s) {
      out[t].push_back(Run(Default(t, s, baseline)).metrics);
    }
  }
  return out;
}

std::optional<double> MedianTime(const MetricsRecord& m, bool type_p) {
  std::vector<double> v;
  for (const auto& f : m.faults) {
    if (IsTypeP(f.kind) == type_p && f.detected) v.push_back(f.detect_time);
  }
  if (v.empty()) return std::nullopt;
  return Median(v);
}

// 3. Every fault detected; Type-p faster than Type-a in most seeds.
CriterionResult DetectionCompleteness() {
  CriterionResult o;
  const auto runs = RunAll(false);
  for (const auto& [topo, records] : runs) {
    std::size_t faults = 0, detected = 0;
    int faster = 0;
    for (const auto& m : records) {
      for (const auto& f : m.faults) {
        ++faults;
        detected += f.detected;
      }
      const auto p = MedianTime(m, true), a = MedianTime(m, false);
      faster += p && a && *p < *a;
    }
    o.Check(detected == faults && faults == kSeeds * 30,
            fmt::format("{}: {}/{} faults detected", TopologyKindName(topo), detected, faults));
    o.Check(faster >= 9, fmt::format("{}: Type-p median < Type-a median in {}/{} seeds",
                                     TopologyKindName(topo), faster, kSeeds));
  }
  return o;
}

// 4. Path-changing Type-p faults are localized to the injected switch.
CriterionResult LocalizationCorrectness() {
  CriterionResult o;
  const auto runs = RunAll(false);
  std::size_t eligible = 0, correct = 0, excluded = 0;
  for (const auto& [topo, records] : runs) {
    for (const auto& m : records) {
      for (const auto& f : m.faults) {
        if (!IsTypeP(f.kind) || !f.changes_path || f.fault_reports == 0) continue;
        if (f.collision) {
          ++excluded;
          continue;
        }
        ++eligible;
        correct += f.localized_correct;
        if (!f.localized_correct) {
          o.Check(false, fmt::format("{} seed {} fault {} at s{} localized as '{}'",
                                     TopologyKindName(topo), m.seed, f.id, f.sw,
                                     f.localization));
        }
      }
    }
  }
  o.Check(eligible > 0 && correct == eligible,
          fmt::format("{}/{} path-changing Type-p faults localized correctly, "
                      "{} excluded for a logged collision",
                      correct, eligible, excluded));
  return o;
}

// 5. Monte Carlo false-positive rate of the port filter against the formula.
CriterionResult BloomBound() {
  CriterionResult o;
  std::mt19937_64 rng(5);
  const int kTrials = 100000;
  for (int n = 2; n <= 6; ++n) {
    int fp = 0;
    for (int t = 0; t < kTrials; ++t) {
      std::uint32_t filter = 0;
      std::vector<std::uint32_t> members;
      for (int i = 0; i < n; ++i) {
        const std::uint32_t d = HashUp(rng() % 4096, 1 + rng() % 64);
        members.push_back(d);
        filter = BloomAdd(filter, d);
      }
      std::uint32_t probe;
      do {
        probe = HashUp(rng() % 4096, 1 + rng() % 64);
      } while (std::find(members.begin(), members.end(), probe) != members.end());
      fp += BloomContains(filter, probe);
    }
    const double rate = static_cast<double>(fp) / kTrials;
    const double bound = std::pow(0.6185, 32.0 / n);
    const double three_hash = std::pow(1 - std::exp(-3.0 * n / 32), 3);
    o.Check(rate <= 2 * bound,
            fmt::format("n={}: FP rate {:.5f}, limit 2x{:.5f} = {:.5f} "
                        "(3-hash estimate {:.5f})",
                        n, rate, bound, 2 * bound, three_hash));
  }
  return o;
}

// 6. Sweep-first probing beats uniform probing on Type-a faults.
CriterionResult Speedup() {
  CriterionResult o;
  const auto pazz = RunAll(false);
  const auto base = RunAll(true);
  for (TopologyKind t : kTopologies) {
    const auto ratio = TypeAProbeSpeedup(pazz.at(t), base.at(t));
    std::size_t censored = 0;
    for (const auto& m : base.at(t)) {
      for (const auto& f : m.faults) censored += f.kind == FaultKind::kTypeAHidden && !f.detected;
    }
    o.Check(ratio && *ratio >= 1.5,
            fmt::format("{}: median Type-a probe speedup {}{:.1f}x ({} baseline faults censored)",
                        TopologyKindName(t), censored ? ">= " : "", ratio.value_or(0), censored));
  }
  return o;
}

// 7. Tagging never changes forwarding.
CriterionResult TaggingNonInterference() {
  CriterionResult o;
  DataPlaneOptions off;
  off.tagging.enabled = false;
  std::size_t total = 0, equal = 0, delivered = 0;
  for (TopologyKind t : kTopologies) {
    const auto net = Generate(t);
    const auto graph = ReachabilityGraph::Build(net.topology, net.config);
    FaultPlanner planner(net, graph, 3);
    planner.Plan(30, 35, 65);  // exercise the fault rules too
    const DataPlane on_dp(net.topology, planner.config());
    const DataPlane off_dp(net.topology, planner.config(), off);
    const Corpus corpus = graph.CorpusFor(net.layout.pair.src, net.layout.pair.dst);
    Fuzzer fuzzer(corpus.entry, corpus.exit, {});
    const IndexedHeaderSet prod(corpus.entry);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 2500; ++i) {
      const Header h = i % 2 ? prod.Sample(rng) : *fuzzer.Next();
      const auto a = on_dp.Trace(net.layout.pair.src, h);
      const auto b = off_dp.Trace(net.layout.pair.src, h);
      bool same = a.all_traces.size() == b.all_traces.size();
      for (std::size_t k = 0; same && k < a.all_traces.size(); ++k) {
        same = a.all_traces[k].size() == b.all_traces[k].size();
        for (std::size_t j = 0; same && j < a.all_traces[k].size(); ++j) {
          same = a.all_traces[k][j].sw == b.all_traces[k][j].sw &&
                 a.all_traces[k][j].rule == b.all_traces[k][j].rule;
        }
      }
      ++total;
      equal += same;
      delivered += a.delivered.size();
    }
  }
  o.Check(total >= 10000 && equal == total,
          fmt::format("{}/{} packets with identical (switch, rule) hops, {} deliveries",
                      equal, total, delivered));
  return o;
}

// 8. Build and replan times at paper scale.
CriterionResult Performance() {
  CriterionResult o;
  GeneratorOptions gen;
  gen.rules_scale = 1.0;
  const auto net = Generate(TopologyKind::kGrid16, gen);
  const auto graph = ReachabilityGraph::Build(net.topology, net.config);
  o.Check(graph.build_seconds() <= 5.0,
          fmt::format("grid16 with {} rules: build {:.3f} s (limit 5 s)", net.config.size(),
                      graph.build_seconds()));
  const Corpus c = graph.CorpusFor(net.layout.pair.src, net.layout.pair.dst);
  Fuzzer fuzzer(c.entry, c.exit, {});
  // replan against a corpus with a hole punched in the middle of S_i
  const Header mid = c.entry.Nth(c.entry.Cardinality() / 2);
  const HeaderSet shrunk = c.entry.Difference(HeaderSet::FromPrefix(mid, 24));
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    fuzzer.RebuildOnCorpus(i % 2 ? c.entry : shrunk, c.exit);
    worst = std::max(worst, fuzzer.last_replan_seconds());
  }
  o.Check(worst <= 0.050, fmt::format("fuzzer replan worst of 10: {:.3f} ms (limit 50 ms), "
                                      "{} entry intervals",
                                      worst * 1e3, c.entry.intervals().size()));
  const auto t0 = std::chrono::steady_clock::now();
  (void)graph.WithUpdate(RuleUpdate::Delete(net.config.rules().begin()->first));
  o.Check(true, fmt::format("single-rule incremental update {:.3f} s", Seconds(t0)));
  return o;
}

// 9. No fault verdicts on un-mutated networks.
CriterionResult Soundness() {
  CriterionResult o;
  std::uint64_t reports = 0, verdicts = 0, hash = 0;
  for (TopologyKind t : kTopologies) {
    ExperimentConfig c = Default(t, 1);
    c.faults = 0;
    c.duration = 30;
    const auto m = Run(c).metrics;
    reports += m.sampled_reports;
    verdicts += m.fault_verdicts;
    hash += m.hash_collisions;
    o.Check(m.fault_verdicts == 0,
            fmt::format("{}: {} sampled reports, {} fault verdicts, {} hash collisions",
                        TopologyKindName(t), m.sampled_reports, m.fault_verdicts,
                        m.hash_collisions));
  }
  o.Check(reports >= 10000 && verdicts == 0,
          fmt::format("{} sampled reports in total, {} fault verdicts, {} logged hash collisions",
                      reports, verdicts, hash));
  return o;
}

struct Criterion {
  const char* name;
  std::function<CriterionResult()> run;
};

const std::map<int, Criterion>& Criteria() {
  static const std::map<int, Criterion> c = {
      {1, {"reachability equals exhaustive simulation", OracleEquivalence}},
      {2, {"incremental update equals rebuild", IncrementalEquivalence}},
      {3, {"detection completeness", DetectionCompleteness}},
      {4, {"localization correctness", LocalizationCorrectness}},
      {5, {"bloom false-positive bound", BloomBound}},
      {6, {"probe speedup over baseline", Speedup}},
      {7, {"tagging non-interference", TaggingNonInterference}},
      {8, {"performance envelope", Performance}},
      {9, {"fault-free soundness", Soundness}},
  };
  return c;
}

}  // namespace
}  // namespace pazz

int main(int argc, char** argv) {
  CLI::App app("acceptance criteria");
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);
  bool all_pass = true;
  for (const auto& [id, c] : pazz::Criteria()) {
    if (only != 0 && id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    const pazz::CriterionResult o = c.run();
    all_pass &= o.pass;
    std::printf("%s criterion %d: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, c.name,
                pazz::Seconds(t0));
    for (const auto& line : o.lines) std::printf("%s\n", line.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
