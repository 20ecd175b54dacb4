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

#ifndef PAZZ_HARNESS_EXPERIMENT_HPP_
#define PAZZ_HARNESS_EXPERIMENT_HPP_

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pazz/common/error.hpp"
#include "pazz/common/log.hpp"
#include "pazz/cpc/reachability_graph.hpp"
#include "pazz/dataplane/dataplane.hpp"
#include "pazz/dataplane/simulator.hpp"
#include "pazz/dataplane/trace_io.hpp"
#include "pazz/fuzzer/fuzzer.hpp"
#include "pazz/netmodel/faults.hpp"
#include "pazz/netmodel/generators.hpp"
#include "pazz/tester/consistency_tester.hpp"

namespace pazz {

struct ExperimentConfig {
  TopologyKind topology = TopologyKind::kGrid16;
  double rules_scale = 0.1;
  int width = kDefaultHeaderWidth;
  std::size_t faults = 30;
  int mix_p = 35;  // Type-p share of the fault mix
  int mix_a = 65;  // Type-a share
  double sample_rate = 0.01;
  double production_pps = 1e4;
  double fuzz_pps = 1000.0;
  double duration = 120.0;  // simulated seconds
  std::uint64_t seed = 1;
  bool baseline = false;
  bool stop_when_all_detected = true;
  double link_delay = 10e-6;
  std::size_t production_bytes = 1000;
  std::size_t probe_bytes = 54;
  double link_bandwidth_bps = 1e9;

  void Validate() const {
    auto bad = [](const std::string& m) {
      throw Error(ErrorCode::kInvalidConfig, m);
    };
    if (!(sample_rate > 0.0 && sample_rate <= 1.0)) bad("sample rate not in (0,1]");
    if (!(production_pps > 0.0)) bad("production rate must be > 0");
    if (!(fuzz_pps > 0.0)) bad("fuzz rate must be > 0");
    if (!(duration > 0.0)) bad("duration must be > 0");
    if (mix_p < 0 || mix_a < 0 || mix_p + mix_a == 0) bad("bad fault mix");
    if (!(rules_scale > 0.0)) bad("rules scale must be > 0");
    if (!(link_delay >= 0.0)) bad("link delay must be >= 0");
    CheckWidth(width);
  }

  nlohmann::json ToJson() const {
    return {{"topology", std::string(TopologyKindName(topology))},
            {"rules_scale", rules_scale},
            {"width", width},
            {"faults", faults},
            {"fault_mix", std::to_string(mix_p) + ":" + std::to_string(mix_a)},
            {"sample_rate", sample_rate},
            {"production_pps", production_pps},
            {"fuzz_pps", fuzz_pps},
            {"duration", duration},
            {"seed", seed},
            {"mode", baseline ? "baseline" : "pazz"},
            {"stop_when_all_detected", stop_when_all_detected},
            {"link_delay", link_delay},
            {"production_bytes", production_bytes},
            {"probe_bytes", probe_bytes},
            {"link_bandwidth_bps", link_bandwidth_bps}};
  }
};

// Type-p count for a mix, rounded to nearest.
inline std::size_t TypePCount(std::size_t n, int mix_p, int mix_a) {
  const std::size_t total = static_cast<std::size_t>(mix_p + mix_a);
  return (n * static_cast<std::size_t>(mix_p) + total / 2) / total;
}

// Chooses faults for one pair and checks each against a reference trace of
// the mutated data plane: sample headers of the affected set must still be
// delivered, loop-free, with tags the control plane does not expect. A
// path-changing fault must also never bring the packet back to the hop that
// follows the faulty switch on the expected path, and that hop must exist;
// otherwise the bloom walkthrough has nothing to find.
class FaultPlanner {
 public:
  FaultPlanner(const GeneratedNetwork& net, const ReachabilityGraph& graph,
               std::uint64_t seed)
      : net_(net),
        graph_(graph),
        pair_(net.layout.pair),
        corpus_(graph.CorpusFor(pair_.src, pair_.dst)),
        rng_(seed),
        config_(net.config),
        dp_(net.topology, net.config),
        used_(net.config.width()) {}

  const Config& config() const { return config_; }
  const std::vector<GroundTruth>& truths() const { return truths_; }

  void Plan(std::size_t count, int mix_p, int mix_a) {
    const std::size_t n_p = TypePCount(count, mix_p, mix_a);
    const std::size_t n_a = count - n_p;
    PlanTypeA(n_a);
    PlanTypeP(n_p);
    std::sort(truths_.begin(), truths_.end(),
              [](const GroundTruth& a, const GroundTruth& b) {
                return a.fault_id < b.fault_id;
              });
  }

 private:
  std::vector<PortId> LinkedPorts(SwitchId sw) const {
    std::vector<PortId> out;
    for (const auto& [port, peer] : net_.topology.Neighbors(sw)) out.push_back(port);
    return out;
  }

  std::vector<Header> Samples(const HeaderSet& s) {
    IndexedHeaderSet idx(s);
    std::vector<Header> out{idx.Nth(0), idx.Nth(idx.size() - 1),
                            idx.Nth(idx.size() / 2)};
    for (int i = 0; i < 3; ++i) out.push_back(idx.Sample(rng_));
    return out;
  }

  // Traces samples through the candidate; returns whether it is usable and
  // whether the path changed.
  std::optional<bool> Validate(const FaultSpec& spec, const DataPlane& dp) {
    bool path_changed = false;
    for (Header h : Samples(spec.affected)) {
      const auto tr = dp.Trace(pair_.src, h);
      if (tr.delivered.size() != 1 || tr.dropped != 0 || tr.looped != 0) {
        return std::nullopt;
      }
      const auto& d = tr.delivered.front();
      if (!(d.report.egress == pair_.dst)) return std::nullopt;
      const auto expected = graph_.ExpectedReports(h, pair_.src, pair_.dst);
      if (Check(d.report, expected).outcome != Outcome::kFault) {
        return std::nullopt;
      }
      if (expected.empty()) continue;
      const auto& path = expected.front().path;
      bool same = path.size() == d.trace.size();
      for (std::size_t i = 0; same && i < path.size(); ++i) {
        same = path[i].sw == d.trace[i].sw && path[i].inport == d.trace[i].inport &&
               path[i].outport == d.trace[i].outport;
      }
      if (!same) {
        path_changed = true;
        std::size_t k = 0;
        while (k < path.size() && path[k].sw != spec.target) ++k;
        // The walkthrough blames the switch before the first missing ingress
        // digest, so a detour from the last switch is never localizable.
        if (k + 1 >= path.size()) return std::nullopt;
        for (const Hop& hop : d.trace) {
          if (hop.sw == path[k + 1].sw && hop.inport == path[k + 1].inport) {
            return std::nullopt;
          }
        }
      }
    }
    return path_changed;
  }

  bool Accept(FaultSpec spec) {
    if (spec.affected.IsEmpty() || used_.Intersects(spec.affected)) return false;
    if (spec.replaces && used_rules_.count(*spec.replaces) != 0) return false;
    Config next;
    GroundTruth truth;
    try {
      std::tie(next, truth) =
          InjectFault(config_, spec, corpus_.entry, truths_.size());
    } catch (const Error&) {
      return false;
    }
    DataPlane candidate = dp_.WithSwitch(spec.target, next);
    const auto verdict = Validate(spec, candidate);
    if (!verdict) return false;
    truth.spec.changes_path = *verdict;
    config_ = std::move(next);
    dp_ = std::move(candidate);
    used_.Add(spec.affected);
    if (spec.replaces) used_rules_.insert(*spec.replaces);
    truths_.push_back(std::move(truth));
    return true;
  }

  // Hidden rules at the entry switch catching aligned slots of the sweep
  // area and forwarding them to a neighbour.
  void PlanTypeA(std::size_t n) {
    if (n == 0) return;
    const HeaderSet sweep = corpus_.exit.Difference(corpus_.entry);
    std::vector<Interval> slots;
    for (std::uint64_t size = 2048; size >= 1 && slots.size() < n; size /= 2) {
      slots.clear();
      for (const Interval& iv : sweep.intervals()) {
        std::uint64_t lo = (std::uint64_t{iv.lo} + size - 1) / size * size;
        for (; lo + size - 1 <= iv.hi; lo += size) {
          slots.push_back({static_cast<Header>(lo),
                           static_cast<Header>(lo + size - 1)});
        }
      }
      if (size == 1) break;
    }
    if (slots.size() < n) {
      throw Error(ErrorCode::kInvalidConfig,
                  "sweep area too small for " + std::to_string(n) +
                      " type_a faults");
    }
    std::shuffle(slots.begin(), slots.end(), rng_);
    const SwitchId entry = pair_.src.sw;
    std::size_t placed = 0;
    for (const Interval& slot : slots) {
      if (placed == n) break;
      std::vector<PortId> outs = LinkedPorts(entry);
      std::shuffle(outs.begin(), outs.end(), rng_);
      for (PortId out : outs) {
        FaultSpec spec;
        spec.kind = FaultKind::kTypeAHidden;
        spec.target = entry;
        spec.rule.sw = entry;
        spec.rule.table = 0;
        spec.rule.id = config_.NextRuleId(entry, 0);
        spec.rule.priority = config_.MaxPriority(entry) + 1;
        spec.rule.in_ports = {pair_.src.port};
        spec.rule.match = HeaderSet::FromRange(slot.lo, slot.hi, config_.width());
        spec.rule.out_ports = {out};
        spec.rule.hidden = true;
        spec.affected = spec.rule.match;
        if (Accept(spec)) {
          ++placed;
          break;
        }
      }
    }
    if (placed < n) {
      throw Error(ErrorCode::kInvalidConfig, "could not place type_a faults");
    }
  }

  // Classes of the pair that pass through node `id`.
  HeaderSet RegionThrough(NodeId id) const {
    IntervalAccumulator acc(config_.width());
    for (const PathClass& c : graph_.PathClasses(pair_.src, pair_.dst)) {
      for (const PathHop& h : c.hops) {
        if (h.node == id) {
          acc.Add(c.region);
          break;
        }
      }
    }
    return acc.ToHeaderSet().Intersect(corpus_.entry);
  }

  // An aligned block of up to `cap` headers inside one interval of `region`.
  HeaderSet AlignedBlock(const HeaderSet& region, std::uint64_t cap) {
    const auto& ivs = region.intervals();
    const Interval iv = ivs[std::uniform_int_distribution<std::size_t>(
        0, ivs.size() - 1)(rng_)];
    for (std::uint64_t size = cap; size >= 1; size /= 2) {
      const std::uint64_t first = (std::uint64_t{iv.lo} + size - 1) / size * size;
      if (first + size - 1 > iv.hi) continue;
      const std::uint64_t count = (std::uint64_t{iv.hi} + 1 - first) / size;
      const std::uint64_t pick =
          std::uniform_int_distribution<std::uint64_t>(0, count - 1)(rng_);
      const std::uint64_t lo = first + pick * size;
      return HeaderSet::FromRange(static_cast<Header>(lo),
                                  static_cast<Header>(lo + size - 1),
                                  config_.width());
    }
    return HeaderSet::Empty(config_.width());
  }

  void PlanTypeP(std::size_t n) {
    const auto& classes = graph_.PathClasses(pair_.src, pair_.dst);
    if (n == 0) return;
    if (classes.empty()) {
      throw Error(ErrorCode::kInvalidConfig, "pair has no expected paths");
    }
    std::size_t placed = 0;
    const std::size_t max_attempts = 400 * n + 1000;
    for (std::size_t attempt = 0; placed < n && attempt < max_attempts;
         ++attempt) {
      const PathClass& c = classes[std::uniform_int_distribution<std::size_t>(
          0, classes.size() - 1)(rng_)];
      if (used_.Intersects(c.region)) continue;
      const PathHop& hop = c.hops[std::uniform_int_distribution<std::size_t>(
          0, c.hops.size() - 1)(rng_)];
      const RuleNode& node = graph_.node(hop.node);
      const SwitchId sw = node.rule.sw;
      std::vector<PortId> alternatives;
      for (PortId p : LinkedPorts(sw)) {
        if (p != hop.outport && p != node.inport) alternatives.push_back(p);
      }
      if (alternatives.empty()) continue;
      const PortId new_out = alternatives[std::uniform_int_distribution<std::size_t>(
          0, alternatives.size() - 1)(rng_)];

      FaultSpec spec;
      spec.target = sw;
      if (std::bernoulli_distribution(0.5)(rng_)) {
        // Action fault: an inport-specific rule sends its traffic elsewhere.
        if (node.rule.in_ports.size() != 1 || node.rule.hidden) continue;
        spec.kind = FaultKind::kTypePAction;
        spec.replaces = node.rule.key();
        spec.rule = node.rule;
        spec.rule.out_ports = {new_out};
        spec.affected = RegionThrough(hop.node);
      } else {
        spec.kind = FaultKind::kTypePMatch;
        const HeaderSet block = AlignedBlock(c.region, 512);
        if (block.IsEmpty()) continue;
        spec.affected = block;
        // Prefer widening an existing higher-ranked rule on the same inport;
        // fall back to a hidden rule with a corrupted match.
        std::vector<const FlowRule*> wideners;
        for (const FlowRule* r : config_.RulesOf(sw)) {
          if (r->hidden || r->in_ports != std::vector<PortId>{node.inport} ||
              r->table != node.rule.table || r->priority <= node.rule.priority ||
              r->match.Intersects(block) ||
              used_rules_.count(r->key()) != 0) {
            continue;
          }
          wideners.push_back(r);
        }
        if (!wideners.empty() && std::bernoulli_distribution(0.5)(rng_)) {
          const FlowRule* r = wideners[std::uniform_int_distribution<std::size_t>(
              0, wideners.size() - 1)(rng_)];
          spec.replaces = r->key();
          spec.rule = *r;
          spec.rule.match = r->match.Union(block);
        } else {
          spec.rule.sw = sw;
          spec.rule.table = 0;
          spec.rule.id = config_.NextRuleId(sw, 0);
          spec.rule.priority = config_.MaxPriority(sw) + 1;
          spec.rule.in_ports = {node.inport};
          spec.rule.match = block;
          spec.rule.out_ports = {new_out};
          spec.rule.hidden = true;
        }
      }
      if (Accept(spec)) ++placed;
    }
    if (placed < n) {
      throw Error(ErrorCode::kInvalidConfig,
                  "could only place " + std::to_string(placed) + " of " +
                      std::to_string(n) + " type_p faults");
    }
  }

  const GeneratedNetwork& net_;
  const ReachabilityGraph& graph_;
  PortPair pair_;
  Corpus corpus_;
  std::mt19937_64 rng_;
  Config config_;
  DataPlane dp_;
  IntervalAccumulator used_;
  std::set<RuleKey> used_rules_;
  std::vector<GroundTruth> truths_;
};

struct FaultOutcome {
  std::size_t id = 0;
  FaultKind kind = FaultKind::kTypePMatch;
  SwitchId sw = 0;
  std::string rule;
  std::string affected;
  std::uint64_t affected_size = 0;
  bool changes_path = false;
  bool detected = false;
  double detect_time = 0.0;
  std::uint64_t detect_probes = 0;    // fuzz probes emitted before detection
  std::uint64_t detect_packets = 0;   // production packets injected before it
  std::string detected_by;            // "prod" or "fuzz"
  std::string verdict_class;
  std::string localization;
  bool auto_localized = false;
  bool localized_correct = false;
  bool collision = false;             // a bloom/hash collision touched its reports
  std::uint64_t fault_reports = 0;    // fault verdicts attributed to it

  nlohmann::json ToJson() const {
    return {{"id", id},
            {"kind", std::string(FaultKindName(kind))},
            {"switch", sw},
            {"rule", rule},
            {"affected", affected},
            {"affected_size", affected_size},
            {"changes_path", changes_path},
            {"detected", detected},
            {"detect_time", detect_time},
            {"detect_probes", detect_probes},
            {"detect_packets", detect_packets},
            {"detected_by", detected_by},
            {"verdict_class", verdict_class},
            {"localization", localization},
            {"auto_localized", auto_localized},
            {"localized_correct", localized_correct},
            {"collision", collision},
            {"fault_reports", fault_reports}};
  }

  static FaultOutcome FromJson(const nlohmann::json& j) {
    FaultOutcome f;
    f.id = j.at("id").get<std::size_t>();
    f.kind = ParseFaultKind(j.at("kind").get<std::string>());
    f.sw = j.at("switch").get<SwitchId>();
    f.rule = j.at("rule").get<std::string>();
    f.affected = j.at("affected").get<std::string>();
    f.affected_size = j.at("affected_size").get<std::uint64_t>();
    f.changes_path = j.at("changes_path").get<bool>();
    f.detected = j.at("detected").get<bool>();
    f.detect_time = j.at("detect_time").get<double>();
    f.detect_probes = j.at("detect_probes").get<std::uint64_t>();
    f.detect_packets = j.at("detect_packets").get<std::uint64_t>();
    f.detected_by = j.at("detected_by").get<std::string>();
    f.verdict_class = j.at("verdict_class").get<std::string>();
    f.localization = j.at("localization").get<std::string>();
    f.auto_localized = j.at("auto_localized").get<bool>();
    f.localized_correct = j.at("localized_correct").get<bool>();
    f.collision = j.at("collision").get<bool>();
    f.fault_reports = j.at("fault_reports").get<std::uint64_t>();
    return f;
  }
};

// Everything a run measures in simulated units. Serializes deterministically.
struct MetricsRecord {
  nlohmann::json config;
  std::string topology;
  std::string mode;
  std::uint64_t seed = 0;
  std::size_t rules = 0;
  std::size_t switches = 0;
  std::vector<FaultOutcome> faults;
  std::uint64_t sampled_reports = 0;
  std::uint64_t consistent_reports = 0;
  std::uint64_t fault_verdicts = 0;
  std::uint64_t unattributed_verdicts = 0;  // fault verdicts matching no fault
  std::uint64_t findings = 0;
  std::uint64_t bloom_collisions = 0;
  std::uint64_t hash_collisions = 0;
  std::uint64_t injected_production = 0;
  std::uint64_t injected_fuzz = 0;
  std::uint64_t forked = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t looped = 0;
  std::uint64_t production_bytes = 0;
  std::uint64_t fuzz_bytes = 0;
  double fuzz_link_overhead = 0.0;  // fuzz bit rate / link bandwidth
  double fuzz_byte_share = 0.0;     // fuzz bytes / production bytes
  double end_time = 0.0;

  bool Conserved() const {
    return injected_production + injected_fuzz + forked ==
           delivered + dropped + looped;
  }

  nlohmann::json ToJson() const {
    nlohmann::json f = nlohmann::json::array();
    for (const auto& o : faults) f.push_back(o.ToJson());
    return {{"config", config},
            {"topology", topology},
            {"mode", mode},
            {"seed", seed},
            {"rules", rules},
            {"switches", switches},
            {"faults", f},
            {"sampled_reports", sampled_reports},
            {"consistent_reports", consistent_reports},
            {"fault_verdicts", fault_verdicts},
            {"unattributed_verdicts", unattributed_verdicts},
            {"findings", findings},
            {"bloom_collisions", bloom_collisions},
            {"hash_collisions", hash_collisions},
            {"injected_production", injected_production},
            {"injected_fuzz", injected_fuzz},
            {"forked", forked},
            {"delivered", delivered},
            {"dropped", dropped},
            {"looped", looped},
            {"production_bytes", production_bytes},
            {"fuzz_bytes", fuzz_bytes},
            {"fuzz_link_overhead", fuzz_link_overhead},
            {"fuzz_byte_share", fuzz_byte_share},
            {"end_time", end_time}};
  }

  static MetricsRecord FromJson(const nlohmann::json& j) {
    MetricsRecord m;
    m.config = j.at("config");
    m.topology = j.at("topology").get<std::string>();
    m.mode = j.at("mode").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.rules = j.at("rules").get<std::size_t>();
    m.switches = j.at("switches").get<std::size_t>();
    for (const auto& f : j.at("faults")) m.faults.push_back(FaultOutcome::FromJson(f));
    auto u64 = [&](const char* k) { return j.at(k).get<std::uint64_t>(); };
    m.sampled_reports = u64("sampled_reports");
    m.consistent_reports = u64("consistent_reports");
    m.fault_verdicts = u64("fault_verdicts");
    m.unattributed_verdicts = u64("unattributed_verdicts");
    m.findings = u64("findings");
    m.bloom_collisions = u64("bloom_collisions");
    m.hash_collisions = u64("hash_collisions");
    m.injected_production = u64("injected_production");
    m.injected_fuzz = u64("injected_fuzz");
    m.forked = u64("forked");
    m.delivered = u64("delivered");
    m.dropped = u64("dropped");
    m.looped = u64("looped");
    m.production_bytes = u64("production_bytes");
    m.fuzz_bytes = u64("fuzz_bytes");
    m.fuzz_link_overhead = j.at("fuzz_link_overhead").get<double>();
    m.fuzz_byte_share = j.at("fuzz_byte_share").get<double>();
    m.end_time = j.at("end_time").get<double>();
    return m;
  }
};

// Wall-clock measurements, kept apart from the deterministic metrics.
struct RunTimings {
  double generate_s = 0.0;
  double cpc_build_s = 0.0;
  double fuzz_plan_s = 0.0;
  double fault_plan_s = 0.0;
  double simulate_s = 0.0;

  nlohmann::json ToJson() const {
    return {{"generate_s", generate_s},
            {"cpc_build_s", cpc_build_s},
            {"fuzz_plan_s", fuzz_plan_s},
            {"fault_plan_s", fault_plan_s},
            {"simulate_s", simulate_s}};
  }
};

struct RunOutputs {
  std::ostream* verdict_log = nullptr;  // one line per fault verdict
  std::ostream* report_log = nullptr;   // one line per sampled report
};

struct RunResult {
  MetricsRecord metrics;
  RunTimings timings;
  std::vector<Finding> findings;
  int width = kDefaultHeaderWidth;
};

namespace experiment_internal {

inline double Since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t)
      .count();
}

// Finds the delivered copy behind a report among the reference traces.
inline const DataPlane::Delivery* MatchDelivery(const DataPlane::TraceResult& tr,
                                                const ActualReport& r) {
  for (const auto& d : tr.delivered) {
    if (d.report.egress == r.egress && d.report.tag == r.tag) return &d;
  }
  return nullptr;
}

inline bool SameRules(const ExpectedReport& e, const std::vector<Hop>& trace) {
  if (e.path.size() != trace.size()) return false;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!(e.path[i].rule == trace[i].rule) || e.path[i].sw != trace[i].sw ||
        e.path[i].inport != trace[i].inport) {
      return false;
    }
  }
  return true;
}

inline bool Visits(const std::vector<Hop>& trace, SwitchId sw, PortId in) {
  return std::any_of(trace.begin(), trace.end(), [&](const Hop& h) {
    return h.sw == sw && h.inport == in;
  });
}

}  // namespace experiment_internal

// One end-to-end experiment: generate, plan faults, simulate production and
// fuzz traffic, check every sampled report and score against ground truth.
inline RunResult Run(const ExperimentConfig& cfg, RunOutputs out = {}) {
  using namespace experiment_internal;
  cfg.Validate();
  RunResult result;
  result.width = cfg.width;
  RunTimings& tm = result.timings;
  MetricsRecord& m = result.metrics;

  auto t0 = std::chrono::steady_clock::now();
  GeneratorOptions gen;
  gen.rules_scale = cfg.rules_scale;
  gen.width = cfg.width;
  gen.seed = cfg.seed;
  const GeneratedNetwork net = Generate(cfg.topology, gen);
  tm.generate_s = Since(t0);

  const PortPair pair = net.layout.pair;
  const ReachabilityGraph graph =
      ReachabilityGraph::Build(net.topology, net.config.Visible());
  tm.cpc_build_s = graph.build_seconds();
  const Corpus corpus = graph.CorpusFor(pair.src, pair.dst);

  t0 = std::chrono::steady_clock::now();
  FaultPlanner planner(net, graph, SplitMix64(cfg.seed ^ 0xfa017ull));
  planner.Plan(cfg.faults, cfg.mix_p, cfg.mix_a);
  tm.fault_plan_s = Since(t0);

  m.config = cfg.ToJson();
  m.topology = std::string(TopologyKindName(cfg.topology));
  m.mode = cfg.baseline ? "baseline" : "pazz";
  m.seed = cfg.seed;
  m.rules = net.config.rules().size();
  m.switches = net.topology.switches().size();
  for (const GroundTruth& t : planner.truths()) {
    FaultOutcome f;
    f.id = t.fault_id;
    f.kind = t.spec.kind;
    f.sw = t.spec.target;
    f.rule = ToString(t.spec.rule.key());
    f.affected = t.spec.affected.ToString();
    f.affected_size = t.spec.affected.Cardinality();
    f.changes_path = t.spec.changes_path;
    m.faults.push_back(f);
  }
  const std::vector<GroundTruth>& truths = planner.truths();

  const DataPlane dp(net.topology, planner.config());
  Simulator sim(dp, Sampler(cfg.sample_rate, SplitMix64(cfg.seed ^ 0x5a3bull)),
                SimulatorOptions{cfg.link_delay});

  const IndexedHeaderSet production(corpus.entry);
  std::mt19937_64 prod_rng(SplitMix64(cfg.seed ^ 0x9d0dull));
  TrafficStream prod;
  prod.cls = TrafficClass::kProduction;
  prod.at = pair.src;
  prod.interval = 1.0 / cfg.production_pps;
  prod.bytes = cfg.production_bytes;
  prod.next = [&]() -> std::optional<Header> {
    if (production.size() == 0) return std::nullopt;
    return production.Sample(prod_rng);
  };
  sim.AddStream(std::move(prod));

  t0 = std::chrono::steady_clock::now();
  FuzzerOptions fopts;
  fopts.mode = cfg.baseline ? FuzzMode::kBaseline : FuzzMode::kPazz;
  fopts.rate_pps = cfg.fuzz_pps;
  fopts.seed = SplitMix64(cfg.seed ^ 0xf022ull);
  Fuzzer fuzzer(corpus.entry, corpus.exit, fopts);
  tm.fuzz_plan_s = Since(t0);
  TrafficStream fuzz;
  fuzz.cls = TrafficClass::kFuzz;
  fuzz.at = pair.src;
  fuzz.start = fuzzer.interval() / 2;
  fuzz.interval = fuzzer.interval();
  fuzz.bytes = cfg.probe_bytes;
  fuzz.next = [&]() { return fuzzer.Next(); };
  sim.AddStream(std::move(fuzz));

  FindingLog findings;
  std::size_t detected = 0;
  // Affected sets are disjoint; index them for attribution.
  std::vector<std::pair<Interval, std::size_t>> owner;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    for (const Interval& iv : truths[i].spec.affected.intervals()) {
      owner.emplace_back(iv, i);
    }
  }
  std::sort(owner.begin(), owner.end(),
            [](const auto& a, const auto& b) { return a.first.lo < b.first.lo; });
  auto owner_of = [&](Header h) -> std::optional<std::size_t> {
    auto it = std::upper_bound(
        owner.begin(), owner.end(), h,
        [](Header v, const auto& e) { return v < e.first.lo; });
    if (it == owner.begin()) return std::nullopt;
    --it;
    if (h > it->first.hi) return std::nullopt;
    return it->second;
  };

  auto on_report = [&](const SampledReport& s) {
    ++m.sampled_reports;
    if (out.report_log) *out.report_log << FormatReportLine(s, cfg.width) << "\n";
    const ActualReport& r = s.report;
    const Endpoint src = r.entry.value_or(pair.src);
    const auto expected = graph.ExpectedReports(r.header, src, r.egress);
    const Verdict v = Check(r, expected);

    // Ground truth for collision accounting.
    const auto tr = dp.Trace(src, r.header);
    const DataPlane::Delivery* truth = MatchDelivery(tr, r);
    bool collided = false;
    if (truth != nullptr) {
      if (v.outcome == Outcome::kConsistent) {
        const bool genuine = std::any_of(
            expected.begin(), expected.end(), [&](const ExpectedReport& e) {
              return e.tag == r.tag && SameRules(e, truth->trace);
            });
        if (!genuine) {
          ++m.hash_collisions;
          collided = true;
        }
      } else if (!expected.empty()) {
        // The filter vouches for every hop before the first missing one. A
        // vouched hop the packet never took is a bloom false positive. With
        // no walkthrough result (manual), every candidate is examined.
        std::vector<std::size_t> cands;
        if (v.candidate) {
          cands.push_back(*v.candidate);
        } else {
          for (std::size_t c = 0; c < expected.size(); ++c) cands.push_back(c);
        }
        for (std::size_t c : cands) {
          const auto& path = expected[c].path;
          const std::size_t limit =
              FirstMissingHop(r.tag.verify_port, path).value_or(path.size());
          for (std::size_t i = 0; i < limit && !collided; ++i) {
            collided = !Visits(truth->trace, path[i].sw, path[i].inport);
          }
        }
        if (collided) ++m.bloom_collisions;
      }
    }

    const auto who = owner_of(r.header);
    if (collided && who) m.faults[*who].collision = true;
    if (v.outcome == Outcome::kConsistent) {
      ++m.consistent_reports;
      return true;
    }
    ++m.fault_verdicts;
    findings.Record(v, s.time);
    if (out.verdict_log) {
      *out.verdict_log << FormatVerdictLine(v, s.time, cfg.width) << "\n";
    }
    if (!who) {
      ++m.unattributed_verdicts;
      Log().warn("fault verdict for {} matches no injected fault",
                 FormatHeader(r.header, cfg.width));
      return true;
    }
    FaultOutcome& f = m.faults[*who];
    ++f.fault_reports;
    if (!f.detected) {
      f.detected = true;
      f.detect_time = s.time;
      f.detect_probes = fuzzer.emitted();
      f.detect_packets = sim.counters().injected[0];
      f.detected_by = std::string(TrafficClassName(s.cls));
      f.verdict_class = std::string(FaultClassName(v.fault_class));
      f.localization = ToString(v.localization);
      f.auto_localized = v.localization.kind == Localization::Kind::kSwitch;
      f.localized_correct = f.auto_localized && v.localization.sw == f.sw;
      ++detected;
    }
    return !(cfg.stop_when_all_detected && detected == truths.size() &&
             !truths.empty());
  };

  t0 = std::chrono::steady_clock::now();
  sim.RunUntil(cfg.duration, on_report);
  m.end_time = std::min(sim.now(), cfg.duration);
  sim.Drain();
  tm.simulate_s = Since(t0);

  for (FaultOutcome& f : m.faults) {
    if (!f.detected) f.detect_probes = fuzzer.emitted();
  }
  const SimCounters& c = sim.counters();
  m.findings = findings.size();
  m.injected_production = c.injected[0];
  m.injected_fuzz = c.injected[1];
  m.forked = c.forked;
  m.delivered = c.delivered;
  m.dropped = c.dropped;
  m.looped = c.looped;
  m.production_bytes = c.bytes[0];
  m.fuzz_bytes = c.bytes[1];
  m.fuzz_link_overhead =
      cfg.fuzz_pps * static_cast<double>(cfg.probe_bytes) * 8.0 /
      cfg.link_bandwidth_bps;
  m.fuzz_byte_share =
      c.bytes[0] == 0 ? 0.0
                      : static_cast<double>(c.bytes[1]) / static_cast<double>(c.bytes[0]);
  result.findings = findings.findings();
  return result;
}

inline RunResult RunBaseline(ExperimentConfig cfg, RunOutputs out = {}) {
  cfg.baseline = true;
  return Run(cfg, out);
}

}  // namespace pazz

#endif  // PAZZ_HARNESS_EXPERIMENT_HPP_
