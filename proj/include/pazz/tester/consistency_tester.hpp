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

#ifndef PAZZ_TESTER_CONSISTENCY_TESTER_HPP_
#define PAZZ_TESTER_CONSISTENCY_TESTER_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "pazz/cpc/reachability_graph.hpp"
#include "pazz/dataplane/dataplane.hpp"

namespace pazz {

enum class Outcome { kConsistent, kFault };

enum class FaultClass {
  kNone,
  kRuleMismatchPathSame,
  kRuleAndPathMismatch,
  kActionFaultPathOnly,
  kTypeAUnexpected,
};

inline std::string_view FaultClassName(FaultClass c) {
  switch (c) {
    case FaultClass::kNone: return "none";
    case FaultClass::kRuleMismatchPathSame: return "rule_mismatch_path_same";
    case FaultClass::kRuleAndPathMismatch: return "rule_and_path_mismatch";
    case FaultClass::kActionFaultPathOnly: return "action_fault_path_only";
    case FaultClass::kTypeAUnexpected: return "type_a_unexpected";
  }
  return "?";
}

struct Localization {
  enum class Kind { kNone, kSwitch, kRuleHint, kManual };
  Kind kind = Kind::kNone;
  SwitchId sw = 0;
  // Set when the entry hop itself failed, so there is no predecessor and the
  // entry switch is reported instead.
  bool ambiguous = false;

  friend bool operator==(const Localization&, const Localization&) = default;
};

inline std::string ToString(const Localization& l) {
  switch (l.kind) {
    case Localization::Kind::kNone: return "none";
    case Localization::Kind::kSwitch:
      return "switch " + std::to_string(l.sw) + (l.ambiguous ? " (entry)" : "");
    case Localization::Kind::kRuleHint:
      return "rule at switch " + std::to_string(l.sw);
    case Localization::Kind::kManual: return "manual";
  }
  return "?";
}

struct Verdict {
  Outcome outcome = Outcome::kConsistent;
  FaultClass fault_class = FaultClass::kNone;
  Localization localization;
  ActualReport actual;
  std::vector<ExpectedReport> evidence;
  // Candidate and hop index that drove localization, when it ran.
  std::optional<std::size_t> candidate;
  std::optional<std::size_t> failing_hop;
};

// First hop whose digest bits are missing from the actual filter.
inline std::optional<std::size_t> FirstMissingHop(
    std::uint32_t actual_port, const std::vector<ExpectedHop>& hops) {
  for (std::size_t i = 0; i < hops.size(); ++i) {
    if ((actual_port & hops[i].digest) != hops[i].digest) return i;
  }
  return std::nullopt;
}

struct LocalizeResult {
  Localization localization;
  std::optional<std::size_t> candidate;
  std::optional<std::size_t> failing_hop;
};

// Bloom walkthrough over every candidate. The candidate that agrees with the
// actual filter the longest wins; the faulty switch is the one before its
// first missing hop.
inline LocalizeResult Localize(std::uint32_t actual_port,
                               const std::vector<ExpectedReport>& candidates) {
  LocalizeResult best;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto miss = FirstMissingHop(actual_port, candidates[c].path);
    if (!miss) continue;
    if (best.failing_hop && *best.failing_hop >= *miss) continue;
    best.candidate = c;
    best.failing_hop = miss;
  }
  if (!best.failing_hop) {
    best.localization.kind = Localization::Kind::kManual;
    return best;
  }
  const auto& path = candidates[*best.candidate].path;
  best.localization.kind = Localization::Kind::kSwitch;
  if (*best.failing_hop == 0) {
    best.localization.sw = path.front().sw;
    best.localization.ambiguous = true;
  } else {
    best.localization.sw = path[*best.failing_hop - 1].sw;
  }
  return best;
}

// Compares one actual report with the control plane's candidates.
inline Verdict Check(const ActualReport& actual,
                     const std::vector<ExpectedReport>& expected) {
  Verdict v;
  v.actual = actual;
  v.evidence = expected;
  if (expected.empty()) {
    v.outcome = Outcome::kFault;
    v.fault_class = FaultClass::kTypeAUnexpected;
    v.localization.kind = Localization::Kind::kRuleHint;
    v.localization.sw = actual.entry ? actual.entry->sw : actual.egress.sw;
    return v;
  }
  bool rule_match = false;
  bool port_match = false;
  for (const ExpectedReport& e : expected) {
    const bool r = e.tag.verify_rule == actual.tag.verify_rule;
    const bool p = e.tag.verify_port == actual.tag.verify_port;
    if (r && p) return v;  // consistent
    rule_match |= r;
    port_match |= p;
  }
  v.outcome = Outcome::kFault;
  // A filter equal to some candidate's means the path looks right, so the
  // walkthrough has nothing to point at. This also covers the odd multipath
  // case where the rules match one candidate and the ports another.
  if (port_match) {
    v.fault_class = FaultClass::kRuleMismatchPathSame;
    v.localization.kind = Localization::Kind::kManual;
    return v;
  }
  v.fault_class = rule_match ? FaultClass::kActionFaultPathOnly
                             : FaultClass::kRuleAndPathMismatch;
  LocalizeResult loc = Localize(actual.tag.verify_port, expected);
  v.localization = loc.localization;
  v.candidate = loc.candidate;
  v.failing_hop = loc.failing_hop;
  return v;
}

// An open fault finding: verdicts collapsed by header bucket, class and
// localization, with a hit counter.
struct Finding {
  std::size_t id = 0;
  Verdict first;
  double first_seen = 0.0;
  double last_seen = 0.0;
  std::uint64_t hits = 0;
};

class FindingLog {
 public:
  explicit FindingLog(int bucket_shift = 8) : bucket_shift_(bucket_shift) {}

  // Returns the finding the verdict was folded into and whether it is new.
  std::pair<const Finding*, bool> Record(const Verdict& v, double now) {
    if (v.outcome == Outcome::kConsistent) return {nullptr, false};
    const Key key{v.actual.header >> bucket_shift_, v.fault_class,
                  static_cast<int>(v.localization.kind), v.localization.sw};
    auto [it, fresh] = index_.try_emplace(key, findings_.size());
    if (fresh) {
      Finding f;
      f.id = findings_.size();
      f.first = v;
      f.first_seen = now;
      findings_.push_back(std::move(f));
    }
    Finding& f = findings_[it->second];
    f.last_seen = now;
    ++f.hits;
    return {&f, fresh};
  }

  const std::vector<Finding>& findings() const { return findings_; }
  std::size_t size() const { return findings_.size(); }

 private:
  using Key = std::tuple<std::uint32_t, FaultClass, int, SwitchId>;
  int bucket_shift_;
  std::map<Key, std::size_t> index_;
  std::vector<Finding> findings_;
};

inline std::string FormatVerdictLine(const Verdict& v, double time, int width) {
  return fmt::format(
      "verdict t={:.6f} outcome={} class={} loc={} hdr={} egress={} "
      "port=0x{:08x} rule=0x{:04x} candidates={}",
      time, v.outcome == Outcome::kFault ? "fault" : "consistent",
      FaultClassName(v.fault_class),
      v.localization.kind == Localization::Kind::kSwitch
          ? fmt::format("s{}{}", v.localization.sw,
                        v.localization.ambiguous ? "?" : "")
      : v.localization.kind == Localization::Kind::kRuleHint
          ? fmt::format("hint:s{}", v.localization.sw)
      : v.localization.kind == Localization::Kind::kManual ? std::string("manual")
                                                            : std::string("-"),
      FormatHeader(v.actual.header, width), ToString(v.actual.egress),
      v.actual.tag.verify_port, v.actual.tag.verify_rule, v.evidence.size());
}

inline nlohmann::json VerdictToJson(const Verdict& v, int width) {
  nlohmann::json j;
  j["outcome"] = v.outcome == Outcome::kFault ? "fault" : "consistent";
  j["class"] = std::string(FaultClassName(v.fault_class));
  j["localization"] = ToString(v.localization);
  j["header"] = FormatHeader(v.actual.header, width);
  j["egress"] = ToString(v.actual.egress);
  j["verify_port"] = v.actual.tag.verify_port;
  j["verify_rule"] = v.actual.tag.verify_rule;
  j["candidates"] = v.evidence.size();
  if (v.failing_hop) j["failing_hop"] = *v.failing_hop;
  return j;
}

// Alarm for a critical flow that has gone quiet.
class BlackholeWatch {
 public:
  BlackholeWatch(PortPair pair, HeaderSet flow, double timeout,
                 double start = 0.0)
      : pair_(pair), flow_(std::move(flow)), timeout_(timeout), last_(start) {}

  // Feed every sampled report; those of the watched flow reset the timer.
  void Observe(const ActualReport& r, double now) {
    if (r.entry && *r.entry == pair_.src && r.egress == pair_.dst &&
        flow_.Contains(r.header)) {
      last_ = now;
    }
  }

  bool Alarm(double now) const { return now - last_ >= timeout_; }
  double last_seen() const { return last_; }

 private:
  PortPair pair_;
  HeaderSet flow_;
  double timeout_;
  double last_;
};

}  // namespace pazz

#endif  // PAZZ_TESTER_CONSISTENCY_TESTER_HPP_
