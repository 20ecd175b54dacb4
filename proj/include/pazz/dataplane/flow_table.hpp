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

#ifndef PAZZ_DATAPLANE_FLOW_TABLE_HPP_
#define PAZZ_DATAPLANE_FLOW_TABLE_HPP_

#include <algorithm>
#include <map>
#include <vector>

#include "pazz/common/log.hpp"
#include "pazz/headerspace/header_set.hpp"
#include "pazz/netmodel/flow_rule.hpp"

namespace pazz {

// Two equal-priority rules in one table overlap on a shared inport; the lower
// rule id (`winner`) shadows the other on the overlap.
struct TieWarning {
  RuleKey winner;
  RuleKey loser;
  PortId inport = 0;
  friend bool operator==(const TieWarning&, const TieWarning&) = default;
};

// The flow tables of one switch, compiled per inport into a sorted interval
// index so a lookup is a binary search.
class SwitchPipeline {
 public:
  SwitchPipeline(SwitchId sw, const std::vector<PortId>& ports,
                 const std::vector<const FlowRule*>& rules)
      : sw_(sw) {
    rules_.reserve(rules.size());
    for (const FlowRule* r : rules) rules_.push_back(*r);
    std::sort(rules_.begin(), rules_.end(), PrecedesInLookup);
    for (PortId p : ports) Compile(p);
  }

  SwitchId id() const { return sw_; }
  const std::vector<FlowRule>& rules() const { return rules_; }
  const std::vector<TieWarning>& ties() const { return ties_; }

  // First rule in lookup order for (inport, header), or nullptr (drop).
  const FlowRule* Lookup(PortId inport, Header h) const {
    auto it = index_.find(inport);
    if (it == index_.end()) return nullptr;
    const auto& entries = it->second;
    auto e = std::upper_bound(
        entries.begin(), entries.end(), h,
        [](Header v, const Entry& x) { return v < x.lo; });
    if (e == entries.begin()) return nullptr;
    --e;
    return h <= e->hi ? &rules_[e->rule] : nullptr;
  }

  // Reference lookup by scanning every rule.
  const FlowRule* LookupLinear(PortId inport, Header h) const {
    for (const FlowRule& r : rules_) {
      if (r.AppliesTo(inport) && r.match.Contains(h)) return &r;
    }
    return nullptr;
  }

  // Highest-priority match within a single table.
  const FlowRule* LookupInTable(TableId table, PortId inport, Header h) const {
    for (const FlowRule& r : rules_) {
      if (r.table == table && r.AppliesTo(inport) && r.match.Contains(h)) {
        return &r;
      }
    }
    return nullptr;
  }

 private:
  struct Entry {
    Header lo;
    Header hi;
    std::size_t rule;
  };

  void Compile(PortId port) {
    const int width = rules_.empty() ? kDefaultHeaderWidth
                                     : rules_.front().match.width();
    IntervalAccumulator taken(width);
    IntervalAccumulator group(width);
    std::vector<std::size_t> group_members;
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      const FlowRule& r = rules_[i];
      if (!r.AppliesTo(port)) continue;
      if (group_members.empty() ||
          rules_[group_members.front()].table != r.table ||
          rules_[group_members.front()].priority != r.priority) {
        group = IntervalAccumulator(width);
        group_members.clear();
      }
      if (group.Intersects(r.match)) ReportTies(group_members, i, port);
      group.Add(r.match);
      group_members.push_back(i);

      const HeaderSet effective = taken.Subtract(r.match);
      for (const Interval& iv : effective.intervals()) {
        entries.push_back({iv.lo, iv.hi, i});
      }
      taken.Add(r.match);
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.lo < b.lo; });
    index_[port] = std::move(entries);
  }

  void ReportTies(const std::vector<std::size_t>& earlier, std::size_t i,
                  PortId port) {
    for (std::size_t j : earlier) {
      if (!rules_[j].match.Intersects(rules_[i].match)) continue;
      TieWarning w{rules_[j].key(), rules_[i].key(), port};
      Log().warn("equal-priority overlap on {} inport {}: {} wins over {}",
                 sw_, port, ToString(w.winner), ToString(w.loser));
      ties_.push_back(w);
    }
  }

  SwitchId sw_;
  std::vector<FlowRule> rules_;
  std::map<PortId, std::vector<Entry>> index_;
  std::vector<TieWarning> ties_;
};

}  // namespace pazz

#endif  // PAZZ_DATAPLANE_FLOW_TABLE_HPP_
