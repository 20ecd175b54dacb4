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

#ifndef PAZZ_NETMODEL_FLOW_RULE_HPP_
#define PAZZ_NETMODEL_FLOW_RULE_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pazz/common/error.hpp"
#include "pazz/headerspace/header_set.hpp"
#include "pazz/netmodel/topology.hpp"

namespace pazz {

using TableId = std::uint16_t;
using RuleId = std::uint32_t;

// (switch, table, rule): the globally unique rule identity.
struct RuleKey {
  SwitchId sw = 0;
  TableId table = 0;
  RuleId rule = 0;

  friend bool operator==(const RuleKey&, const RuleKey&) = default;
  friend auto operator<=>(const RuleKey&, const RuleKey&) = default;
};

inline std::string ToString(const RuleKey& k) {
  return "s" + std::to_string(k.sw) + "/t" + std::to_string(k.table) + "/r" +
         std::to_string(k.rule);
}

struct FlowRule {
  SwitchId sw = 0;
  TableId table = 0;
  RuleId id = 0;
  std::uint32_t priority = 0;  // larger wins
  std::vector<PortId> in_ports;   // empty: any port
  HeaderSet match;
  std::vector<PortId> out_ports;  // empty: explicit drop
  bool hidden = false;            // invisible to the control plane

  RuleKey key() const { return {sw, table, id}; }
  bool IsDrop() const { return out_ports.empty(); }

  bool AppliesTo(PortId inport) const {
    return in_ports.empty() ||
           std::find(in_ports.begin(), in_ports.end(), inport) !=
               in_ports.end();
  }

  friend bool operator==(const FlowRule&, const FlowRule&) = default;
};

// Lookup order inside one switch: lower table first, then higher priority,
// then lower rule id. A packet is handled by the first rule in this order
// that applies to its inport and matches its header.
inline bool PrecedesInLookup(const FlowRule& a, const FlowRule& b) {
  if (a.table != b.table) return a.table < b.table;
  if (a.priority != b.priority) return a.priority > b.priority;
  return a.id < b.id;
}

// The rule set of a network. Iteration is ordered by RuleKey.
class Config {
 public:
  explicit Config(int width = kDefaultHeaderWidth) : width_(width) {
    CheckWidth(width);
  }

  int width() const { return width_; }
  std::size_t size() const { return rules_.size(); }
  const std::map<RuleKey, FlowRule>& rules() const { return rules_; }

  void Add(FlowRule rule) {
    if (rule.match.width() != width_) {
      throw Error(ErrorCode::kInvalidArgument,
                  "rule " + ToString(rule.key()) + " has wrong header width");
    }
    const RuleKey key = rule.key();
    if (!rules_.emplace(key, std::move(rule)).second) {
      throw Error(ErrorCode::kDuplicateRule,
                  "duplicate rule " + ToString(key));
    }
  }

  // Inserts or overwrites.
  void Put(FlowRule rule) {
    const RuleKey key = rule.key();
    rules_.insert_or_assign(key, std::move(rule));
  }

  void Remove(const RuleKey& key) {
    if (rules_.erase(key) == 0) {
      throw Error(ErrorCode::kNotFound, "no rule " + ToString(key));
    }
  }

  const FlowRule* Find(const RuleKey& key) const {
    auto it = rules_.find(key);
    return it == rules_.end() ? nullptr : &it->second;
  }

  std::vector<const FlowRule*> RulesOf(SwitchId sw) const {
    std::vector<const FlowRule*> out;
    for (auto it = rules_.lower_bound({sw, 0, 0});
         it != rules_.end() && it->first.sw == sw; ++it) {
      out.push_back(&it->second);
    }
    return out;
  }

  // The control-plane view: everything not marked hidden.
  Config Visible() const {
    Config out(width_);
    for (const auto& [key, rule] : rules_) {
      if (!rule.hidden) out.rules_.emplace(key, rule);
    }
    return out;
  }

  RuleId NextRuleId(SwitchId sw, TableId table) const {
    RuleId next = 0;
    for (const FlowRule* r : RulesOf(sw)) {
      if (r->table == table) next = std::max(next, r->id + 1);
    }
    return next;
  }

  std::uint32_t MaxPriority(SwitchId sw) const {
    std::uint32_t best = 0;
    for (const FlowRule* r : RulesOf(sw)) best = std::max(best, r->priority);
    return best;
  }

  // Checks every rule against the topology: the switch exists and every
  // in/out port is a port of that switch.
  void Validate(const Topology& topo) const {
    for (const auto& [key, rule] : rules_) {
      if (!topo.HasSwitch(rule.sw)) {
        throw Error(ErrorCode::kValidation,
                    "rule " + ToString(key) + " names unknown switch");
      }
      for (const auto* ports : {&rule.in_ports, &rule.out_ports}) {
        for (PortId p : *ports) {
          if (!topo.HasPort({rule.sw, p})) {
            throw Error(ErrorCode::kUnknownPort,
                        "rule " + ToString(key) + " uses port " +
                            std::to_string(p) + " not on switch " +
                            std::to_string(rule.sw));
          }
        }
      }
    }
  }

  friend bool operator==(const Config&, const Config&) = default;

 private:
  int width_;
  std::map<RuleKey, FlowRule> rules_;
};

}  // namespace pazz

#endif  // PAZZ_NETMODEL_FLOW_RULE_HPP_
