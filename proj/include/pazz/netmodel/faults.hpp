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

#ifndef PAZZ_NETMODEL_FAULTS_HPP_
#define PAZZ_NETMODEL_FAULTS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "pazz/common/error.hpp"
#include "pazz/headerspace/header_set.hpp"
#include "pazz/netmodel/flow_rule.hpp"

namespace pazz {

enum class FaultKind { kTypePMatch, kTypePAction, kTypeAHidden };

inline std::string_view FaultKindName(FaultKind kind) {
  switch (kind) {
    case FaultKind::kTypePMatch: return "type_p_match";
    case FaultKind::kTypePAction: return "type_p_action";
    case FaultKind::kTypeAHidden: return "type_a_hidden";
  }
  return "?";
}

inline FaultKind ParseFaultKind(std::string_view name) {
  if (name == "type_p_match") return FaultKind::kTypePMatch;
  if (name == "type_p_action") return FaultKind::kTypePAction;
  if (name == "type_a_hidden") return FaultKind::kTypeAHidden;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown fault kind '" + std::string(name) + "'");
}

inline bool IsTypeP(FaultKind kind) { return kind != FaultKind::kTypeAHidden; }

// A data-plane mutation. When `replaces` is set the rule with that key is
// overwritten by `rule` (match or action faults on an existing rule);
// otherwise `rule` is inserted as a hidden rule.
struct FaultSpec {
  FaultKind kind = FaultKind::kTypePMatch;
  SwitchId target = 0;
  std::optional<RuleKey> replaces;
  FlowRule rule;
  // Headers whose forwarding the fault changes.
  HeaderSet affected;
  // Planner annotation: whether the affected headers leave the expected path.
  bool changes_path = false;
};

struct GroundTruth {
  std::size_t fault_id = 0;
  FaultSpec spec;
};

// Applies one fault to a data-plane config. `entry_predicate` is the
// control-plane S_i of the pair the fault is aimed at: Type-a faults must
// avoid it and Type-p faults must intersect it.
inline std::pair<Config, GroundTruth> InjectFault(
    const Config& config, const FaultSpec& spec,
    const HeaderSet& entry_predicate, std::size_t fault_id = 0) {
  if (spec.rule.sw != spec.target) {
    throw Error(ErrorCode::kInvalidFault,
                "fault rule lives on s" + std::to_string(spec.rule.sw) +
                    " but targets s" + std::to_string(spec.target));
  }
  if (spec.affected.IsEmpty()) {
    throw Error(ErrorCode::kInvalidFault, "fault affects no headers");
  }
  if (spec.kind == FaultKind::kTypeAHidden) {
    if (spec.affected.Intersects(entry_predicate) ||
        spec.rule.match.Intersects(entry_predicate)) {
      throw Error(ErrorCode::kInvalidFault,
                  "type_a fault overlaps the entry predicate: " +
                      spec.affected.Intersect(entry_predicate).ToString());
    }
  } else if (!spec.affected.Intersects(entry_predicate)) {
    throw Error(ErrorCode::kInvalidFault,
                "type_p fault misses production space: " +
                    spec.affected.ToString());
  }

  Config mutated = config;
  FlowRule rule = spec.rule;
  if (spec.replaces) {
    if (config.Find(*spec.replaces) == nullptr) {
      throw Error(ErrorCode::kNotFound,
                  "fault replaces unknown rule " + ToString(*spec.replaces));
    }
    if (rule.key() != *spec.replaces) mutated.Remove(*spec.replaces);
    mutated.Put(std::move(rule));
  } else {
    rule.hidden = true;
    mutated.Add(std::move(rule));
  }
  return {std::move(mutated), GroundTruth{fault_id, spec}};
}

}  // namespace pazz

#endif  // PAZZ_NETMODEL_FAULTS_HPP_
