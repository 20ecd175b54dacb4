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

#ifndef PAZZ_NETMODEL_TOPOLOGY_HPP_
#define PAZZ_NETMODEL_TOPOLOGY_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pazz/common/error.hpp"

namespace pazz {

using SwitchId = std::uint32_t;
using PortId = std::uint32_t;

// A (switch, local port) pair.
struct Endpoint {
  SwitchId sw = 0;
  PortId port = 0;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

inline std::string ToString(const Endpoint& e) {
  return std::to_string(e.sw) + "/" + std::to_string(e.port);
}

struct Link {
  Endpoint a;
  Endpoint b;
  friend bool operator==(const Link&, const Link&) = default;
};

// An ingress/egress pair that traffic is injected at and observed from.
struct PortPair {
  Endpoint src;
  Endpoint dst;
  friend bool operator==(const PortPair&, const PortPair&) = default;
  friend auto operator<=>(const PortPair&, const PortPair&) = default;
};

// Switches, their ports, the links between them, and the designated
// ingress/egress edge ports. Immutable once built; construct through
// Topology::Builder, which validates.
class Topology {
 public:
  class Builder;

  const std::map<SwitchId, std::vector<PortId>>& switches() const {
    return ports_;
  }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Endpoint>& sources() const { return sources_; }
  const std::vector<Endpoint>& destinations() const { return destinations_; }

  bool HasSwitch(SwitchId sw) const { return ports_.count(sw) != 0; }

  bool HasPort(Endpoint e) const {
    auto it = ports_.find(e.sw);
    return it != ports_.end() &&
           std::binary_search(it->second.begin(), it->second.end(), e.port);
  }

  const std::vector<PortId>& Ports(SwitchId sw) const {
    auto it = ports_.find(sw);
    if (it == ports_.end()) {
      throw Error(ErrorCode::kNotFound, "no switch " + std::to_string(sw));
    }
    return it->second;
  }

  // The far end of the link attached to `e`, if any.
  std::optional<Endpoint> Peer(Endpoint e) const {
    auto it = peer_.find(e);
    if (it == peer_.end()) return std::nullopt;
    return it->second;
  }

  bool IsSource(Endpoint e) const {
    return std::find(sources_.begin(), sources_.end(), e) != sources_.end();
  }
  bool IsDestination(Endpoint e) const {
    return std::find(destinations_.begin(), destinations_.end(), e) !=
           destinations_.end();
  }

  // Every (source, destination) combination.
  std::vector<PortPair> Pairs() const {
    std::vector<PortPair> out;
    for (const Endpoint& s : sources_) {
      for (const Endpoint& d : destinations_) out.push_back({s, d});
    }
    return out;
  }

  // Switches adjacent to `sw`, keyed by the local port that reaches them.
  std::vector<std::pair<PortId, Endpoint>> Neighbors(SwitchId sw) const {
    std::vector<std::pair<PortId, Endpoint>> out;
    for (PortId p : Ports(sw)) {
      if (auto peer = Peer({sw, p})) out.emplace_back(p, *peer);
    }
    return out;
  }

  // Hop distance (in links) from every switch to `target`.
  std::map<SwitchId, int> DistancesTo(SwitchId target) const {
    std::map<SwitchId, int> dist;
    std::queue<SwitchId> frontier;
    dist[target] = 0;
    frontier.push(target);
    while (!frontier.empty()) {
      SwitchId cur = frontier.front();
      frontier.pop();
      for (const auto& [port, peer] : Neighbors(cur)) {
        if (dist.emplace(peer.sw, dist[cur] + 1).second) frontier.push(peer.sw);
      }
    }
    return dist;
  }

  friend bool operator==(const Topology& a, const Topology& b) {
    return a.ports_ == b.ports_ && a.links_ == b.links_ &&
           a.sources_ == b.sources_ && a.destinations_ == b.destinations_;
  }

 private:
  std::map<SwitchId, std::vector<PortId>> ports_;
  std::vector<Link> links_;
  std::vector<Endpoint> sources_;
  std::vector<Endpoint> destinations_;
  std::map<Endpoint, Endpoint> peer_;
};

class Topology::Builder {
 public:
  Builder& AddSwitch(SwitchId sw, std::vector<PortId> ports) {
    std::sort(ports.begin(), ports.end());
    if (std::adjacent_find(ports.begin(), ports.end()) != ports.end()) {
      throw Error(ErrorCode::kValidation,
                  "duplicate port on switch " + std::to_string(sw));
    }
    if (!topo_.ports_.emplace(sw, std::move(ports)).second) {
      throw Error(ErrorCode::kValidation,
                  "duplicate switch " + std::to_string(sw));
    }
    return *this;
  }

  Builder& AddLink(Endpoint a, Endpoint b) {
    for (const Endpoint& e : {a, b}) {
      if (!topo_.HasPort(e)) {
        throw Error(ErrorCode::kDanglingLink,
                    "link endpoint " + ToString(e) + " does not exist");
      }
      if (topo_.peer_.count(e) != 0) {
        throw Error(ErrorCode::kValidation,
                    "port " + ToString(e) + " is already linked");
      }
    }
    if (a == b) {
      throw Error(ErrorCode::kValidation, "self-link at " + ToString(a));
    }
    topo_.peer_[a] = b;
    topo_.peer_[b] = a;
    topo_.links_.push_back({a, b});
    return *this;
  }

  Builder& AddSource(Endpoint e) {
    topo_.sources_.push_back(e);
    return *this;
  }
  Builder& AddDestination(Endpoint e) {
    topo_.destinations_.push_back(e);
    return *this;
  }

  Topology Build() const {
    for (const auto* list : {&topo_.sources_, &topo_.destinations_}) {
      for (const Endpoint& e : *list) {
        if (!topo_.HasPort(e)) {
          throw Error(ErrorCode::kUnknownPort,
                      "designated port " + ToString(e) + " does not exist");
        }
        if (topo_.peer_.count(e) != 0) {
          throw Error(ErrorCode::kValidation,
                      "designated port " + ToString(e) + " must be link-free");
        }
      }
    }
    if (!topo_.ports_.empty()) {
      const auto dist = topo_.DistancesTo(topo_.ports_.begin()->first);
      if (dist.size() != topo_.ports_.size()) {
        throw Error(ErrorCode::kValidation, "topology is not connected");
      }
    }
    return topo_;
  }

 private:
  Topology topo_;
};

}  // namespace pazz

#endif  // PAZZ_NETMODEL_TOPOLOGY_HPP_
