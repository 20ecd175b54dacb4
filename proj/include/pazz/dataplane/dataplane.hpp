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

#ifndef PAZZ_DATAPLANE_DATAPLANE_HPP_
#define PAZZ_DATAPLANE_DATAPLANE_HPP_

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pazz/common/error.hpp"
#include "pazz/dataplane/flow_table.hpp"
#include "pazz/dataplane/verify_tag.hpp"
#include "pazz/headerspace/header_set.hpp"
#include "pazz/netmodel/flow_rule.hpp"
#include "pazz/netmodel/topology.hpp"

namespace pazz {

// One switch traversal: arrival port, matched rule, and the port this copy
// left through.
struct Hop {
  SwitchId sw = 0;
  PortId inport = 0;
  RuleKey rule;
  PortId outport = 0;
  friend bool operator==(const Hop&, const Hop&) = default;
};

struct PacketInFlight {
  Header header = 0;
  std::optional<VerifyTag> tag;
  SwitchId sw = 0;
  PortId inport = 0;
  // Where the packet was tagged on entry; unset for mid-path injections.
  std::optional<Endpoint> entry;
  std::uint32_t hops = 0;
  std::vector<Hop> trace;  // filled only when tracing is enabled
};

struct ActualReport {
  std::optional<Endpoint> entry;
  Endpoint egress;
  Header header = 0;
  VerifyTag tag;
};

enum class DropReason { kNoMatch, kDropRule, kDeadEnd };

struct DataPlaneOptions {
  TaggingOptions tagging;
  std::uint32_t hop_budget = 64;
  bool record_trace = false;
};

// Collects the outcome of one Step().
struct StepResult {
  std::vector<PacketInFlight> forwarded;
  std::vector<std::pair<ActualReport, std::vector<Hop>>> delivered;
  std::vector<DropReason> dropped;
  bool looped = false;

  void Forward(PacketInFlight&& p) { forwarded.push_back(std::move(p)); }
  void Deliver(ActualReport&& r, const PacketInFlight& p) {
    delivered.emplace_back(std::move(r), p.trace);
  }
  void Drop(const PacketInFlight&, DropReason why) { dropped.push_back(why); }
  void Loop(const PacketInFlight&) { looped = true; }
};

// The data plane of the whole network: every switch pipeline plus the
// tagging actions. Stateless between packets.
class DataPlane {
 public:
  DataPlane(const Topology& topo, const Config& config,
            DataPlaneOptions opts = {})
      : topo_(std::make_shared<const Topology>(topo)),
        opts_(opts),
        width_(config.width()),
        switches_(std::make_shared<SwitchMap>()) {
    for (const auto& [sw, ports] : topo.switches()) {
      switches_->emplace(sw, CompileSwitch(sw, config));
    }
  }

  // A data plane identical to this one except that switch `sw` runs the
  // rules `config` holds for it. Other switches are shared, not recompiled.
  DataPlane WithSwitch(SwitchId sw, const Config& config) const {
    DataPlane copy = *this;
    copy.switches_ = std::make_shared<SwitchMap>(*switches_);
    (*copy.switches_)[sw] = copy.CompileSwitch(sw, config);
    return copy;
  }

  const Topology& topology() const { return *topo_; }
  const DataPlaneOptions& options() const { return opts_; }
  int width() const { return width_; }

  const SwitchPipeline& Pipeline(SwitchId sw) const {
    return SwitchAt(sw).pipeline;
  }

  std::vector<TieWarning> Ties() const {
    std::vector<TieWarning> out;
    for (const auto& [sw, s] : *switches_) {
      const auto& ties = s->pipeline.ties();
      out.insert(out.end(), ties.begin(), ties.end());
    }
    return out;
  }

  // Single-table lookup; nullptr means drop.
  const FlowRule* MatchRule(SwitchId sw, TableId table, PortId inport,
                            Header h) const {
    return SwitchAt(sw).pipeline.LookupInTable(table, inport, h);
  }

  // Whole-switch lookup: tables in ascending order, a miss falls through.
  const FlowRule* MatchSwitch(SwitchId sw, PortId inport, Header h) const {
    return SwitchAt(sw).pipeline.Lookup(inport, h);
  }

  // A packet arriving at a port from outside the network.
  PacketInFlight Inject(Endpoint at, Header h) const {
    if (!topo_->HasPort(at)) {
      throw Error(ErrorCode::kUnknownPort, "inject at unknown " + ToString(at));
    }
    PacketInFlight p;
    p.header = h;
    p.sw = at.sw;
    p.inport = at.port;
    return p;
  }

  // Processes one packet at its current switch. The sink receives every
  // forwarded copy, delivery, drop or loop.
  template <typename Sink>
  void Step(PacketInFlight&& p, Sink& sink) const {
    const Switch& s = SwitchAt(p.sw);
    const PortState& in = s.ports.at(p.inport);
    const bool tagging = opts_.tagging.enabled;
    if (tagging && !p.tag && in.is_source) {
      p.tag = VerifyTag{opts_.tagging.ethertype, in.mask, 1};
      p.entry = Endpoint{p.sw, p.inport};
    } else if (!p.entry && in.is_source) {
      p.entry = Endpoint{p.sw, p.inport};
    }
    const FlowRule* rule = s.pipeline.Lookup(p.inport, p.header);
    if (rule == nullptr) {
      sink.Drop(p, DropReason::kNoMatch);
      return;
    }
    if (rule->IsDrop()) {
      sink.Drop(p, DropReason::kDropRule);
      return;
    }
    if (p.tag) {
      p.tag->verify_port |= in.mask;
      SetRule(*p.tag, rule->key());
    }
    const std::size_t n = rule->out_ports.size();
    for (std::size_t i = 0; i < n; ++i) {
      const PortId out = rule->out_ports[i];
      PacketInFlight copy = i + 1 == n ? std::move(p) : p;
      if (opts_.record_trace) {
        copy.trace.push_back({copy.sw, copy.inport, rule->key(), out});
      }
      const auto ps = s.ports.find(out);
      if (ps == s.ports.end()) {
        sink.Drop(copy, DropReason::kDeadEnd);
        continue;
      }
      if (ps->second.is_destination) {
        if (tagging && !copy.tag) {
          VerifyTag t{opts_.tagging.ethertype, in.mask, 1};
          SetRule(t, rule->key());
          copy.tag = t;
        }
        ActualReport r;
        r.entry = copy.entry;
        r.egress = {copy.sw, out};
        r.header = copy.header;
        if (copy.tag) r.tag = *copy.tag;
        copy.tag.reset();  // pop_verify
        sink.Deliver(std::move(r), copy);
        continue;
      }
      if (!ps->second.peer) {
        sink.Drop(copy, DropReason::kDeadEnd);
        continue;
      }
      if (copy.hops + 1 > opts_.hop_budget) {
        sink.Loop(copy);
        continue;
      }
      copy.sw = ps->second.peer->sw;
      copy.inport = ps->second.peer->port;
      ++copy.hops;
      sink.Forward(std::move(copy));
    }
  }

  StepResult Step(PacketInFlight p) const {
    StepResult r;
    Step(std::move(p), r);
    return r;
  }

  struct Delivery {
    ActualReport report;
    std::vector<Hop> trace;
  };

  struct TraceResult {
    std::vector<Delivery> delivered;
    std::size_t dropped = 0;
    std::size_t looped = 0;
    // Every copy's hops, including copies that were dropped or looped.
    std::vector<std::vector<Hop>> all_traces;
  };

  // Runs one packet to completion with tracing on, breadth first.
  TraceResult Trace(Endpoint at, Header h) const {
    struct Collector {
      TraceResult out;
      std::deque<PacketInFlight> queue;
      void Forward(PacketInFlight&& p) { queue.push_back(std::move(p)); }
      void Deliver(ActualReport&& r, const PacketInFlight& p) {
        out.delivered.push_back({std::move(r), p.trace});
        out.all_traces.push_back(p.trace);
      }
      void Drop(const PacketInFlight& p, DropReason) {
        ++out.dropped;
        out.all_traces.push_back(p.trace);
      }
      void Loop(const PacketInFlight& p) {
        ++out.looped;
        out.all_traces.push_back(p.trace);
      }
    };
    Collector c;
    DataPlane traced = WithTrace();
    c.queue.push_back(traced.Inject(at, h));
    while (!c.queue.empty()) {
      PacketInFlight p = std::move(c.queue.front());
      c.queue.pop_front();
      traced.Step(std::move(p), c);
    }
    return std::move(c.out);
  }

 private:
  struct PortState {
    std::uint32_t mask = 0;
    std::optional<Endpoint> peer;
    bool is_source = false;
    bool is_destination = false;
  };
  struct Switch {
    SwitchPipeline pipeline;
    std::unordered_map<PortId, PortState> ports;
  };

  const Switch& SwitchAt(SwitchId sw) const {
    auto it = switches_->find(sw);
    if (it == switches_->end()) {
      throw Error(ErrorCode::kNotFound, "no switch " + std::to_string(sw));
    }
    return *it->second;
  }

  std::shared_ptr<const Switch> CompileSwitch(SwitchId sw,
                                              const Config& config) const {
    const auto& ports = topo_->Ports(sw);
    auto s = std::make_shared<Switch>(
        Switch{SwitchPipeline(sw, ports, config.RulesOf(sw)), {}});
    for (PortId p : ports) {
      PortState ps;
      ps.mask = BloomMask(HashUp(sw, p), opts_.tagging.bit_order);
      ps.peer = topo_->Peer({sw, p});
      ps.is_source = topo_->IsSource({sw, p});
      ps.is_destination = topo_->IsDestination({sw, p});
      s->ports.emplace(p, ps);
    }
    return s;
  }

  // A copy sharing the compiled pipelines, with tracing enabled.
  DataPlane WithTrace() const {
    DataPlane copy = *this;
    copy.opts_.record_trace = true;
    return copy;
  }

  using SwitchMap = std::unordered_map<SwitchId, std::shared_ptr<const Switch>>;

  std::shared_ptr<const Topology> topo_;
  DataPlaneOptions opts_;
  int width_;
  std::shared_ptr<SwitchMap> switches_;
};

}  // namespace pazz

#endif  // PAZZ_DATAPLANE_DATAPLANE_HPP_
