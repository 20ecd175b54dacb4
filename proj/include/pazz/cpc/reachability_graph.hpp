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

#ifndef PAZZ_CPC_REACHABILITY_GRAPH_HPP_
#define PAZZ_CPC_REACHABILITY_GRAPH_HPP_

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pazz/common/error.hpp"
#include "pazz/dataplane/verify_tag.hpp"
#include "pazz/headerspace/header_set.hpp"
#include "pazz/netmodel/flow_rule.hpp"
#include "pazz/netmodel/topology.hpp"

namespace pazz {

using NodeId = std::uint32_t;

// A rule as seen from one of its inports.
struct NodeKey {
  RuleKey rule;
  PortId inport = 0;
  friend bool operator==(const NodeKey&, const NodeKey&) = default;
  friend auto operator<=>(const NodeKey&, const NodeKey&) = default;
};

inline std::string ToString(const NodeKey& k) {
  return ToString(k.rule) + "@" + std::to_string(k.inport);
}

struct RuleNode {
  FlowRule rule;
  PortId inport = 0;
  // The rule's match minus every rule ahead of it in lookup order that also
  // applies to `inport`.
  HeaderSet effective;
  std::vector<NodeId> next;
  std::vector<NodeId> prev;
  bool alive = true;

  NodeKey key() const { return {rule.key(), inport}; }
};

// One hop of a path class: the node and the port this branch leaves by.
struct PathHop {
  NodeId node = 0;
  PortId outport = 0;
};

// Headers that share one rule sequence from source to destination.
struct PathClass {
  HeaderSet region;
  std::vector<PathHop> hops;
};

struct ExpectedHop {
  SwitchId sw = 0;
  PortId inport = 0;
  RuleKey rule;
  PortId outport = 0;
  std::uint32_t digest = 0;  // bloom bits of this hop's u_p
  friend bool operator==(const ExpectedHop&, const ExpectedHop&) = default;
};

struct ExpectedReport {
  PortPair pair;
  Header header = 0;
  std::vector<ExpectedHop> path;
  VerifyTag tag;
  friend bool operator==(const ExpectedReport&, const ExpectedReport&) = default;
};

struct Corpus {
  HeaderSet entry;  // S_i
  HeaderSet exit;   // S_e
  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct RuleUpdate {
  enum class Kind { kAdd, kDelete };
  Kind kind = Kind::kAdd;
  FlowRule rule;  // for deletes only the key fields are used

  static RuleUpdate Add(FlowRule r) { return {Kind::kAdd, std::move(r)}; }
  static RuleUpdate Delete(const RuleKey& k) {
    FlowRule r;
    r.sw = k.sw;
    r.table = k.table;
    r.id = k.rule;
    return {Kind::kDelete, std::move(r)};
  }
};

// Structure-only view used to compare an incrementally updated graph with a
// fresh build.
struct GraphCanonical {
  std::map<NodeKey, HeaderSet> effective;
  std::set<std::pair<NodeKey, NodeKey>> edges;
  std::map<std::tuple<SwitchId, PortId, PortId>, HeaderSet> predicates;
  friend bool operator==(const GraphCanonical&, const GraphCanonical&) = default;
};

class ReachabilityGraph {
 public:
  using PortKey = std::pair<SwitchId, PortId>;
  using PredicateKey = std::tuple<SwitchId, PortId, PortId>;

  // Builds from the control-plane view; hidden rules are ignored.
  static ReachabilityGraph Build(const Topology& topo, const Config& config,
                                 TaggingOptions tagging = {}) {
    const auto start = std::chrono::steady_clock::now();
    ReachabilityGraph g(topo, config.Visible(), tagging);
    for (const auto& [sw, ports] : topo.switches()) {
      for (PortId p : ports) g.RebuildPort({sw, p});
    }
    for (NodeId id = 0; id < g.nodes_.size(); ++id) g.ComputeEdges(id);
    g.RebuildInverse();
    for (const auto& [sw, ports] : topo.switches()) {
      for (PortId p : ports) g.RecomputePredicates({sw, p});
    }
    g.build_seconds_ = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    return g;
  }

  ReachabilityGraph(const ReachabilityGraph& o)
      : topo_(o.topo_),
        config_(o.config_),
        tagging_(o.tagging_),
        nodes_(o.nodes_),
        ids_(o.ids_),
        ports_(o.ports_),
        predicates_(o.predicates_),
        build_seconds_(o.build_seconds_) {
    std::lock_guard<std::mutex> lock(o.memo_mu_);
    memo_ = o.memo_;
  }
  ReachabilityGraph(ReachabilityGraph&& o) noexcept
      : topo_(std::move(o.topo_)),
        config_(std::move(o.config_)),
        tagging_(o.tagging_),
        nodes_(std::move(o.nodes_)),
        ids_(std::move(o.ids_)),
        ports_(std::move(o.ports_)),
        predicates_(std::move(o.predicates_)),
        memo_(std::move(o.memo_)),
        build_seconds_(o.build_seconds_) {}
  ReachabilityGraph& operator=(const ReachabilityGraph&) = delete;
  ReachabilityGraph& operator=(ReachabilityGraph&&) = delete;

  const Topology& topology() const { return *topo_; }
  const Config& config() const { return config_; }
  int width() const { return config_.width(); }
  double build_seconds() const { return build_seconds_; }

  std::size_t NodeCount() const { return ids_.size(); }

  const RuleNode& node(NodeId id) const { return nodes_.at(id); }

  const RuleNode* Find(const NodeKey& key) const {
    auto it = ids_.find(key);
    return it == ids_.end() ? nullptr : &nodes_[it->second];
  }

  // Live nodes at an arrival port, in lookup order.
  std::vector<NodeId> NodesAt(Endpoint at) const {
    auto it = ports_.find({at.sw, at.port});
    return it == ports_.end() ? std::vector<NodeId>{} : it->second.order;
  }

  // S_{i,j}: headers entering `sw` at i and leaving at j.
  HeaderSet SwitchPredicate(SwitchId sw, PortId in, PortId out) const {
    auto it = predicates_.find({sw, in, out});
    return it == predicates_.end() ? HeaderSet::Empty(width()) : it->second;
  }

  const std::map<PredicateKey, HeaderSet>& predicates() const {
    return predicates_;
  }

  // S_i is everything the entry switch forwards from the source port; S_e is
  // everything the exit switch sends out of the destination port.
  Corpus CorpusFor(Endpoint src, Endpoint dst) const {
    IntervalAccumulator entry(width()), exit(width());
    for (auto it = predicates_.lower_bound({src.sw, src.port, 0});
         it != predicates_.end() && std::get<0>(it->first) == src.sw &&
         std::get<1>(it->first) == src.port;
         ++it) {
      entry.Add(it->second);
    }
    for (auto it = predicates_.lower_bound({dst.sw, 0, 0});
         it != predicates_.end() && std::get<0>(it->first) == dst.sw; ++it) {
      if (std::get<2>(it->first) == dst.port) exit.Add(it->second);
    }
    return {entry.ToHeaderSet(), exit.ToHeaderSet()};
  }

  HeaderSet Reachable(Endpoint src, Endpoint dst) const {
    return Memo(src, dst)->reachable;
  }

  const std::vector<PathClass>& PathClasses(Endpoint src, Endpoint dst) const {
    return Memo(src, dst)->classes;
  }

  // Expected reports for a header from the cached forward path classes.
  std::vector<ExpectedReport> ExpectedReports(Header h, Endpoint src,
                                              Endpoint dst) const {
    auto memo = Memo(src, dst);
    std::vector<ExpectedReport> out;
    const auto& segs = memo->segments;
    auto it = std::upper_bound(
        segs.begin(), segs.end(), h,
        [](Header v, const Segment& s) { return v < s.lo; });
    if (it == segs.begin()) return out;
    --it;
    if (h > it->hi) return out;
    for (std::uint32_t c : it->classes) {
      std::vector<std::pair<NodeId, PortId>> hops;
      for (const PathHop& hop : memo->classes[c].hops) {
        hops.emplace_back(hop.node, hop.outport);
      }
      out.push_back(MakeExpected(h, src, dst, hops));
    }
    SortReports(out);
    return out;
  }

  // The same answer computed by walking the inverse graph back from the
  // destination, without the memo.
  std::vector<ExpectedReport> ExpectedReportsBackward(Header h, Endpoint src,
                                                      Endpoint dst) const {
    std::vector<ExpectedReport> out;
    std::vector<std::pair<NodeId, PortId>> rev;
    std::set<NodeId> on_path;
    auto walk = [&](auto&& self, NodeId id, PortId out_port) -> void {
      const RuleNode& n = nodes_[id];
      rev.emplace_back(id, out_port);
      on_path.insert(id);
      if (n.rule.sw == src.sw && n.inport == src.port) {
        std::vector<std::pair<NodeId, PortId>> fwd(rev.rbegin(), rev.rend());
        out.push_back(MakeExpected(h, src, dst, fwd));
      }
      const std::optional<Endpoint> up = topo_->Peer({n.rule.sw, n.inport});
      if (up) {
        for (NodeId p : n.prev) {
          const RuleNode& pn = nodes_[p];
          if (on_path.count(p) != 0 || !pn.effective.Contains(h) ||
              pn.rule.sw != up->sw) {
            continue;
          }
          for (PortId o : pn.rule.out_ports) {
            if (o == up->port) self(self, p, o);
          }
        }
      }
      on_path.erase(id);
      rev.pop_back();
    };
    for (auto it = ports_.lower_bound({dst.sw, 0});
         it != ports_.end() && it->first.first == dst.sw; ++it) {
      for (NodeId id : it->second.order) {
        const RuleNode& n = nodes_[id];
        if (!n.effective.Contains(h)) continue;
        for (PortId o : n.rule.out_ports) {
          if (o == dst.port) walk(walk, id, o);
        }
      }
    }
    SortReports(out);
    return out;
  }

  // Incremental update: only the arrival ports the rule applies to, their
  // upstream neighbours and the memo entries that crossed them are touched.
  ReachabilityGraph WithUpdate(const RuleUpdate& u) const {
    ReachabilityGraph g(*this);
    g.ApplyInPlace(u);
    return g;
  }

  GraphCanonical Canonical() const {
    GraphCanonical c;
    for (const auto& [key, id] : ids_) {
      c.effective.emplace(key, nodes_[id].effective);
      for (NodeId t : nodes_[id].next) c.edges.emplace(key, nodes_[t].key());
    }
    c.predicates = predicates_;
    return c;
  }

  // Graphviz rendering: one vertex per rule node with a non-empty effective
  // predicate.
  std::string ToDot() const {
    std::ostringstream out;
    out << "digraph reachability {\n  rankdir=LR;\n";
    for (const auto& [key, id] : ids_) {
      const RuleNode& n = nodes_[id];
      if (n.effective.IsEmpty()) continue;
      out << "  n" << id << " [label=\"" << ToString(key) << "\\n"
          << n.effective.ToString() << "\"];\n";
    }
    for (const auto& [key, id] : ids_) {
      for (NodeId t : nodes_[id].next) out << "  n" << id << " -> n" << t << ";\n";
    }
    out << "}\n";
    return out.str();
  }

 private:
  struct Segment {
    Header lo;
    Header hi;
    std::vector<std::uint32_t> classes;
  };
  struct IndexEntry {
    Header lo;
    Header hi;
    NodeId node;
  };
  struct PortIndex {
    std::vector<NodeId> order;         // lookup order
    std::vector<IndexEntry> entries;   // effective intervals, sorted
  };
  struct PairMemo {
    HeaderSet reachable;
    std::vector<PathClass> classes;
    std::vector<Segment> segments;
    std::set<PortKey> arrivals;
  };

  ReachabilityGraph(const Topology& topo, Config config, TaggingOptions tagging)
      : topo_(std::make_shared<const Topology>(topo)),
        config_(std::move(config)),
        tagging_(tagging) {}

  static void SortReports(std::vector<ExpectedReport>& v) {
    std::sort(v.begin(), v.end(),
              [](const ExpectedReport& a, const ExpectedReport& b) {
                auto key = [](const ExpectedReport& r) {
                  std::vector<std::tuple<SwitchId, PortId, RuleKey, PortId>> k;
                  for (const auto& h : r.path) {
                    k.emplace_back(h.sw, h.inport, h.rule, h.outport);
                  }
                  return k;
                };
                return key(a) < key(b);
              });
  }

  ExpectedReport MakeExpected(
      Header h, Endpoint src, Endpoint dst,
      const std::vector<std::pair<NodeId, PortId>>& hops) const {
    ExpectedReport r;
    r.pair = {src, dst};
    r.header = h;
    r.tag.tag_type = tagging_.ethertype;
    r.tag.verify_port = 0;
    r.tag.verify_rule = 1;
    bool first = true;
    for (const auto& [id, out] : hops) {
      const RuleNode& n = nodes_[id];
      const std::uint32_t digest =
          BloomMask(HashUp(n.rule.sw, n.inport), tagging_.bit_order);
      if (first) r.tag.verify_port = digest;  // push_verify at the entry
      first = false;
      r.tag.verify_port |= digest;
      SetRule(r.tag, n.rule.key());
      r.path.push_back({n.rule.sw, n.inport, n.rule.key(), out, digest});
    }
    return r;
  }

  std::shared_ptr<const PairMemo> Memo(Endpoint src, Endpoint dst) const {
    std::lock_guard<std::mutex> lock(memo_mu_);
    auto key = std::make_pair(src, dst);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    auto memo = std::make_shared<PairMemo>(ComputePair(src, dst));
    memo_.emplace(key, memo);
    return memo;
  }

  // Forward propagation of the full header space from `src`, narrowing by
  // each node's effective predicate. A node appears at most once per path.
  PairMemo ComputePair(Endpoint src, Endpoint dst) const {
    PairMemo m;
    const int w = width();
    IntervalAccumulator reach(w);
    std::vector<PathHop> path;
    std::set<NodeId> on_path;
    m.arrivals.insert({src.sw, src.port});
    auto visit = [&](auto&& self, NodeId id, const HeaderSet& region) -> void {
      const RuleNode& n = nodes_[id];
      on_path.insert(id);
      for (PortId o : n.rule.out_ports) {
        path.push_back({id, o});
        if (n.rule.sw == dst.sw && o == dst.port) {
          m.classes.push_back({region, path});
          reach.Add(region);
        } else if (const auto peer = topo_->Peer({n.rule.sw, o})) {
          m.arrivals.insert({peer->sw, peer->port});
          for (NodeId t : n.next) {
            const RuleNode& tn = nodes_[t];
            if (tn.rule.sw != peer->sw || tn.inport != peer->port ||
                on_path.count(t) != 0) {
              continue;
            }
            HeaderSet sub = region.Intersect(tn.effective);
            if (!sub.IsEmpty()) self(self, t, sub);
          }
        }
        path.pop_back();
      }
      on_path.erase(id);
    };
    auto it = ports_.find({src.sw, src.port});
    if (it != ports_.end()) {
      for (NodeId id : it->second.order) {
        if (!nodes_[id].effective.IsEmpty()) {
          visit(visit, id, nodes_[id].effective);
        }
      }
    }
    m.reachable = reach.ToHeaderSet();

    // Elementary segments: maximal intervals covered by a fixed class set.
    std::vector<std::tuple<std::uint64_t, int, std::uint32_t>> events;
    for (std::uint32_t c = 0; c < m.classes.size(); ++c) {
      for (const Interval& iv : m.classes[c].region.intervals()) {
        events.emplace_back(iv.lo, 1, c);
        events.emplace_back(std::uint64_t{iv.hi} + 1, 0, c);
      }
    }
    std::sort(events.begin(), events.end());
    std::set<std::uint32_t> active;
    std::size_t i = 0;
    while (i < events.size()) {
      const std::uint64_t at = std::get<0>(events[i]);
      while (i < events.size() && std::get<0>(events[i]) == at) {
        if (std::get<1>(events[i]) == 1) {
          active.insert(std::get<2>(events[i]));
        } else {
          active.erase(std::get<2>(events[i]));
        }
        ++i;
      }
      if (!active.empty() && i < events.size()) {
        const std::uint64_t next = std::get<0>(events[i]);
        m.segments.push_back({static_cast<Header>(at),
                              static_cast<Header>(next - 1),
                              {active.begin(), active.end()}});
      }
    }
    return m;
  }

  // Recomputes node set, effective predicates and interval index of one
  // arrival port from scratch. New nodes are appended; nodes whose rule no
  // longer applies are retired. Returns ids whose effective predicate
  // changed or that were created.
  std::vector<NodeId> RebuildPort(PortKey at) {
    std::vector<NodeId> changed;
    PortIndex& idx = ports_[at];
    std::vector<const FlowRule*> rules = config_.RulesOf(at.first);
    std::sort(rules.begin(), rules.end(),
              [](const FlowRule* a, const FlowRule* b) {
                return PrecedesInLookup(*a, *b);
              });
    std::set<NodeId> keep;
    std::vector<NodeId> order;
    IntervalAccumulator taken(width());
    for (const FlowRule* r : rules) {
      if (!r->AppliesTo(at.second)) continue;
      const NodeKey key{r->key(), at.second};
      NodeId id;
      auto found = ids_.find(key);
      HeaderSet eff = taken.Subtract(r->match);
      taken.Add(r->match);
      if (found == ids_.end()) {
        id = static_cast<NodeId>(nodes_.size());
        RuleNode n;
        n.rule = *r;
        n.inport = at.second;
        n.effective = std::move(eff);
        nodes_.push_back(std::move(n));
        ids_.emplace(key, id);
        changed.push_back(id);
      } else {
        id = found->second;
        if (!(nodes_[id].effective == eff)) {
          nodes_[id].effective = std::move(eff);
          changed.push_back(id);
        }
      }
      keep.insert(id);
      order.push_back(id);
    }
    for (NodeId old : idx.order) {
      if (keep.count(old) == 0) Retire(old);
    }
    idx.order = std::move(order);
    idx.entries.clear();
    for (NodeId id : idx.order) {
      for (const Interval& iv : nodes_[id].effective.intervals()) {
        idx.entries.push_back({iv.lo, iv.hi, id});
      }
    }
    std::sort(idx.entries.begin(), idx.entries.end(),
              [](const IndexEntry& a, const IndexEntry& b) { return a.lo < b.lo; });
    return changed;
  }

  void Retire(NodeId id) {
    RuleNode& n = nodes_[id];
    n.alive = false;
    ids_.erase(n.key());
    for (NodeId t : n.next) {
      auto& pv = nodes_[t].prev;
      pv.erase(std::remove(pv.begin(), pv.end(), id), pv.end());
    }
    for (NodeId p : n.prev) {
      auto& nx = nodes_[p].next;
      nx.erase(std::remove(nx.begin(), nx.end(), id), nx.end());
    }
    n.next.clear();
    n.prev.clear();
    n.effective = HeaderSet::Empty(width());
  }

  // Out-edges of one node by range queries on the downstream port indexes.
  std::vector<NodeId> EdgesOf(NodeId id) const {
    const RuleNode& n = nodes_[id];
    std::vector<NodeId> out;
    if (!n.alive || n.effective.IsEmpty()) return out;
    for (PortId o : n.rule.out_ports) {
      const auto peer = topo_->Peer({n.rule.sw, o});
      if (!peer) continue;
      auto pit = ports_.find({peer->sw, peer->port});
      if (pit == ports_.end()) continue;
      const auto& entries = pit->second.entries;
      for (const Interval& x : n.effective.intervals()) {
        auto e = std::lower_bound(
            entries.begin(), entries.end(), x.lo,
            [](const IndexEntry& en, Header v) { return en.hi < v; });
        for (; e != entries.end() && e->lo <= x.hi; ++e) out.push_back(e->node);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void ComputeEdges(NodeId id) { nodes_[id].next = EdgesOf(id); }

  void RebuildInverse() {
    for (RuleNode& n : nodes_) n.prev.clear();
    for (NodeId id = 0; id < nodes_.size(); ++id) {
      for (NodeId t : nodes_[id].next) nodes_[t].prev.push_back(id);
    }
  }

  void ReplaceEdges(NodeId id) {
    std::vector<NodeId> fresh = EdgesOf(id);
    RuleNode& n = nodes_[id];
    for (NodeId t : n.next) {
      auto& pv = nodes_[t].prev;
      pv.erase(std::remove(pv.begin(), pv.end(), id), pv.end());
    }
    n.next = std::move(fresh);
    for (NodeId t : n.next) nodes_[t].prev.push_back(id);
  }

  void RecomputePredicates(PortKey at) {
    for (auto it = predicates_.lower_bound({at.first, at.second, 0});
         it != predicates_.end() && std::get<0>(it->first) == at.first &&
         std::get<1>(it->first) == at.second;) {
      it = predicates_.erase(it);
    }
    std::map<PortId, IntervalAccumulator> acc;
    for (NodeId id : ports_[at].order) {
      const RuleNode& n = nodes_[id];
      if (n.effective.IsEmpty()) continue;
      for (PortId o : n.rule.out_ports) {
        acc.try_emplace(o, width()).first->second.Add(n.effective);
      }
    }
    for (auto& [o, a] : acc) {
      predicates_.emplace(PredicateKey{at.first, at.second, o}, a.ToHeaderSet());
    }
  }

  void ApplyInPlace(const RuleUpdate& u) {
    const RuleKey key = u.rule.key();
    FlowRule subject = u.rule;
    if (u.kind == RuleUpdate::Kind::kAdd) {
      if (u.rule.hidden) {
        throw Error(ErrorCode::kInvalidArgument,
                    "hidden rules are not part of the control-plane view");
      }
      if (!topo_->HasSwitch(key.sw)) {
        throw Error(ErrorCode::kValidation,
                    "rule on unknown switch " + std::to_string(key.sw));
      }
      Config probe(config_.width());
      probe.Add(u.rule);
      probe.Validate(*topo_);
      config_.Add(u.rule);
    } else {
      const FlowRule* old = config_.Find(key);
      if (old == nullptr) {
        throw Error(ErrorCode::kNotFound, "no rule " + ToString(key));
      }
      subject = *old;
      config_.Remove(key);
    }
    const SwitchId sw = key.sw;
    std::set<NodeId> dirty;
    std::set<PortKey> touched;
    for (PortId p : topo_->Ports(sw)) {
      if (!subject.AppliesTo(p)) continue;
      const PortKey at{sw, p};
      std::vector<NodeId> changed = RebuildPort(at);
      touched.insert(at);
      dirty.insert(changed.begin(), changed.end());
      // Upstream nodes whose edges point into this port.
      if (const auto up = topo_->Peer({sw, p})) {
        for (auto it = ports_.lower_bound({up->sw, 0});
             it != ports_.end() && it->first.first == up->sw; ++it) {
          for (NodeId id : it->second.order) {
            const auto& outs = nodes_[id].rule.out_ports;
            if (std::find(outs.begin(), outs.end(), up->port) != outs.end()) {
              dirty.insert(id);
            }
          }
        }
      }
    }
    for (NodeId id : dirty) {
      if (nodes_[id].alive) ReplaceEdges(id);
    }
    for (const PortKey& at : touched) RecomputePredicates(at);

    std::lock_guard<std::mutex> lock(memo_mu_);
    for (auto it = memo_.begin(); it != memo_.end();) {
      const bool stale = std::any_of(
          touched.begin(), touched.end(),
          [&](const PortKey& k) { return it->second->arrivals.count(k) != 0; });
      it = stale ? memo_.erase(it) : std::next(it);
    }
  }

  std::shared_ptr<const Topology> topo_;
  Config config_;
  TaggingOptions tagging_;
  std::vector<RuleNode> nodes_;
  std::map<NodeKey, NodeId> ids_;
  std::map<PortKey, PortIndex> ports_;
  std::map<PredicateKey, HeaderSet> predicates_;
  mutable std::mutex memo_mu_;
  mutable std::map<std::pair<Endpoint, Endpoint>, std::shared_ptr<const PairMemo>>
      memo_;
  double build_seconds_ = 0.0;
};

}  // namespace pazz

#endif  // PAZZ_CPC_REACHABILITY_GRAPH_HPP_
