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

#include <gtest/gtest.h>

#include <random>

#include "pazz/cpc/control_plane.hpp"
#include "pazz/cpc/reachability_graph.hpp"
#include "pazz/dataplane/dataplane.hpp"
#include "pazz/netmodel/generators.hpp"
#include "toy_networks.hpp"

namespace pazz {
namespace {

using testing::BruteForceReachable;
using testing::kToyWidth;
using testing::RandomToyNetwork;
using testing::RandomToyRule;

FlowRule MakeRule(SwitchId sw, RuleId id, std::uint32_t prio, std::vector<PortId> in,
                  HeaderSet match, std::vector<PortId> out) {
  FlowRule r;
  r.sw = sw;
  r.id = id;
  r.priority = prio;
  r.in_ports = std::move(in);
  r.match = std::move(match);
  r.out_ports = std::move(out);
  return r;
}

HeaderSet R(Header lo, Header hi) { return HeaderSet::FromRange(lo, hi, kToyWidth); }

// src 0/5; s0 -1-> s1 -2-> s3 and s0 -2-> s2 -2-> s3; dst 3/5.
Topology DiamondTopology() {
  return Topology::Builder()
      .AddSwitch(0, {1, 2, 5})
      .AddSwitch(1, {1, 2})
      .AddSwitch(2, {1, 2})
      .AddSwitch(3, {1, 2, 5})
      .AddLink({0, 1}, {1, 1})
      .AddLink({0, 2}, {2, 1})
      .AddLink({1, 2}, {3, 1})
      .AddLink({2, 2}, {3, 2})
      .AddSource({0, 5})
      .AddDestination({3, 5})
      .Build();
}

Config DiamondConfig() {
  Config c(kToyWidth);
  c.Add(MakeRule(0, 1, 10, {5}, R(0, 99), {1}));
  c.Add(MakeRule(0, 2, 10, {5}, R(100, 149), {1, 2}));
  c.Add(MakeRule(0, 3, 10, {5}, R(150, 179), {2}));
  c.Add(MakeRule(1, 1, 10, {}, R(0, 149), {2}));
  c.Add(MakeRule(2, 1, 10, {}, R(100, 169), {2}));
  c.Add(MakeRule(3, 1, 10, {}, R(0, 199), {5}));
  return c;
}

constexpr Endpoint kSrc{0, 5};
constexpr Endpoint kDst{3, 5};

TEST(ReachabilityGraphTest, LowerPriorityLosesShadowedHeaders) {
  const Topology t = Topology::Builder()
                         .AddSwitch(0, {1, 2})
                         .AddSource({0, 1})
                         .AddDestination({0, 2})
                         .Build();
  Config c;
  c.Add(MakeRule(0, 1, 20, {}, HeaderSet::Parse("10.0.0.0/28"), {2}));
  c.Add(MakeRule(0, 2, 10, {}, HeaderSet::Parse("10.0.0.0/24"), {2}));
  const auto g = ReachabilityGraph::Build(t, c);
  const RuleNode* low = g.Find({{0, 0, 2}, 1});
  ASSERT_NE(low, nullptr);
  EXPECT_EQ(low->effective.Cardinality(), 240u);
  EXPECT_EQ(low->effective,
            HeaderSet::Parse("10.0.0.0/24").Difference(HeaderSet::Parse("10.0.0.0/28")));
  EXPECT_EQ(g.SwitchPredicate(0, 1, 2), HeaderSet::Parse("10.0.0.0/24"));
}

TEST(ReachabilityGraphTest, SingleRuleSwitchPredicate) {
  const Topology t = Topology::Builder()
                         .AddSwitch(0, {1, 2})
                         .AddSource({0, 1})
                         .AddDestination({0, 2})
                         .Build();
  Config c(kToyWidth);
  c.Add(MakeRule(0, 1, 1, {1}, R(3, 77), {2}));
  const auto g = ReachabilityGraph::Build(t, c);
  EXPECT_EQ(g.SwitchPredicate(0, 1, 2), R(3, 77));
  EXPECT_TRUE(g.SwitchPredicate(0, 2, 2).IsEmpty());
  EXPECT_EQ(g.Reachable({0, 1}, {0, 2}), R(3, 77));
}

TEST(ReachabilityGraphTest, HiddenRulesAreIgnored) {
  Config c = DiamondConfig();
  FlowRule hidden = MakeRule(0, 9, 99, {5}, R(0, 255), {});
  hidden.hidden = true;
  c.Add(hidden);
  const auto g = ReachabilityGraph::Build(DiamondTopology(), c);
  EXPECT_EQ(g.Find({{0, 0, 9}, 5}), nullptr);
  EXPECT_EQ(g.Reachable(kSrc, kDst), R(0, 169));
}

TEST(ReachabilityGraphTest, DiamondUnionAndTwoCandidates) {
  const auto g = ReachabilityGraph::Build(DiamondTopology(), DiamondConfig());
  EXPECT_EQ(g.Reachable(kSrc, kDst), R(0, 169));
  EXPECT_EQ(g.Reachable(kSrc, kDst), BruteForceReachable(DiamondTopology(), DiamondConfig(),
                                                         kSrc, kDst));
  const auto multi = g.ExpectedReports(120, kSrc, kDst);
  ASSERT_EQ(multi.size(), 2u);
  EXPECT_NE(multi[0].tag.verify_port, multi[1].tag.verify_port);
  EXPECT_EQ(g.ExpectedReports(50, kSrc, kDst).size(), 1u);
  EXPECT_TRUE(g.ExpectedReports(175, kSrc, kDst).empty());  // dropped at s2
  EXPECT_TRUE(g.ExpectedReports(230, kSrc, kDst).empty());
}

TEST(ReachabilityGraphTest, ExpectedTagsMatchDataPlane) {
  const Topology t = DiamondTopology();
  const Config c = DiamondConfig();
  const auto g = ReachabilityGraph::Build(t, c);
  const DataPlane dp(t, c);
  for (Header h = 0; h < 256; ++h) {
    const auto expected = g.ExpectedReports(h, kSrc, kDst);
    const auto tr = dp.Trace(kSrc, h);
    ASSERT_EQ(expected.size(), tr.delivered.size()) << h;
    for (const auto& d : tr.delivered) {
      const bool found = std::any_of(expected.begin(), expected.end(),
                                     [&](const ExpectedReport& e) { return e.tag == d.report.tag; });
      EXPECT_TRUE(found) << h;
    }
  }
}

TEST(ReachabilityGraphTest, BackwardWalkEqualsForward) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = RandomToyNetwork(rng, 3 + trial % 3);
    const auto g = ReachabilityGraph::Build(n.topo, n.config);
    for (Header h = 0; h < 256; ++h) {
      const auto f = g.ExpectedReports(h, n.src, n.dst);
      const auto b = g.ExpectedReportsBackward(h, n.src, n.dst);
      ASSERT_EQ(f.size(), b.size());
      for (std::size_t i = 0; i < f.size(); ++i) {
        ASSERT_EQ(f[i].tag, b[i].tag);
        ASSERT_EQ(f[i].path.size(), b[i].path.size());
      }
    }
  }
}

TEST(ReachabilityGraphTest, NoForwardingMeansEmpty) {
  Config c(kToyWidth);
  c.Add(MakeRule(0, 1, 10, {5}, R(0, 99), {1}));
  const auto g = ReachabilityGraph::Build(DiamondTopology(), c);
  EXPECT_TRUE(g.Reachable(kSrc, kDst).IsEmpty());
  EXPECT_TRUE(g.PathClasses(kSrc, kDst).empty());
}

TEST(ReachabilityGraphTest, RandomToyConfigsMatchExhaustiveSimulation) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = RandomToyNetwork(rng, 3 + trial % 3);
    const auto g = ReachabilityGraph::Build(n.topo, n.config);
    ASSERT_EQ(g.Reachable(n.src, n.dst), BruteForceReachable(n.topo, n.config, n.src, n.dst))
        << "trial " << trial;
  }
}

TEST(ReachabilityGraphTest, SameTableEffectivePredicatesAreDisjoint) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = RandomToyNetwork(rng, 4);
    const auto g = ReachabilityGraph::Build(n.topo, n.config);
    for (const auto& [sw, ports] : n.topo.switches()) {
      for (PortId p : ports) {
        const auto ids = g.NodesAt({sw, p});
        for (std::size_t i = 0; i < ids.size(); ++i) {
          for (std::size_t j = i + 1; j < ids.size(); ++j) {
            const RuleNode& a = g.node(ids[i]);
            const RuleNode& b = g.node(ids[j]);
            if (a.rule.table != b.rule.table) continue;
            ASSERT_FALSE(a.effective.Intersects(b.effective));
          }
        }
      }
    }
  }
}

TEST(CorpusTest, EntryAndExitPredicates) {
  const auto g = ReachabilityGraph::Build(DiamondTopology(), DiamondConfig());
  const Corpus c = g.CorpusFor(kSrc, kDst);
  EXPECT_EQ(c.entry, R(0, 179));
  EXPECT_EQ(c.exit, R(0, 199));
}

TEST(CorpusTest, EntryForwardingEverythingIsUniverse) {
  Config c(kToyWidth);
  c.Add(MakeRule(0, 1, 10, {}, HeaderSet::Universe(kToyWidth), {1}));
  const auto g = ReachabilityGraph::Build(DiamondTopology(), c);
  EXPECT_TRUE(g.CorpusFor(kSrc, kDst).entry.IsUniverse());
}

TEST(CorpusTest, ExitDeleteShrinksByEffectivePredicate) {
  Config c = DiamondConfig();
  c.Add(MakeRule(3, 2, 20, {}, R(150, 229), {5}));
  const auto g = ReachabilityGraph::Build(DiamondTopology(), c);
  const RuleNode* low = g.Find({{3, 0, 1}, 1});
  ASSERT_NE(low, nullptr);
  const HeaderSet eff = low->effective;
  const auto after = g.WithUpdate(RuleUpdate::Delete({3, 0, 1}));
  EXPECT_EQ(after.CorpusFor(kSrc, kDst).exit,
            g.CorpusFor(kSrc, kDst).exit.Difference(eff));
  EXPECT_EQ(after.CorpusFor(kSrc, kDst).exit, R(150, 229));
}

TEST(UpdateTest, ShadowedAddLeavesPredicatesUnchanged) {
  Config c = DiamondConfig();
  c.Remove({0, 0, 1});
  c.Add(MakeRule(0, 1, 30, {5}, R(0, 99), {1}));
  const auto base = ReachabilityGraph::Build(DiamondTopology(), c);
  const auto up = base.WithUpdate(RuleUpdate::Add(MakeRule(0, 7, 20, {5}, R(10, 20), {2})));
  EXPECT_EQ(up.Canonical().predicates, base.Canonical().predicates);
  EXPECT_EQ(up.Reachable(kSrc, kDst), base.Reachable(kSrc, kDst));
}

TEST(UpdateTest, DominatingAddReplacesOverlap) {
  const auto g = ReachabilityGraph::Build(DiamondTopology(), DiamondConfig());
  const HeaderSet s = g.SwitchPredicate(0, 5, 1);
  const HeaderSet r_new = R(50, 119);
  const auto up = g.WithUpdate(RuleUpdate::Add(MakeRule(0, 8, 50, {5}, r_new, {1})));
  EXPECT_EQ(up.SwitchPredicate(0, 5, 1), r_new.Union(s.Difference(r_new)));
  EXPECT_EQ(up.SwitchPredicate(0, 5, 2), g.SwitchPredicate(0, 5, 2).Difference(r_new));
}

TEST(UpdateTest, RandomSequenceEqualsRebuild) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    auto n = RandomToyNetwork(rng, 4);
    auto g = std::make_unique<ReachabilityGraph>(ReachabilityGraph::Build(n.topo, n.config));
    Config truth = n.config;
    for (int step = 0; step < 40; ++step) {
      (void)g->Reachable(n.src, n.dst);  // populate the memo before mutating
      RuleUpdate u;
      if (truth.size() > 2 && rng() % 2 == 0) {
        std::vector<RuleKey> keys;
        for (const auto& [sw, ports] : n.topo.switches()) {
          for (const FlowRule* r : truth.RulesOf(sw)) keys.push_back(r->key());
        }
        const RuleKey k = keys[rng() % keys.size()];
        u = RuleUpdate::Delete(k);
        truth.Remove(k);
      } else {
        const SwitchId sw = rng() % n.topo.switches().size();
        // alternate between dominating and low-priority additions
        const std::uint32_t prio =
            rng() % 2 ? truth.MaxPriority(sw) + 1 : 1 + static_cast<std::uint32_t>(rng() % 5);
        FlowRule r = RandomToyRule(rng, n.topo, sw, 0, prio, n.dst.sw);
        r.id = truth.NextRuleId(sw, r.table);
        u = RuleUpdate::Add(r);
        truth.Add(r);
      }
      g = std::make_unique<ReachabilityGraph>(g->WithUpdate(u));
      const auto fresh = ReachabilityGraph::Build(n.topo, truth);
      ASSERT_EQ(g->Canonical(), fresh.Canonical()) << trial << "/" << step;
      ASSERT_EQ(g->Reachable(n.src, n.dst), fresh.Reachable(n.src, n.dst));
      ASSERT_EQ(g->CorpusFor(n.src, n.dst), fresh.CorpusFor(n.src, n.dst));
    }
  }
}

TEST(UpdateTest, BadUpdatesAreRejected) {
  const auto g = ReachabilityGraph::Build(DiamondTopology(), DiamondConfig());
  try {
    (void)g.WithUpdate(RuleUpdate::Delete({0, 0, 42}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
  FlowRule hidden = MakeRule(0, 9, 1, {}, R(0, 1), {1});
  hidden.hidden = true;
  EXPECT_THROW((void)g.WithUpdate(RuleUpdate::Add(hidden)), Error);
  EXPECT_THROW((void)g.WithUpdate(RuleUpdate::Add(MakeRule(7, 1, 1, {}, R(0, 1), {1}))), Error);
  EXPECT_THROW((void)g.WithUpdate(RuleUpdate::Add(MakeRule(0, 9, 1, {}, R(0, 1), {44}))), Error);
}

TEST(ControlPlaneTest, UpdatesSwapSnapshotAndNotifySubscribers) {
  ControlPlane cp(DiamondTopology(), DiamondConfig());
  const auto before = cp.Snapshot();
  int calls = 0;
  Corpus pushed;
  cp.Subscribe({kSrc, kDst}, [&](const PortPair&, const Corpus& c) {
    ++calls;
    pushed = c;
  });
  cp.ApplyUpdate(RuleUpdate::Add(MakeRule(0, 8, 50, {5}, R(200, 219), {1})));
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(pushed, cp.CorpusFor(kSrc, kDst));
  EXPECT_EQ(pushed.entry, R(0, 179).Union(R(200, 219)));
  EXPECT_EQ(before->CorpusFor(kSrc, kDst).entry, R(0, 179));  // old snapshot untouched
  EXPECT_GE(cp.last_update_seconds(), 0.0);
  EXPECT_THROW(cp.ApplyUpdate(RuleUpdate::Delete({1, 0, 77})), Error);
  EXPECT_EQ(calls, 1);
}

TEST(ReachabilityGraphTest, DotListsNodes) {
  const auto g = ReachabilityGraph::Build(DiamondTopology(), DiamondConfig());
  const std::string dot = g.ToDot();
  EXPECT_EQ(dot.rfind("digraph reachability {", 0), 0u);
  EXPECT_NE(dot.find("s0/t0/r1"), std::string::npos);
  EXPECT_NE(dot.find("->"), std::string::npos);
}

TEST(ReachabilityGraphTest, GeneratedNetworkTagsMatchDataPlane) {
  GeneratorOptions opts;
  opts.seed = 4;
  const auto n = Generate(TopologyKind::kGrid9, opts);
  const auto g = ReachabilityGraph::Build(n.topology, n.config);
  const DataPlane dp(n.topology, n.config);
  std::mt19937_64 rng(1);
  const IndexedHeaderSet prod(n.layout.production);
  for (int i = 0; i < 2000; ++i) {
    const Header h = prod.Sample(rng);
    const auto expected = g.ExpectedReports(h, n.layout.pair.src, n.layout.pair.dst);
    for (const auto& d : dp.Trace(n.layout.pair.src, h).delivered) {
      ASSERT_TRUE(std::any_of(expected.begin(), expected.end(),
                              [&](const ExpectedReport& e) { return e.tag == d.report.tag; }));
    }
  }
  EXPECT_GT(g.build_seconds(), 0.0);
}

}  // namespace
}  // namespace pazz
