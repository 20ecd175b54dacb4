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

#include <filesystem>
#include <functional>
#include <set>
#include <string>

#include "pazz/dataplane/dataplane.hpp"
#include "pazz/netmodel/faults.hpp"
#include "pazz/netmodel/flow_rule.hpp"
#include "pazz/netmodel/generators.hpp"
#include "pazz/netmodel/io.hpp"
#include "pazz/netmodel/topology.hpp"

namespace pazz {
namespace {

const Header kX = 0x0a010100;  // 10.1.1.0, stands in for x.1.1.0

HeaderSet Prefix(Header a, int len) { return HeaderSet::FromPrefix(a, len); }

FlowRule MakeRule(SwitchId sw, RuleId id, std::uint32_t prio,
                  std::vector<PortId> in, HeaderSet match,
                  std::vector<PortId> out) {
  FlowRule r;
  r.sw = sw;
  r.id = id;
  r.priority = prio;
  r.in_ports = std::move(in);
  r.match = std::move(match);
  r.out_ports = std::move(out);
  return r;
}

// s0 reaches s2 either through the firewall s1 (port 1) or directly (port 2).
//   src 0/5 -> s0 -1- s1 -2- s2 -> dst 2/5,   s0 -2- s2 (port 3)
struct FirewallNet {
  Topology topo;
  Config config;
  explicit FirewallNet(int r1_len = 28) {
    topo = Topology::Builder()
               .AddSwitch(0, {1, 2, 5})
               .AddSwitch(1, {1, 2})
               .AddSwitch(2, {1, 3, 5})
               .AddLink({0, 1}, {1, 1})
               .AddLink({1, 2}, {2, 1})
               .AddLink({0, 2}, {2, 3})
               .AddSource({0, 5})
               .AddDestination({2, 5})
               .Build();
    config.Add(MakeRule(0, 1, 20, {5}, Prefix(kX, r1_len), {1}));  // R1 via firewall
    config.Add(MakeRule(0, 2, 10, {5}, Prefix(kX, 24), {2}));   // rest direct
    config.Add(MakeRule(1, 1, 10, {1}, Prefix(kX, 24), {2}));
    config.Add(MakeRule(2, 1, 10, {}, Prefix(kX, 24), {5}));
    config.Validate(topo);
  }
};

std::vector<Hop> PathOf(const Topology& topo, const Config& config, Header h) {
  const DataPlane dp(topo, config);
  const auto tr = dp.Trace({0, 5}, h);
  EXPECT_EQ(tr.delivered.size(), 1u);
  return tr.delivered.empty() ? std::vector<Hop>{} : tr.delivered.front().trace;
}

// --- topology ----------------------------------------------------------------

TEST(TopologyTest, BuilderRejectsInvalidShapes) {
  EXPECT_THROW(Topology::Builder().AddSwitch(0, {1, 1}), Error);
  try {
    Topology::Builder().AddSwitch(0, {1}).AddLink({0, 1}, {9, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDanglingLink);
  }
  EXPECT_THROW(Topology::Builder()
                   .AddSwitch(0, {1, 2})
                   .AddSwitch(1, {1, 2})
                   .AddLink({0, 1}, {1, 1})
                   .AddLink({0, 1}, {1, 2}),
               Error);
  // designated ports must be link-free
  EXPECT_THROW(Topology::Builder()
                   .AddSwitch(0, {1})
                   .AddSwitch(1, {1})
                   .AddLink({0, 1}, {1, 1})
                   .AddSource({0, 1})
                   .Build(),
               Error);
  // connectivity
  EXPECT_THROW(Topology::Builder().AddSwitch(0, {1}).AddSwitch(1, {1}).Build(),
               Error);
}

TEST(TopologyTest, PeersAndDistances) {
  const FirewallNet net;
  EXPECT_EQ(net.topo.Peer({0, 1}), (Endpoint{1, 1}));
  EXPECT_FALSE(net.topo.Peer({0, 5}).has_value());
  EXPECT_TRUE(net.topo.IsSource({0, 5}));
  EXPECT_TRUE(net.topo.IsDestination({2, 5}));
  const auto dist = net.topo.DistancesTo(2);
  EXPECT_EQ(dist.at(0), 1);
  EXPECT_EQ(dist.at(1), 1);
  EXPECT_EQ(dist.at(2), 0);
}

// --- config --------------------------------------------------------------------

TEST(ConfigTest, DuplicateKeysAndVisibility) {
  Config c;
  c.Add(MakeRule(0, 1, 1, {}, Prefix(kX, 24), {1}));
  EXPECT_THROW(c.Add(MakeRule(0, 1, 5, {}, Prefix(kX, 28), {2})), Error);
  FlowRule hidden = MakeRule(0, 2, 9, {}, Prefix(kX, 30), {1});
  hidden.hidden = true;
  c.Add(hidden);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.Visible().size(), 1u);
  EXPECT_EQ(c.NextRuleId(0, 0), 3u);
  EXPECT_EQ(c.MaxPriority(0), 9u);
  EXPECT_THROW(c.Remove({0, 0, 42}), Error);
}

TEST(ConfigTest, LookupOrder) {
  FlowRule a = MakeRule(0, 1, 5, {}, Prefix(kX, 24), {1});
  FlowRule b = MakeRule(0, 2, 5, {}, Prefix(kX, 24), {1});
  FlowRule c = MakeRule(0, 3, 7, {}, Prefix(kX, 24), {1});
  FlowRule d = MakeRule(0, 0, 99, {}, Prefix(kX, 24), {1});
  d.table = 1;
  EXPECT_TRUE(PrecedesInLookup(c, a));  // higher priority
  EXPECT_TRUE(PrecedesInLookup(a, b));  // tie: lower id
  EXPECT_TRUE(PrecedesInLookup(a, d));  // lower table first
}

TEST(ConfigTest, ValidateRejectsForeignPorts) {
  const FirewallNet net;
  Config c = net.config;
  c.Add(MakeRule(1, 7, 1, {}, Prefix(kX, 24), {9}));
  try {
    c.Validate(net.topo);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownPort);
  }
}

// --- generators ------------------------------------------------------------------

std::size_t MaxRouteLinks(const GeneratedNetwork& n) {
  std::size_t best = 0;
  for (const Route& r : n.layout.routes) best = std::max(best, r.size() - 1);
  return best;
}

TEST(GeneratorTest, GridShapes) {
  const std::size_t want_links[] = {0, 0, 2, 4, 6};
  for (int side : {2, 3, 4}) {
    const GeneratedNetwork n = GenerateGrid(side);
    EXPECT_EQ(n.topology.switches().size(), static_cast<std::size_t>(side * side));
    EXPECT_EQ(MaxRouteLinks(n), want_links[side]) << side;
    EXPECT_GE(n.layout.routes.size(), 2u) << "path diversity";
    EXPECT_EQ(n.layout.pair.src.sw, 0u);
    EXPECT_EQ(n.layout.pair.dst.sw, static_cast<SwitchId>(side * side - 1));
    EXPECT_NO_THROW(n.config.Validate(n.topology));
  }
}

TEST(GeneratorTest, FatTreeShape) {
  const GeneratedNetwork n = GenerateFatTree(4);
  EXPECT_EQ(n.topology.switches().size(), 20u);
  EXPECT_EQ(n.topology.links().size(), 32u);
  EXPECT_EQ(MaxRouteLinks(n), 6u);
  std::set<SwitchId> cores;
  for (const Route& r : n.layout.routes) {
    for (const RouteHop& h : r) {
      if (h.sw < 4) cores.insert(h.sw);
    }
  }
  EXPECT_GE(cores.size(), 2u);
  EXPECT_THROW(GenerateFatTree(3), Error);
  EXPECT_THROW(GenerateFatTree(5), Error);
}

// Layer counts and ToR-to-ToR shortest paths, from the topology alone.
TEST(GeneratorTest, FatTreeTorPairsHaveDisjointCorePaths) {
  const GeneratedNetwork n = GenerateFatTree(4);
  const Topology& t = n.topology;
  std::map<int, int> degree_count;
  std::vector<SwitchId> tors;
  for (const auto& [sw, ports] : t.switches()) {
    const std::size_t linked = t.Neighbors(sw).size();
    ++degree_count[static_cast<int>(linked)];
    if (linked == 2) tors.push_back(sw);
  }
  EXPECT_EQ(tors.size(), 8u);  // ToRs have 2 uplinks; aggregates and cores 4
  EXPECT_EQ(degree_count[4], 12);
  std::set<SwitchId> core_ids;
  for (const auto& [sw, ports] : t.switches()) {
    bool any_tor = false;
    for (const auto& [p, peer] : t.Neighbors(sw)) {
      any_tor |= std::find(tors.begin(), tors.end(), peer.sw) != tors.end();
    }
    if (!any_tor && t.Neighbors(sw).size() == 4) core_ids.insert(sw);
  }
  EXPECT_EQ(core_ids.size(), 4u);

  // Enumerate all shortest paths between ToRs in different pods.
  for (SwitchId a : tors) {
    for (SwitchId b : tors) {
      if (a == b) continue;
      const auto dist = t.DistancesTo(b);
      if (dist.at(a) != 4) continue;  // same pod
      std::set<SwitchId> used_cores;
      std::size_t paths = 0;
      std::function<void(SwitchId)> walk = [&](SwitchId cur) {
        if (cur == b) {
          ++paths;
          return;
        }
        for (const auto& [p, peer] : t.Neighbors(cur)) {
          if (dist.at(peer.sw) != dist.at(cur) - 1) continue;
          if (core_ids.count(peer.sw)) used_cores.insert(peer.sw);
          walk(peer.sw);
        }
      };
      walk(a);
      EXPECT_GE(paths, 2u);
      EXPECT_GE(used_cores.size(), 2u);
    }
  }
}

TEST(GeneratorTest, ToySchemaRulesAreNonEmpty) {
  GeneratorOptions opts;
  opts.width = 8;
  for (TopologyKind k : {TopologyKind::kGrid4, TopologyKind::kGrid9,
                         TopologyKind::kGrid16, TopologyKind::kFatTree4}) {
    const GeneratedNetwork n = Generate(k, opts);
    ASSERT_GT(n.config.size(), 0u);
    for (const auto& [key, r] : n.config.rules()) {
      EXPECT_FALSE(r.match.IsEmpty()) << ToString(key);
      EXPECT_EQ(r.match.width(), 8);
    }
  }
}

TEST(GeneratorTest, DeterministicPerSeed) {
  GeneratorOptions a, b;
  a.seed = b.seed = 5;
  const auto n1 = Generate(TopologyKind::kGrid9, a);
  const auto n2 = Generate(TopologyKind::kGrid9, b);
  EXPECT_EQ(n1.topology, n2.topology);
  EXPECT_EQ(n1.config, n2.config);
  b.seed = 6;
  EXPECT_NE(Generate(TopologyKind::kGrid9, b).config, n1.config);
}

TEST(GeneratorTest, RulesScaleTracksTargets) {
  GeneratorOptions opts;
  opts.rules_scale = 0.1;
  const auto small = Generate(TopologyKind::kGrid16, opts);
  opts.rules_scale = 0.2;
  const auto large = Generate(TopologyKind::kGrid16, opts);
  EXPECT_GT(large.config.size(), small.config.size());
  EXPECT_NEAR(static_cast<double>(small.config.size()), 6000.0, 1500.0);
}

TEST(GeneratorTest, NameRoundTrip) {
  for (const char* name : {"grid4", "grid9", "grid16", "fattree4"}) {
    EXPECT_EQ(TopologyKindName(ParseTopologyKind(name)), name);
  }
  EXPECT_THROW(ParseTopologyKind("ring"), Error);
}

// --- fault injection --------------------------------------------------------------

TEST(FaultTest, HiddenDivertChangesExactlyOneHeader) {
  const FirewallNet net(27);  // x.1.1.0/27 passes the firewall
  const Header victim = kX + 31;
  FaultSpec spec;
  spec.kind = FaultKind::kTypePMatch;
  spec.target = 0;
  spec.rule = MakeRule(0, 3, 30, {5}, HeaderSet::Singleton(victim), {2});
  spec.affected = spec.rule.match;
  const auto [mutated, truth] = InjectFault(net.config, spec, Prefix(kX, 24), 7);
  EXPECT_EQ(truth.fault_id, 7u);
  EXPECT_TRUE(mutated.Find({0, 0, 3})->hidden);
  EXPECT_EQ(mutated.Visible(), net.config.Visible());
  for (Header h = kX; h < kX + 256; ++h) {
    const auto before = PathOf(net.topo, net.config, h);
    const auto after = PathOf(net.topo, mutated, h);
    const bool via_firewall = std::any_of(after.begin(), after.end(),
                                          [](const Hop& x) { return x.sw == 1; });
    EXPECT_EQ(before != after, h == victim) << FormatHeader(h, 32);
    EXPECT_EQ(via_firewall, h < kX + 32 && h != victim);
  }
}

TEST(FaultTest, MatchWideningAddsSixtyFourHeaders) {
  const FirewallNet net;
  FaultSpec spec;
  spec.kind = FaultKind::kTypePMatch;
  spec.target = 0;
  spec.replaces = RuleKey{0, 0, 1};
  spec.rule = *net.config.Find({0, 0, 1});
  spec.rule.match = HeaderSet::Parse("10.1.1.0-10.1.1.79");
  spec.affected = spec.rule.match.Difference(net.config.Find({0, 0, 1})->match);
  EXPECT_EQ(spec.affected.Cardinality(), 64u);
  const auto [mutated, truth] = InjectFault(net.config, spec, Prefix(kX, 24));
  std::size_t changed = 0;
  for (Header h = kX; h < kX + 256; ++h) {
    const auto a = PathOf(net.topo, net.config, h);
    const auto b = PathOf(net.topo, mutated, h);
    if (a.size() != b.size()) {
      ++changed;
      EXPECT_TRUE(spec.affected.Contains(h));
    }
  }
  EXPECT_EQ(changed, 64u);
  EXPECT_FALSE(mutated.Find({0, 0, 1})->hidden);
}

TEST(FaultTest, ActionFlipKeepsRuleChangesPort) {
  const FirewallNet net;
  FaultSpec spec;
  spec.kind = FaultKind::kTypePAction;
  spec.target = 0;
  spec.replaces = RuleKey{0, 0, 1};
  spec.rule = *net.config.Find({0, 0, 1});
  spec.rule.out_ports = {2};
  spec.affected = spec.rule.match;
  const auto [mutated, truth] = InjectFault(net.config, spec, Prefix(kX, 24));
  const auto a = PathOf(net.topo, net.config, kX + 1);
  const auto b = PathOf(net.topo, mutated, kX + 1);
  ASSERT_FALSE(a.empty());
  ASSERT_FALSE(b.empty());
  EXPECT_EQ(a.front().rule, b.front().rule);
  EXPECT_NE(a.front().outport, b.front().outport);
  EXPECT_NE(a.size(), b.size());
}

TEST(FaultTest, InjectionPreconditions) {
  const FirewallNet net;
  const HeaderSet s_i = Prefix(kX, 24);
  auto code_of = [&](const FaultSpec& s) {
    try {
      InjectFault(net.config, s, s_i);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;  // sentinel: no error
  };
  FaultSpec a;
  a.kind = FaultKind::kTypeAHidden;
  a.target = 0;
  a.rule = MakeRule(0, 9, 50, {5}, Prefix(kX + 16, 28), {1});
  a.affected = a.rule.match;
  EXPECT_EQ(code_of(a), ErrorCode::kInvalidFault);  // overlaps S_i

  a.rule.match = Prefix(kX + 256, 28);
  a.affected = a.rule.match;
  EXPECT_NO_THROW(InjectFault(net.config, a, s_i));

  FaultSpec p = a;
  p.kind = FaultKind::kTypePMatch;
  EXPECT_EQ(code_of(p), ErrorCode::kInvalidFault);  // misses production space

  FaultSpec wrong_switch = a;
  wrong_switch.target = 1;
  EXPECT_EQ(code_of(wrong_switch), ErrorCode::kInvalidFault);

  FaultSpec empty = a;
  empty.affected = HeaderSet::Empty();
  EXPECT_EQ(code_of(empty), ErrorCode::kInvalidFault);

  FaultSpec missing;
  missing.kind = FaultKind::kTypePAction;
  missing.target = 0;
  missing.replaces = RuleKey{0, 0, 77};
  missing.rule = MakeRule(0, 77, 1, {5}, Prefix(kX, 28), {2});
  missing.affected = missing.rule.match;
  EXPECT_EQ(code_of(missing), ErrorCode::kNotFound);
}

TEST(FaultTest, KindNames) {
  for (FaultKind k : {FaultKind::kTypePMatch, FaultKind::kTypePAction,
                      FaultKind::kTypeAHidden}) {
    EXPECT_EQ(ParseFaultKind(FaultKindName(k)), k);
  }
  EXPECT_TRUE(IsTypeP(FaultKind::kTypePAction));
  EXPECT_FALSE(IsTypeP(FaultKind::kTypeAHidden));
}

// --- io ------------------------------------------------------------------------------

TEST(IoTest, TextRoundTrip) {
  const GeneratedNetwork n = Generate(TopologyKind::kFatTree4);
  const Topology t = ParseTopology(FormatTopology(n.topology));
  EXPECT_EQ(t, n.topology);
  const Config c = ParseRules(FormatRules(n.config), &t);
  EXPECT_EQ(c, n.config);
}

TEST(IoTest, JsonRoundTripThroughFiles) {
  GeneratorOptions opts;
  opts.width = 16;
  const GeneratedNetwork n = Generate(TopologyKind::kGrid4, opts);
  const auto dir = std::filesystem::temp_directory_path() / "pazz_io_test";
  std::filesystem::create_directories(dir);
  for (const char* ext : {".txt", ".json"}) {
    const std::string tp = (dir / (std::string("topo") + ext)).string();
    const std::string rp = (dir / (std::string("rules") + ext)).string();
    SaveTopology(tp, n.topology);
    SaveRules(rp, n.config);
    const Topology t = LoadTopology(tp);
    EXPECT_EQ(t, n.topology) << ext;
    EXPECT_EQ(LoadRules(rp, &t), n.config) << ext;
  }
  std::filesystem::remove_all(dir);
}

TEST(IoTest, HiddenFlagAndDropSurvive) {
  Config c(8);
  FlowRule r = MakeRule(3, 4, 5, {1, 2}, HeaderSet::Parse("0-9,200", 8), {});
  r.hidden = true;
  r.table = 2;
  c.Add(r);
  const Config back = ParseRules(FormatRules(c));
  EXPECT_EQ(back, c);
  EXPECT_TRUE(back.Find({3, 2, 4})->IsDrop());
}

Error ErrorOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error raised";
  return Error(ErrorCode::kInvalidArgument, "none");
}

TEST(IoTest, DuplicateRuleNamesIdAndLine) {
  const std::string text =
      "schema width=32\n"
      "rule s=0 t=0 id=1 prio=1 in=* match=10.0.0.0/8 out=1\n"
      "# comment\n"
      "rule s=0 t=0 id=1 prio=2 in=* match=11.0.0.0/8 out=1\n";
  const Error e = ErrorOf([&] { ParseRules(text); });
  EXPECT_EQ(e.code(), ErrorCode::kDuplicateRule);
  EXPECT_EQ(e.line(), 4u);
  EXPECT_NE(std::string(e.what()).find("s0/t0/r1"), std::string::npos);
}

TEST(IoTest, ForeignOutPortIsValidationError) {
  const FirewallNet net;
  const std::string text = "rule s=1 t=0 id=1 prio=1 in=* match=* out=7\n";
  const Error e = ErrorOf([&] { ParseRules(text, &net.topo); });
  EXPECT_EQ(e.code(), ErrorCode::kUnknownPort);
  EXPECT_EQ(e.line(), 1u);
}

TEST(IoTest, MalformedLiteralCarriesLine) {
  const std::string text = "schema width=32\n\nrule s=0 t=0 id=1 prio=1 in=* match=10.0.0/8 out=1\n";
  const Error e = ErrorOf([&] { ParseRules(text); });
  EXPECT_EQ(e.code(), ErrorCode::kMalformedLiteral);
  EXPECT_EQ(e.line(), 3u);
}

TEST(IoTest, DanglingLinkCarriesLine) {
  const std::string text = "switch 0 ports 1,2\nswitch 1 ports 1\nlink 0/1 1/4\n";
  const Error e = ErrorOf([&] { ParseTopology(text); });
  EXPECT_EQ(e.code(), ErrorCode::kDanglingLink);
  EXPECT_EQ(e.line(), 3u);
}

TEST(IoTest, ParseErrorsAreDistinct) {
  EXPECT_EQ(ErrorOf([] { ParseTopology("router 1\n"); }).code(), ErrorCode::kParseError);
  EXPECT_EQ(ErrorOf([] { ParseRules("rule s=0 t=0 id=1\n"); }).code(),
            ErrorCode::kParseError);
  EXPECT_EQ(ErrorOf([] { ParseRules("rule s=x t=0 id=1 prio=1 in=* match=* out=1\n"); })
                .line(),
            1u);
  EXPECT_EQ(ErrorOf([] { LoadTopology("/nonexistent/pazz.txt"); }).code(),
            ErrorCode::kNotFound);
}

}  // namespace
}  // namespace pazz
