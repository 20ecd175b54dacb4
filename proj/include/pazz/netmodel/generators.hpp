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

#ifndef PAZZ_NETMODEL_GENERATORS_HPP_
#define PAZZ_NETMODEL_GENERATORS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pazz/common/error.hpp"
#include "pazz/headerspace/header_set.hpp"
#include "pazz/netmodel/flow_rule.hpp"
#include "pazz/netmodel/topology.hpp"

namespace pazz {

enum class TopologyKind { kGrid4, kGrid9, kGrid16, kFatTree4 };

inline TopologyKind ParseTopologyKind(std::string_view name) {
  if (name == "grid4") return TopologyKind::kGrid4;
  if (name == "grid9") return TopologyKind::kGrid9;
  if (name == "grid16") return TopologyKind::kGrid16;
  if (name == "fattree4") return TopologyKind::kFatTree4;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown topology '" + std::string(name) +
                  "' (expected grid4|grid9|grid16|fattree4)");
}

inline std::string_view TopologyKindName(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::kGrid4: return "grid4";
    case TopologyKind::kGrid9: return "grid9";
    case TopologyKind::kGrid16: return "grid16";
    case TopologyKind::kFatTree4: return "fattree4";
  }
  return "?";
}

struct GeneratorOptions {
  // 1.0 reproduces the paper-sized rule counts (about 5k / 27k / 60k / 100k);
  // the default keeps tests fast.
  double rules_scale = 0.1;
  int width = kDefaultHeaderWidth;
  std::uint64_t seed = 1;
};

// One switch traversal of a route template.
struct RouteHop {
  SwitchId sw = 0;
  PortId in = 0;
  PortId out = 0;
  friend bool operator==(const RouteHop&, const RouteHop&) = default;
};

using Route = std::vector<RouteHop>;

// What the generator laid out for the designated pair. `aggregate` is carried
// by every switch except the entry switch's source port, `production` is the
// entry switch's coverage, so `aggregate - production` is left uncovered at
// the entry and covered at the exit.
struct PairLayout {
  PortPair pair;
  HeaderSet aggregate;
  HeaderSet production;
  std::vector<Route> routes;
};

struct GeneratedNetwork {
  Topology topology;
  Config config;
  PairLayout layout;
};

namespace generator_internal {

// Installs destination-prefix routes for the designated pair over the given
// route templates and returns the layout.
inline GeneratedNetwork Populate(Topology topo, std::vector<Route> routes,
                                 double paper_rules,
                                 const GeneratorOptions& opts) {
  const int w = opts.width;
  CheckWidth(w);
  if (w < 4) {
    throw Error(ErrorCode::kInvalidArgument, "generator needs width >= 4");
  }
  std::mt19937_64 rng(opts.seed);
  const PortPair pair{topo.sources().front(), topo.destinations().front()};

  const int agg_bits = std::min(18, w - 1);
  const Header base = w == 32 ? 0x0A000000u : 0u;
  const HeaderSet aggregate = HeaderSet::FromPrefix(base, w - agg_bits, w);
  const int quarter_bits = agg_bits - 2;
  const std::uint64_t quarter = std::uint64_t{1} << quarter_bits;
  const HeaderSet production = HeaderSet::FromRange(
      base, static_cast<Header>(base + 3 * quarter - 1), w);

  // Superblock size from the rule budget: each route costs one rule per hop.
  const double hops = static_cast<double>(routes.front().size());
  const double target = std::max(8.0, paper_rules * opts.rules_scale);
  const double route_budget = std::max(2.0, std::round(target / hops));
  const int min_sb_bits = std::min(2, quarter_bits);
  int sb_bits =
      quarter_bits -
      static_cast<int>(std::lround(std::log2(std::max(1.0, route_budget * 0.25))));
  sb_bits = std::clamp(sb_bits, min_sb_bits, quarter_bits);
  const std::uint64_t sb_size = std::uint64_t{1} << sb_bits;
  const std::uint64_t num_sb = 3 * (quarter >> sb_bits);
  const std::uint64_t num_exc =
      sb_bits >= 2
          ? std::min<std::uint64_t>(
                num_sb, static_cast<std::uint64_t>(std::max(
                            0.0, route_budget - static_cast<double>(num_sb))))
          : 0;

  Config config(w);
  std::map<std::pair<SwitchId, TableId>, RuleId> next_id;
  auto add_rule = [&](SwitchId sw, TableId table, std::uint32_t prio,
                      std::vector<PortId> in, HeaderSet match,
                      std::vector<PortId> out) {
    FlowRule r;
    r.sw = sw;
    r.table = table;
    r.id = next_id[{sw, table}]++;
    r.priority = prio;
    r.in_ports = std::move(in);
    r.match = std::move(match);
    r.out_ports = std::move(out);
    config.Add(std::move(r));
  };
  auto install = [&](const Route& route, const HeaderSet& block,
                     std::uint32_t prio) {
    for (const RouteHop& hop : route) {
      add_rule(hop.sw, 0, prio, {hop.in}, block, {hop.out});
    }
  };

  std::uniform_int_distribution<std::size_t> pick_route(0, routes.size() - 1);
  std::vector<std::size_t> sb_route(num_sb);
  for (std::uint64_t i = 0; i < num_sb; ++i) {
    sb_route[i] = pick_route(rng);
    const Header lo = static_cast<Header>(base + i * sb_size);
    install(routes[sb_route[i]],
            HeaderSet::FromRange(lo, static_cast<Header>(lo + sb_size - 1), w),
            150);
  }

  // Exceptions: a random quarter of distinct superblocks, routed elsewhere.
  std::vector<std::uint64_t> order(num_sb);
  for (std::uint64_t i = 0; i < num_sb; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_int_distribution<int> pick_quarter(0, 3);
  const std::uint64_t exc_size = sb_size / 4;
  for (std::uint64_t e = 0; e < num_exc; ++e) {
    const std::uint64_t sb = order[e];
    std::size_t r = pick_route(rng);
    if (routes.size() > 1) {
      while (r == sb_route[sb]) r = pick_route(rng);
    }
    const Header lo = static_cast<Header>(base + sb * sb_size +
                                          pick_quarter(rng) * exc_size);
    install(routes[r],
            HeaderSet::FromRange(lo, static_cast<Header>(lo + exc_size - 1), w),
            200);
  }

  // Low-priority aggregate in table 1 along a shortest-path tree toward the
  // destination switch.
  const auto dist = topo.DistancesTo(pair.dst.sw);
  for (const auto& [sw, ports] : topo.switches()) {
    PortId out = 0;
    if (sw == pair.dst.sw) {
      out = pair.dst.port;
    } else {
      int best = dist.at(sw);
      for (const auto& [port, peer] : topo.Neighbors(sw)) {
        if (dist.at(peer.sw) < best) {
          best = dist.at(peer.sw);
          out = port;
        }
      }
    }
    std::vector<PortId> in;
    if (sw == pair.src.sw) {
      for (PortId p : ports) {
        if (p != pair.src.port) in.push_back(p);
      }
      if (in.empty()) continue;
    }
    add_rule(sw, 1, 100, std::move(in), aggregate, {out});
  }

  config.Validate(topo);
  PairLayout layout{pair, aggregate, production, std::move(routes)};
  return {std::move(topo), std::move(config), std::move(layout)};
}

}  // namespace generator_internal

// n x n grid. Switch (row, col) has id row*n + col; ports 1..4 are
// north/east/south/west (present only where a neighbor exists) and port 5 is
// a host port. The source is host port 5 of the top-left switch, the
// destination host port 5 of the bottom-right switch. Routes are all
// monotone (right/down) shortest paths, 2(n-1) links long.
inline GeneratedNetwork GenerateGrid(int n_side,
                                     const GeneratorOptions& opts = {}) {
  if (n_side < 2) {
    throw Error(ErrorCode::kInvalidArgument, "grid side must be >= 2");
  }
  const int n = n_side;
  auto id = [n](int r, int c) { return static_cast<SwitchId>(r * n + c); };
  constexpr PortId kNorth = 1, kEast = 2, kSouth = 3, kWest = 4, kHost = 5;
  Topology::Builder b;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      std::vector<PortId> ports{kHost};
      if (r > 0) ports.push_back(kNorth);
      if (c + 1 < n) ports.push_back(kEast);
      if (r + 1 < n) ports.push_back(kSouth);
      if (c > 0) ports.push_back(kWest);
      b.AddSwitch(id(r, c), ports);
    }
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c + 1 < n) b.AddLink({id(r, c), kEast}, {id(r, c + 1), kWest});
      if (r + 1 < n) b.AddLink({id(r, c), kSouth}, {id(r + 1, c), kNorth});
    }
  }
  b.AddSource({id(0, 0), kHost});
  b.AddDestination({id(n - 1, n - 1), kHost});

  std::vector<Route> routes;
  Route current;
  auto walk = [&](auto&& self, int r, int c, PortId in) -> void {
    if (r == n - 1 && c == n - 1) {
      current.push_back({id(r, c), in, kHost});
      routes.push_back(current);
      current.pop_back();
      return;
    }
    if (c + 1 < n) {
      current.push_back({id(r, c), in, kEast});
      self(self, r, c + 1, kWest);
      current.pop_back();
    }
    if (r + 1 < n) {
      current.push_back({id(r, c), in, kSouth});
      self(self, r + 1, c, kNorth);
      current.pop_back();
    }
  };
  walk(walk, 0, 0, kHost);

  double paper_rules = 4000.0 * n * n;
  if (n == 2) paper_rules = 5000;
  if (n == 3) paper_rules = 27000;
  if (n == 4) paper_rules = 60000;
  return generator_internal::Populate(b.Build(), std::move(routes),
                                      paper_rules, opts);
}

// Standard k-ary fat-tree: (k/2)^2 cores, k pods of k/2 aggregation and k/2
// ToR switches. Ids: cores first, then aggregation switches pod by pod, then
// ToRs. The designated pair runs from a host port of ToR 0 in pod 0 to a host
// port of ToR 0 in pod 1. Route templates enter pod 1 through its sibling ToR
// (ToR 1) and reach the destination ToR through the other aggregation
// switch, giving 6-link paths through distinct cores.
inline GeneratedNetwork GenerateFatTree(int k,
                                        const GeneratorOptions& opts = {}) {
  if (k < 4 || k % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "fat-tree arity must be even and >= 4, got " +
                    std::to_string(k));
  }
  const int half = k / 2;
  const int cores = half * half;
  auto core = [&](int c) { return static_cast<SwitchId>(c); };
  auto agg = [&](int pod, int j) {
    return static_cast<SwitchId>(cores + pod * half + j);
  };
  auto tor = [&](int pod, int t) {
    return static_cast<SwitchId>(cores + k * half + pod * half + t);
  };
  Topology::Builder b;
  auto range = [](int lo, int hi) {
    std::vector<PortId> v;
    for (int p = lo; p <= hi; ++p) v.push_back(static_cast<PortId>(p));
    return v;
  };
  for (int c = 0; c < cores; ++c) b.AddSwitch(core(c), range(1, k));
  for (int pod = 0; pod < k; ++pod) {
    for (int j = 0; j < half; ++j) b.AddSwitch(agg(pod, j), range(1, k));
    for (int t = 0; t < half; ++t) b.AddSwitch(tor(pod, t), range(1, k));
  }
  for (int pod = 0; pod < k; ++pod) {
    for (int j = 0; j < half; ++j) {
      for (int t = 0; t < half; ++t) {
        b.AddLink({tor(pod, t), static_cast<PortId>(j + 1)},
                  {agg(pod, j), static_cast<PortId>(t + 1)});
      }
      for (int c = 0; c < half; ++c) {
        b.AddLink({agg(pod, j), static_cast<PortId>(half + 1 + c)},
                  {core(j * half + c), static_cast<PortId>(pod + 1)});
      }
    }
  }
  const PortId host = static_cast<PortId>(half + 1);
  b.AddSource({tor(0, 0), host});
  b.AddDestination({tor(1, 0), host});

  std::vector<Route> routes;
  for (int j = 0; j < half; ++j) {
    for (int c = 0; c < half; ++c) {
      for (int j2 = 0; j2 < half; ++j2) {
        if (j2 == j) continue;
        const PortId up = static_cast<PortId>(half + 1 + c);
        routes.push_back({
            {tor(0, 0), host, static_cast<PortId>(j + 1)},
            {agg(0, j), 1, up},
            {core(j * half + c), 1, 2},
            {agg(1, j), up, 2},
            {tor(1, 1), static_cast<PortId>(j + 1),
             static_cast<PortId>(j2 + 1)},
            {agg(1, j2), 2, 1},
            {tor(1, 0), static_cast<PortId>(j2 + 1), host},
        });
      }
    }
  }
  const double paper_rules = 100000.0 * (k * k * k) / 64.0;
  return generator_internal::Populate(b.Build(), std::move(routes),
                                      paper_rules, opts);
}

inline GeneratedNetwork Generate(TopologyKind kind,
                                 const GeneratorOptions& opts = {}) {
  switch (kind) {
    case TopologyKind::kGrid4: return GenerateGrid(2, opts);
    case TopologyKind::kGrid9: return GenerateGrid(3, opts);
    case TopologyKind::kGrid16: return GenerateGrid(4, opts);
    case TopologyKind::kFatTree4: return GenerateFatTree(4, opts);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown topology kind");
}

}  // namespace pazz

#endif  // PAZZ_NETMODEL_GENERATORS_HPP_
