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

#ifndef PAZZ_NETMODEL_IO_HPP_
#define PAZZ_NETMODEL_IO_HPP_

#include <charconv>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pazz/common/error.hpp"
#include "pazz/headerspace/header_set.hpp"
#include "pazz/netmodel/flow_rule.hpp"
#include "pazz/netmodel/topology.hpp"

// Line-oriented text formats, one declaration per line, '#' starts a comment.
//
// Topology:
//   switch 0 ports 1,2,5
//   link 0/2 1/4
//   source 0/5
//   dest 3/5
//
// Rules:
//   schema width=32
//   rule s=0 t=0 id=3 prio=150 in=1,2 match=10.0.0.0/24 out=2 [hidden]
//
// `in=*` applies to every inport and `out=drop` is an explicit drop rule.

namespace pazz {

namespace io_internal {

inline std::vector<std::string_view> Tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

template <typename T>
T ParseUnsigned(std::string_view s, std::size_t line, std::string_view what) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty() ||
      v > std::numeric_limits<T>::max()) {
    throw Error(ErrorCode::kParseError,
                "bad " + std::string(what) + " '" + std::string(s) + "'",
                line);
  }
  return static_cast<T>(v);
}

inline Endpoint ParseEndpoint(std::string_view s, std::size_t line) {
  const std::size_t slash = s.find('/');
  if (slash == std::string_view::npos) {
    throw Error(ErrorCode::kParseError,
                "endpoint '" + std::string(s) + "' is not sw/port", line);
  }
  return {ParseUnsigned<SwitchId>(s.substr(0, slash), line, "switch id"),
          ParseUnsigned<PortId>(s.substr(slash + 1), line, "port id")};
}

inline std::vector<PortId> ParsePortList(std::string_view s, std::size_t line) {
  std::vector<PortId> ports;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    if (comma == std::string_view::npos) comma = s.size();
    ports.push_back(
        ParseUnsigned<PortId>(s.substr(start, comma - start), line, "port"));
    start = comma + 1;
  }
  return ports;
}

inline std::string JoinPorts(const std::vector<PortId>& ports) {
  std::string out;
  for (PortId p : ports) {
    if (!out.empty()) out += ",";
    out += std::to_string(p);
  }
  return out;
}

// Re-raises a model error with the offending line attached.
template <typename F>
void AtLine(std::size_t line, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.line() != 0) throw;
    std::string msg = e.what();
    const std::size_t colon = msg.find(": ");
    throw Error(e.code(),
                colon == std::string::npos ? msg : msg.substr(colon + 2), line);
  }
}

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void WriteFile(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << data;
}

inline bool IsJsonPath(std::string_view path) {
  return path.size() >= 5 && path.substr(path.size() - 5) == ".json";
}

}  // namespace io_internal

inline std::string FormatTopology(const Topology& topo) {
  using io_internal::JoinPorts;
  std::ostringstream out;
  for (const auto& [sw, ports] : topo.switches()) {
    out << "switch " << sw << " ports " << JoinPorts(ports) << "\n";
  }
  for (const Link& l : topo.links()) {
    out << "link " << ToString(l.a) << " " << ToString(l.b) << "\n";
  }
  for (const Endpoint& e : topo.sources()) out << "source " << ToString(e) << "\n";
  for (const Endpoint& e : topo.destinations()) {
    out << "dest " << ToString(e) << "\n";
  }
  return out.str();
}

inline Topology ParseTopology(std::string_view text) {
  using namespace io_internal;
  Topology::Builder b;
  std::size_t line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    const auto tok = Tokens(line);
    if (tok.empty()) continue;
    AtLine(line_no, [&] {
      if (tok[0] == "switch" && tok.size() == 4 && tok[2] == "ports") {
        b.AddSwitch(ParseUnsigned<SwitchId>(tok[1], line_no, "switch id"),
                    ParsePortList(tok[3], line_no));
      } else if (tok[0] == "link" && tok.size() == 3) {
        b.AddLink(ParseEndpoint(tok[1], line_no), ParseEndpoint(tok[2], line_no));
      } else if (tok[0] == "source" && tok.size() == 2) {
        b.AddSource(ParseEndpoint(tok[1], line_no));
      } else if (tok[0] == "dest" && tok.size() == 2) {
        b.AddDestination(ParseEndpoint(tok[1], line_no));
      } else {
        throw Error(ErrorCode::kParseError,
                    "unrecognized declaration '" + std::string(line) + "'",
                    line_no);
      }
    });
  }
  return b.Build();
}

inline std::string FormatRule(const FlowRule& r) {
  using io_internal::JoinPorts;
  std::string out = "rule s=" + std::to_string(r.sw) +
                    " t=" + std::to_string(r.table) +
                    " id=" + std::to_string(r.id) +
                    " prio=" + std::to_string(r.priority) + " in=" +
                    (r.in_ports.empty() ? "*" : JoinPorts(r.in_ports)) +
                    " match=" + r.match.ToString() + " out=" +
                    (r.out_ports.empty() ? "drop" : JoinPorts(r.out_ports));
  if (r.hidden) out += " hidden";
  return out;
}

inline std::string FormatRules(const Config& config) {
  std::string out = "schema width=" + std::to_string(config.width()) + "\n";
  for (const auto& [key, rule] : config.rules()) {
    out += FormatRule(rule);
    out += "\n";
  }
  return out;
}

// Parses a rules file. When `topo` is given each rule is validated against it
// as it is read, so errors carry the offending line.
inline Config ParseRules(std::string_view text, const Topology* topo = nullptr) {
  using namespace io_internal;
  std::optional<Config> config;
  std::size_t line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    const auto tok = Tokens(line);
    if (tok.empty()) continue;
    if (tok[0] == "schema") {
      if (config || tok.size() != 2 || tok[1].substr(0, 6) != "width=") {
        throw Error(ErrorCode::kParseError, "bad schema declaration", line_no);
      }
      const int w = ParseUnsigned<int>(tok[1].substr(6), line_no, "width");
      AtLine(line_no, [&] { CheckWidth(w); });
      config.emplace(w);
      continue;
    }
    if (tok[0] != "rule") {
      throw Error(ErrorCode::kParseError,
                  "unrecognized declaration '" + std::string(line) + "'",
                  line_no);
    }
    if (!config) config.emplace(kDefaultHeaderWidth);
    FlowRule r;
    bool seen[7] = {};
    for (std::size_t i = 1; i < tok.size(); ++i) {
      const std::string_view t = tok[i];
      if (t == "hidden") {
        r.hidden = true;
        continue;
      }
      const std::size_t eq = t.find('=');
      if (eq == std::string_view::npos) {
        throw Error(ErrorCode::kParseError,
                    "expected key=value, got '" + std::string(t) + "'",
                    line_no);
      }
      const std::string_view k = t.substr(0, eq);
      const std::string_view v = t.substr(eq + 1);
      if (k == "s") {
        r.sw = ParseUnsigned<SwitchId>(v, line_no, "switch id");
        seen[0] = true;
      } else if (k == "t") {
        r.table = ParseUnsigned<TableId>(v, line_no, "table id");
        seen[1] = true;
      } else if (k == "id") {
        r.id = ParseUnsigned<RuleId>(v, line_no, "rule id");
        seen[2] = true;
      } else if (k == "prio") {
        r.priority = ParseUnsigned<std::uint32_t>(v, line_no, "priority");
        seen[3] = true;
      } else if (k == "in") {
        if (v != "*") r.in_ports = ParsePortList(v, line_no);
        seen[4] = true;
      } else if (k == "match") {
        AtLine(line_no, [&] { r.match = HeaderSet::Parse(v, config->width()); });
        seen[5] = true;
      } else if (k == "out") {
        if (v != "drop") r.out_ports = ParsePortList(v, line_no);
        seen[6] = true;
      } else {
        throw Error(ErrorCode::kParseError,
                    "unknown rule field '" + std::string(k) + "'", line_no);
      }
    }
    for (bool s : seen) {
      if (!s) {
        throw Error(ErrorCode::kParseError,
                    "rule needs s, t, id, prio, in, match and out", line_no);
      }
    }
    AtLine(line_no, [&] {
      if (topo != nullptr) {
        Config one(config->width());
        one.Add(r);
        one.Validate(*topo);
      }
      config->Add(std::move(r));
    });
  }
  return config ? std::move(*config) : Config();
}

inline nlohmann::json TopologyToJson(const Topology& topo) {
  nlohmann::json j;
  j["switches"] = nlohmann::json::array();
  for (const auto& [sw, ports] : topo.switches()) {
    j["switches"].push_back({{"id", sw}, {"ports", ports}});
  }
  j["links"] = nlohmann::json::array();
  for (const Link& l : topo.links()) {
    j["links"].push_back({ToString(l.a), ToString(l.b)});
  }
  j["sources"] = nlohmann::json::array();
  for (const Endpoint& e : topo.sources()) j["sources"].push_back(ToString(e));
  j["destinations"] = nlohmann::json::array();
  for (const Endpoint& e : topo.destinations()) {
    j["destinations"].push_back(ToString(e));
  }
  return j;
}

inline Topology TopologyFromJson(const nlohmann::json& j) {
  using io_internal::ParseEndpoint;
  try {
    Topology::Builder b;
    for (const auto& s : j.at("switches")) {
      b.AddSwitch(s.at("id").get<SwitchId>(),
                  s.at("ports").get<std::vector<PortId>>());
    }
    for (const auto& l : j.at("links")) {
      b.AddLink(ParseEndpoint(l.at(0).get<std::string>(), 0),
                ParseEndpoint(l.at(1).get<std::string>(), 0));
    }
    for (const auto& e : j.at("sources")) {
      b.AddSource(ParseEndpoint(e.get<std::string>(), 0));
    }
    for (const auto& e : j.at("destinations")) {
      b.AddDestination(ParseEndpoint(e.get<std::string>(), 0));
    }
    return b.Build();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

inline nlohmann::json RuleToJson(const FlowRule& r) {
  return {{"sw", r.sw},
          {"table", r.table},
          {"id", r.id},
          {"priority", r.priority},
          {"in", r.in_ports},
          {"match", r.match.ToString()},
          {"out", r.out_ports},
          {"hidden", r.hidden}};
}

inline FlowRule RuleFromJson(const nlohmann::json& j, int width) {
  FlowRule r;
  r.sw = j.at("sw").get<SwitchId>();
  r.table = j.at("table").get<TableId>();
  r.id = j.at("id").get<RuleId>();
  r.priority = j.at("priority").get<std::uint32_t>();
  r.in_ports = j.at("in").get<std::vector<PortId>>();
  r.match = HeaderSet::Parse(j.at("match").get<std::string>(), width);
  r.out_ports = j.at("out").get<std::vector<PortId>>();
  r.hidden = j.value("hidden", false);
  return r;
}

inline nlohmann::json RulesToJson(const Config& config) {
  nlohmann::json j;
  j["width"] = config.width();
  j["rules"] = nlohmann::json::array();
  for (const auto& [key, rule] : config.rules()) {
    j["rules"].push_back(RuleToJson(rule));
  }
  return j;
}

inline Config RulesFromJson(const nlohmann::json& j,
                            const Topology* topo = nullptr) {
  try {
    const int width = j.value("width", kDefaultHeaderWidth);
    CheckWidth(width);
    Config config(width);
    for (const auto& r : j.at("rules")) config.Add(RuleFromJson(r, width));
    if (topo != nullptr) config.Validate(*topo);
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

// File helpers pick the JSON form for paths ending in ".json".
inline Topology LoadTopology(const std::string& path) {
  const std::string data = io_internal::ReadFile(path);
  if (io_internal::IsJsonPath(path)) {
    try {
      return TopologyFromJson(nlohmann::json::parse(data));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParseError, path + ": " + e.what());
    }
  }
  return ParseTopology(data);
}

inline Config LoadRules(const std::string& path, const Topology* topo = nullptr) {
  const std::string data = io_internal::ReadFile(path);
  if (io_internal::IsJsonPath(path)) {
    try {
      return RulesFromJson(nlohmann::json::parse(data), topo);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParseError, path + ": " + e.what());
    }
  }
  return ParseRules(data, topo);
}

inline void SaveTopology(const std::string& path, const Topology& topo) {
  io_internal::WriteFile(path, io_internal::IsJsonPath(path)
                                   ? TopologyToJson(topo).dump(2) + "\n"
                                   : FormatTopology(topo));
}

inline void SaveRules(const std::string& path, const Config& config) {
  io_internal::WriteFile(path, io_internal::IsJsonPath(path)
                                   ? RulesToJson(config).dump(1) + "\n"
                                   : FormatRules(config));
}

}  // namespace pazz

#endif  // PAZZ_NETMODEL_IO_HPP_
