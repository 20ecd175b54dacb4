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

#ifndef PAZZ_DATAPLANE_TRACE_IO_HPP_
#define PAZZ_DATAPLANE_TRACE_IO_HPP_

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "pazz/common/error.hpp"
#include "pazz/dataplane/simulator.hpp"
#include "pazz/netmodel/io.hpp"

// Trace text, one packet per line:
//   pkt t=0.000100 cls=prod seq=12 at=0/5 hdr=10.0.1.3
//   report t=0.000160 cls=fuzz seq=3 copy=0 entry=0/5 egress=15/5
//          hdr=10.3.0.7 port=0x00a10204 rule=0x5c1e      (one line)

namespace pazz {

struct PacketRecord {
  double time = 0.0;
  TrafficClass cls = TrafficClass::kProduction;
  std::uint64_t seq = 0;
  Endpoint at;
  Header header = 0;
  friend bool operator==(const PacketRecord&, const PacketRecord&) = default;
};

namespace trace_internal {

inline std::map<std::string_view, std::string_view> Fields(
    std::string_view line, std::string_view kind, std::size_t line_no) {
  const auto tok = io_internal::Tokens(line);
  if (tok.empty() || tok[0] != kind) {
    throw Error(ErrorCode::kParseError,
                "expected '" + std::string(kind) + "' record", line_no);
  }
  std::map<std::string_view, std::string_view> out;
  for (std::size_t i = 1; i < tok.size(); ++i) {
    const std::size_t eq = tok[i].find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParseError,
                  "expected key=value, got '" + std::string(tok[i]) + "'",
                  line_no);
    }
    out[tok[i].substr(0, eq)] = tok[i].substr(eq + 1);
  }
  return out;
}

inline std::string_view Need(
    const std::map<std::string_view, std::string_view>& f,
    std::string_view key, std::size_t line_no) {
  auto it = f.find(key);
  if (it == f.end()) {
    throw Error(ErrorCode::kParseError,
                "missing field '" + std::string(key) + "'", line_no);
  }
  return it->second;
}

inline double ParseTime(std::string_view s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError, "bad time '" + std::string(s) + "'",
                line_no);
  }
}

inline TrafficClass ParseClass(std::string_view s, std::size_t line_no) {
  if (s == "prod") return TrafficClass::kProduction;
  if (s == "fuzz") return TrafficClass::kFuzz;
  throw Error(ErrorCode::kParseError, "bad class '" + std::string(s) + "'",
              line_no);
}

}  // namespace trace_internal

inline std::string FormatPacketLine(const PacketRecord& p, int width) {
  return fmt::format("pkt t={:.6f} cls={} seq={} at={} hdr={}", p.time,
                     TrafficClassName(p.cls), p.seq, ToString(p.at),
                     FormatHeader(p.header, width));
}

inline PacketRecord ParsePacketLine(std::string_view line, int width,
                                    std::size_t line_no = 0) {
  using namespace trace_internal;
  const auto f = Fields(line, "pkt", line_no);
  PacketRecord p;
  p.time = ParseTime(Need(f, "t", line_no), line_no);
  p.cls = ParseClass(Need(f, "cls", line_no), line_no);
  p.seq = io_internal::ParseUnsigned<std::uint64_t>(Need(f, "seq", line_no),
                                                    line_no, "seq");
  p.at = io_internal::ParseEndpoint(Need(f, "at", line_no), line_no);
  p.header = ParseHeader(Need(f, "hdr", line_no), width);
  return p;
}

inline std::string FormatReportLine(const SampledReport& r, int width) {
  return fmt::format(
      "report t={:.6f} cls={} seq={} copy={} entry={} egress={} hdr={} "
      "port=0x{:08x} rule=0x{:04x}",
      r.time, TrafficClassName(r.cls), r.seq, r.copy,
      r.report.entry ? ToString(*r.report.entry) : std::string("-"),
      ToString(r.report.egress), FormatHeader(r.report.header, width),
      r.report.tag.verify_port, r.report.tag.verify_rule);
}

inline SampledReport ParseReportLine(std::string_view line, int width,
                                     std::size_t line_no = 0) {
  using namespace trace_internal;
  const auto f = Fields(line, "report", line_no);
  SampledReport r;
  r.time = ParseTime(Need(f, "t", line_no), line_no);
  r.cls = ParseClass(Need(f, "cls", line_no), line_no);
  r.seq = io_internal::ParseUnsigned<std::uint64_t>(Need(f, "seq", line_no),
                                                    line_no, "seq");
  r.copy = io_internal::ParseUnsigned<std::uint32_t>(Need(f, "copy", line_no),
                                                     line_no, "copy");
  const std::string_view entry = Need(f, "entry", line_no);
  if (entry != "-") r.report.entry = io_internal::ParseEndpoint(entry, line_no);
  r.report.egress = io_internal::ParseEndpoint(Need(f, "egress", line_no), line_no);
  r.report.header = ParseHeader(Need(f, "hdr", line_no), width);
  r.report.tag.verify_port =
      static_cast<std::uint32_t>(ParseHeader(Need(f, "port", line_no), 32));
  const Header rule = ParseHeader(Need(f, "rule", line_no), 32);
  if (rule > 0xFFFF) {
    throw Error(ErrorCode::kParseError, "rule chain exceeds 16 bits", line_no);
  }
  r.report.tag.verify_rule = static_cast<std::uint16_t>(rule);
  return r;
}

// Ethernet frame for a report: MACs, Verify shim, original EtherType 0x0800,
// a minimal IPv4 + UDP header carrying the packet header as destination.
inline std::vector<std::uint8_t> BuildFrame(const ActualReport& r) {
  std::vector<std::uint8_t> f;
  const std::uint8_t dst_mac[6] = {0x02, 0, 0, 0, 0,
                                   static_cast<std::uint8_t>(r.egress.port)};
  const std::uint8_t src_mac[6] = {0x02, 0, 0, 0, 1,
                                   static_cast<std::uint8_t>(r.egress.sw)};
  f.insert(f.end(), dst_mac, dst_mac + 6);
  f.insert(f.end(), src_mac, src_mac + 6);
  const auto shim = SerializeShim(r.tag);
  f.insert(f.end(), shim.begin(), shim.end());
  f.push_back(0x08);
  f.push_back(0x00);
  std::uint8_t ip[20] = {0x45, 0, 0, 28, 0, 0, 0x40, 0, 64, 17};
  PutBe32(ip + 12, 0x0A000001u);
  PutBe32(ip + 16, r.header);
  std::uint32_t sum = 0;
  for (int i = 0; i < 20; i += 2) sum += (ip[i] << 8) | ip[i + 1];
  while (sum >> 16) sum = (sum & 0xFFFF) + (sum >> 16);
  PutBe16(ip + 10, static_cast<std::uint16_t>(~sum));
  f.insert(f.end(), ip, ip + 20);
  const std::uint8_t udp[8] = {0x30, 0x39, 0x00, 0x50, 0x00, 0x08, 0, 0};
  f.insert(f.end(), udp, udp + 8);
  return f;
}

// Classic little-endian pcap, Ethernet link type.
class PcapWriter {
 public:
  explicit PcapWriter(const std::string& path)
      : out_(path, std::ios::binary) {
    if (!out_) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
    Le32(0xa1b2c3d4);
    Le16(2);
    Le16(4);
    Le32(0);
    Le32(0);
    Le32(65535);
    Le32(1);
  }

  void Write(double time, const ActualReport& r) {
    const auto frame = BuildFrame(r);
    const auto sec = static_cast<std::uint32_t>(time);
    Le32(sec);
    Le32(static_cast<std::uint32_t>((time - sec) * 1e6));
    Le32(static_cast<std::uint32_t>(frame.size()));
    Le32(static_cast<std::uint32_t>(frame.size()));
    out_.write(reinterpret_cast<const char*>(frame.data()),
               static_cast<std::streamsize>(frame.size()));
  }

 private:
  void Le32(std::uint32_t v) {
    const char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
                       static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
    out_.write(b, 4);
  }
  void Le16(std::uint16_t v) {
    const char b[2] = {static_cast<char>(v), static_cast<char>(v >> 8)};
    out_.write(b, 2);
  }

  std::ofstream out_;
};

}  // namespace pazz

#endif  // PAZZ_DATAPLANE_TRACE_IO_HPP_
