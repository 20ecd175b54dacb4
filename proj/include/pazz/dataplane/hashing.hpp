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

#ifndef PAZZ_DATAPLANE_HASHING_HPP_
#define PAZZ_DATAPLANE_HASHING_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "pazz/netmodel/flow_rule.hpp"
#include "pazz/netmodel/topology.hpp"

namespace pazz {

// Bob Jenkins' lookup3 hashlittle(), byte-at-a-time variant, so the result
// does not depend on host endianness or alignment.
inline std::uint32_t JenkinsHash(std::span<const std::uint8_t> key,
                                 std::uint32_t initval = 0) {
  auto rot = [](std::uint32_t x, int k) { return (x << k) | (x >> (32 - k)); };
  std::uint32_t a, b, c;
  a = b = c = 0xdeadbeefu + static_cast<std::uint32_t>(key.size()) + initval;
  const std::uint8_t* k = key.data();
  std::size_t length = key.size();
  auto word = [](const std::uint8_t* p, std::size_t n) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < n; ++i) v += std::uint32_t{p[i]} << (8 * i);
    return v;
  };
  while (length > 12) {
    a += word(k, 4);
    b += word(k + 4, 4);
    c += word(k + 8, 4);
    a -= c; a ^= rot(c, 4);  c += b;
    b -= a; b ^= rot(a, 6);  a += c;
    c -= b; c ^= rot(b, 8);  b += a;
    a -= c; a ^= rot(c, 16); c += b;
    b -= a; b ^= rot(a, 19); a += c;
    c -= b; c ^= rot(b, 4);  b += a;
    length -= 12;
    k += 12;
  }
  if (length == 0) return c;
  a += word(k, std::min<std::size_t>(length, 4));
  if (length > 4) b += word(k + 4, std::min<std::size_t>(length - 4, 4));
  if (length > 8) c += word(k + 8, length - 8);
  c ^= b; c -= rot(b, 14);
  a ^= c; a -= rot(c, 11);
  b ^= a; b -= rot(a, 25);
  c ^= b; c -= rot(b, 16);
  a ^= c; a -= rot(c, 4);
  b ^= a; b -= rot(a, 14);
  c ^= b; c -= rot(b, 24);
  return c;
}

// CRC-16/CCITT-FALSE: poly 0x1021, init 0xFFFF, no reflection, no xorout.
inline std::uint16_t Crc16(std::span<const std::uint8_t> data,
                           std::uint16_t crc = 0xFFFF) {
  static const std::array<std::uint16_t, 256> kTable = [] {
    std::array<std::uint16_t, 256> t{};
    for (int i = 0; i < 256; ++i) {
      std::uint16_t v = static_cast<std::uint16_t>(i << 8);
      for (int bit = 0; bit < 8; ++bit) {
        v = static_cast<std::uint16_t>((v & 0x8000) ? (v << 1) ^ 0x1021
                                                    : (v << 1));
      }
      t[i] = v;
    }
    return t;
  }();
  for (std::uint8_t byte : data) {
    crc = static_cast<std::uint16_t>((crc << 8) ^
                                     kTable[((crc >> 8) ^ byte) & 0xFF]);
  }
  return crc;
}

inline void PutBe32(std::uint8_t* p, std::uint32_t v) {
  p[0] = static_cast<std::uint8_t>(v >> 24);
  p[1] = static_cast<std::uint8_t>(v >> 16);
  p[2] = static_cast<std::uint8_t>(v >> 8);
  p[3] = static_cast<std::uint8_t>(v);
}

inline void PutBe16(std::uint8_t* p, std::uint16_t v) {
  p[0] = static_cast<std::uint8_t>(v >> 8);
  p[1] = static_cast<std::uint8_t>(v);
}

// u_p = switch(32, BE) || inport(32, BE).
inline std::array<std::uint8_t, 8> PortIdentity(SwitchId sw, PortId port) {
  std::array<std::uint8_t, 8> out{};
  PutBe32(out.data(), sw);
  PutBe32(out.data() + 4, port);
  return out;
}

// u_r = switch(32, BE) || rule(32, BE) || table(16, BE).
inline std::array<std::uint8_t, 10> RuleIdentity(SwitchId sw, RuleId rule,
                                                 TableId table) {
  std::array<std::uint8_t, 10> out{};
  PutBe32(out.data(), sw);
  PutBe32(out.data() + 4, rule);
  PutBe16(out.data() + 8, table);
  return out;
}

inline std::array<std::uint8_t, 10> RuleIdentity(const RuleKey& key) {
  return RuleIdentity(key.sw, key.rule, key.table);
}

inline std::uint32_t HashUp(SwitchId sw, PortId port) {
  return JenkinsHash(PortIdentity(sw, port));
}

// Which five bits of g_i select the filter position.
enum class BloomBitOrder { kLsb, kMsb };

inline constexpr int kBloomHashes = 3;
inline constexpr int kBloomBits = 32;

// g_i = h1 + i*h2 (mod 2^16) with h1/h2 the high/low halves of the digest.
inline std::array<int, kBloomHashes> BloomPositions(
    std::uint32_t digest, BloomBitOrder order = BloomBitOrder::kLsb) {
  const std::uint16_t h1 = static_cast<std::uint16_t>(digest >> 16);
  const std::uint16_t h2 = static_cast<std::uint16_t>(digest);
  std::array<int, kBloomHashes> pos{};
  for (int i = 0; i < kBloomHashes; ++i) {
    const std::uint16_t g = static_cast<std::uint16_t>(h1 + i * h2);
    pos[i] = order == BloomBitOrder::kLsb ? (g & 31) : (g >> 11);
  }
  return pos;
}

inline std::uint32_t BloomMask(std::uint32_t digest,
                               BloomBitOrder order = BloomBitOrder::kLsb) {
  std::uint32_t mask = 0;
  for (int p : BloomPositions(digest, order)) mask |= std::uint32_t{1} << p;
  return mask;
}

inline std::uint32_t BloomAdd(std::uint32_t bloom, std::uint32_t digest,
                              BloomBitOrder order = BloomBitOrder::kLsb) {
  return bloom | BloomMask(digest, order);
}

inline bool BloomContains(std::uint32_t bloom, std::uint32_t digest,
                          BloomBitOrder order = BloomBitOrder::kLsb) {
  const std::uint32_t mask = BloomMask(digest, order);
  return (bloom & mask) == mask;
}

// One link of the rule hash chain: CRC-16 over prev(16, BE) || u_r.
inline std::uint16_t ChainStep(std::uint16_t prev,
                               std::span<const std::uint8_t> rule_identity) {
  std::array<std::uint8_t, 2> head{};
  PutBe16(head.data(), prev);
  return Crc16(rule_identity, Crc16(head));
}

inline std::uint16_t ChainStep(std::uint16_t prev, const RuleKey& key) {
  return ChainStep(prev, RuleIdentity(key));
}

}  // namespace pazz

#endif  // PAZZ_DATAPLANE_HASHING_HPP_
