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

#ifndef PAZZ_DATAPLANE_VERIFY_TAG_HPP_
#define PAZZ_DATAPLANE_VERIFY_TAG_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include <fmt/format.h>

#include "pazz/common/error.hpp"
#include "pazz/dataplane/hashing.hpp"

namespace pazz {

inline constexpr std::uint16_t kDefaultVerifyEtherType = 0x2080;
inline constexpr std::size_t kVerifyShimBytes = 8;

struct TaggingOptions {
  bool enabled = true;
  std::uint16_t ethertype = kDefaultVerifyEtherType;
  BloomBitOrder bit_order = BloomBitOrder::kLsb;
};

// The Verify shim: EtherType, port bloom filter, rule hash chain.
struct VerifyTag {
  std::uint16_t tag_type = kDefaultVerifyEtherType;
  std::uint32_t verify_port = 0;
  std::uint16_t verify_rule = 0;

  friend bool operator==(const VerifyTag&, const VerifyTag&) = default;
};

inline std::string ToString(const VerifyTag& t) {
  return fmt::format("port=0x{:08x} rule=0x{:04x}", t.verify_port,
                     t.verify_rule);
}

// The four tagging actions.
inline VerifyTag PushVerify(SwitchId sw, PortId inport,
                            const TaggingOptions& opts = {}) {
  return {opts.ethertype, BloomMask(HashUp(sw, inport), opts.bit_order), 1};
}

inline void SetPort(VerifyTag& tag, SwitchId sw, PortId inport,
                    const TaggingOptions& opts = {}) {
  tag.verify_port = BloomAdd(tag.verify_port, HashUp(sw, inport), opts.bit_order);
}

inline void SetRule(VerifyTag& tag, const RuleKey& rule) {
  tag.verify_rule = ChainStep(tag.verify_rule, rule);
}

// pop_verify is the removal of the shim; callers drop their optional tag.

inline std::array<std::uint8_t, kVerifyShimBytes> SerializeShim(
    const VerifyTag& tag) {
  std::array<std::uint8_t, kVerifyShimBytes> out{};
  PutBe16(out.data(), tag.tag_type);
  PutBe32(out.data() + 2, tag.verify_port);
  PutBe16(out.data() + 6, tag.verify_rule);
  return out;
}

inline VerifyTag ParseShim(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kVerifyShimBytes) {
    throw Error(ErrorCode::kInvalidArgument, "Verify shim needs 8 bytes");
  }
  auto be16 = [&](std::size_t i) {
    return static_cast<std::uint16_t>((bytes[i] << 8) | bytes[i + 1]);
  };
  VerifyTag t;
  t.tag_type = be16(0);
  t.verify_port = (std::uint32_t{be16(2)} << 16) | be16(4);
  t.verify_rule = be16(6);
  return t;
}

}  // namespace pazz

#endif  // PAZZ_DATAPLANE_VERIFY_TAG_HPP_
