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

#ifndef PAZZ_HEADERSPACE_HEADER_SET_HPP_
#define PAZZ_HEADERSPACE_HEADER_SET_HPP_

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <iterator>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pazz/common/error.hpp"

namespace pazz {

// A packet header value. Only the low `width` bits are meaningful.
using Header = std::uint32_t;

inline constexpr int kDefaultHeaderWidth = 32;

// Closed interval [lo, hi] of header values.
struct Interval {
  Header lo = 0;
  Header hi = 0;

  std::uint64_t size() const { return std::uint64_t{hi} - lo + 1; }
  bool Contains(Header h) const { return lo <= h && h <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

inline std::uint64_t UniverseSize(int width) {
  return std::uint64_t{1} << width;
}

inline Header MaxHeader(int width) {
  return static_cast<Header>(UniverseSize(width) - 1);
}

inline void CheckWidth(int width) {
  if (width < 1 || width > 32) {
    throw Error(ErrorCode::kInvalidArgument,
                "header width must be in 1..32, got " + std::to_string(width));
  }
}

// An immutable set of headers over a `width`-bit header vector, stored as a
// sorted list of disjoint, non-adjacent intervals. The representation is
// canonical, so structural equality is set equality.
class HeaderSet {
 public:
  HeaderSet() = default;

  static HeaderSet Empty(int width = kDefaultHeaderWidth) {
    CheckWidth(width);
    HeaderSet s;
    s.width_ = width;
    return s;
  }

  static HeaderSet Universe(int width = kDefaultHeaderWidth) {
    CheckWidth(width);
    return FromCanonical(width, {{0, MaxHeader(width)}});
  }

  static HeaderSet Singleton(Header h, int width = kDefaultHeaderWidth) {
    return FromRange(h, h, width);
  }

  static HeaderSet FromRange(Header lo, Header hi,
                             int width = kDefaultHeaderWidth) {
    CheckWidth(width);
    if (lo > hi || hi > MaxHeader(width)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "range " + std::to_string(lo) + "-" + std::to_string(hi) +
                      " is not valid for width " + std::to_string(width));
    }
    return FromCanonical(width, {{lo, hi}});
  }

  // All headers sharing the top `prefix_len` bits of `address`. Host bits of
  // the address are ignored.
  static HeaderSet FromPrefix(Header address, int prefix_len,
                              int width = kDefaultHeaderWidth) {
    CheckWidth(width);
    if (prefix_len < 0 || prefix_len > width) {
      throw Error(ErrorCode::kInvalidArgument,
                  "prefix length " + std::to_string(prefix_len) +
                      " exceeds header width " + std::to_string(width));
    }
    if (address > MaxHeader(width)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "address does not fit in " + std::to_string(width) +
                      " bits");
    }
    const int host_bits = width - prefix_len;
    const std::uint64_t span = std::uint64_t{1} << host_bits;
    const std::uint64_t lo = (std::uint64_t{address} >> host_bits) << host_bits;
    return FromCanonical(width, {{static_cast<Header>(lo),
                                  static_cast<Header>(lo + span - 1)}});
  }

  // Builds a set from arbitrary (possibly overlapping, unsorted) intervals.
  static HeaderSet FromIntervals(std::vector<Interval> intervals,
                                 int width = kDefaultHeaderWidth) {
    CheckWidth(width);
    for (const Interval& iv : intervals) {
      if (iv.lo > iv.hi || iv.hi > MaxHeader(width)) {
        throw Error(ErrorCode::kInvalidArgument, "bad interval");
      }
    }
    std::sort(intervals.begin(), intervals.end());
    HeaderSet s = Empty(width);
    for (const Interval& iv : intervals) s.AppendMerging(iv);
    return s;
  }

  // Literal syntax: comma-separated terms, each one of
  //   "*"                universe
  //   "empty"            empty set
  //   "A"                single header
  //   "A/len"            prefix
  //   "A-B"              inclusive range
  // where A and B are dotted quads (width 32 only), decimal, or 0x-hex.
  static HeaderSet Parse(std::string_view text,
                         int width = kDefaultHeaderWidth);

  int width() const { return width_; }
  const std::vector<Interval>& intervals() const { return intervals_; }

  bool IsEmpty() const { return intervals_.empty(); }
  bool IsUniverse() const {
    return intervals_.size() == 1 && intervals_[0].lo == 0 &&
           intervals_[0].hi == MaxHeader(width_);
  }

  // Exact count; up to 2^32 for the default width.
  std::uint64_t Cardinality() const {
    std::uint64_t n = 0;
    for (const Interval& iv : intervals_) n += iv.size();
    return n;
  }

  bool Contains(Header h) const {
    auto it = std::upper_bound(
        intervals_.begin(), intervals_.end(), h,
        [](Header v, const Interval& iv) { return v < iv.lo; });
    if (it == intervals_.begin()) return false;
    return std::prev(it)->hi >= h;
  }

  HeaderSet Union(const HeaderSet& other) const {
    CheckSchema(other);
    HeaderSet out = Empty(width_);
    out.intervals_.reserve(intervals_.size() + other.intervals_.size());
    auto a = intervals_.begin();
    auto b = other.intervals_.begin();
    while (a != intervals_.end() || b != other.intervals_.end()) {
      if (b == other.intervals_.end() ||
          (a != intervals_.end() && a->lo <= b->lo)) {
        out.AppendMerging(*a++);
      } else {
        out.AppendMerging(*b++);
      }
    }
    return out;
  }

  HeaderSet Intersect(const HeaderSet& other) const {
    CheckSchema(other);
    const HeaderSet& small =
        intervals_.size() <= other.intervals_.size() ? *this : other;
    const HeaderSet& large = &small == this ? other : *this;
    HeaderSet out = Empty(width_);
    for (const Interval& x : small.intervals_) {
      auto it = large.FirstEndingAtOrAfter(x.lo);
      for (; it != large.intervals_.end() && it->lo <= x.hi; ++it) {
        out.intervals_.push_back(
            {std::max(x.lo, it->lo), std::min(x.hi, it->hi)});
      }
    }
    return out;
  }

  HeaderSet Difference(const HeaderSet& other) const {
    CheckSchema(other);
    HeaderSet out = Empty(width_);
    if (other.IsEmpty()) return *this;
    for (const Interval& x : intervals_) {
      std::uint64_t cursor = x.lo;
      auto it = other.FirstEndingAtOrAfter(x.lo);
      for (; it != other.intervals_.end() && it->lo <= x.hi; ++it) {
        if (it->lo > cursor) {
          out.intervals_.push_back(
              {static_cast<Header>(cursor), static_cast<Header>(it->lo - 1)});
        }
        cursor = std::uint64_t{it->hi} + 1;
        if (cursor > x.hi) break;
      }
      if (cursor <= x.hi) {
        out.intervals_.push_back({static_cast<Header>(cursor), x.hi});
      }
    }
    return out;
  }

  HeaderSet Complement() const { return Universe(width_).Difference(*this); }

  bool Intersects(const HeaderSet& other) const {
    CheckSchema(other);
    const HeaderSet& small =
        intervals_.size() <= other.intervals_.size() ? *this : other;
    const HeaderSet& large = &small == this ? other : *this;
    for (const Interval& x : small.intervals_) {
      auto it = large.FirstEndingAtOrAfter(x.lo);
      if (it != large.intervals_.end() && it->lo <= x.hi) return true;
    }
    return false;
  }

  bool IsSubsetOf(const HeaderSet& other) const {
    CheckSchema(other);
    for (const Interval& x : intervals_) {
      auto it = other.FirstEndingAtOrAfter(x.lo);
      if (it == other.intervals_.end() || it->lo > x.lo || it->hi < x.hi) {
        return false;
      }
    }
    return true;
  }

  // The index-th smallest member. O(number of intervals).
  Header Nth(std::uint64_t index) const {
    for (const Interval& iv : intervals_) {
      if (index < iv.size()) return static_cast<Header>(iv.lo + index);
      index -= iv.size();
    }
    throw Error(ErrorCode::kInvalidArgument, "index beyond set cardinality");
  }

  template <typename Rng>
  Header Sample(Rng& rng) const {
    if (IsEmpty()) {
      throw Error(ErrorCode::kEmptySet, "cannot sample from an empty set");
    }
    std::uniform_int_distribution<std::uint64_t> pick(0, Cardinality() - 1);
    return Nth(pick(rng));
  }

  std::string ToString() const;

  friend bool operator==(const HeaderSet& a, const HeaderSet& b) {
    return a.width_ == b.width_ && a.intervals_ == b.intervals_;
  }

  friend std::ostream& operator<<(std::ostream& os, const HeaderSet& s) {
    return os << s.ToString();
  }

 private:
  static HeaderSet FromCanonical(int width, std::vector<Interval> ivs) {
    HeaderSet s;
    s.width_ = width;
    s.intervals_ = std::move(ivs);
    return s;
  }

  void CheckSchema(const HeaderSet& other) const {
    if (width_ != other.width_) {
      throw Error(ErrorCode::kInvalidArgument,
                  "header schema mismatch: width " + std::to_string(width_) +
                      " vs " + std::to_string(other.width_));
    }
  }

  std::vector<Interval>::const_iterator FirstEndingAtOrAfter(Header v) const {
    return std::lower_bound(
        intervals_.begin(), intervals_.end(), v,
        [](const Interval& iv, Header x) { return iv.hi < x; });
  }

  // Appends an interval whose lo is >= every stored lo, merging on overlap or
  // adjacency.
  void AppendMerging(const Interval& iv) {
    if (!intervals_.empty() &&
        std::uint64_t{intervals_.back().hi} + 1 >= iv.lo) {
      intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
    } else {
      intervals_.push_back(iv);
    }
  }

  int width_ = kDefaultHeaderWidth;
  std::vector<Interval> intervals_;
};

// Mutable union builder for accumulating many sets cheaply. Used where a
// running union of higher-priority matches is subtracted rule after rule.
class IntervalAccumulator {
 public:
  explicit IntervalAccumulator(int width = kDefaultHeaderWidth)
      : width_(width) {}

  void Add(const HeaderSet& s) {
    for (const Interval& iv : s.intervals()) Add(iv);
  }

  void Add(Interval iv) {
    std::uint64_t lo = iv.lo;
    std::uint64_t hi = iv.hi;
    auto it = map_.upper_bound(iv.lo);
    if (it != map_.begin()) {
      auto prev = std::prev(it);
      if (std::uint64_t{prev->second} + 1 >= lo) it = prev;
    }
    while (it != map_.end() && it->first <= hi + 1) {
      lo = std::min<std::uint64_t>(lo, it->first);
      hi = std::max<std::uint64_t>(hi, it->second);
      it = map_.erase(it);
    }
    map_.emplace(static_cast<Header>(lo), static_cast<Header>(hi));
  }

  // s minus everything accumulated so far.
  HeaderSet Subtract(const HeaderSet& s) const {
    std::vector<Interval> out;
    for (const Interval& x : s.intervals()) {
      std::uint64_t cursor = x.lo;
      auto it = map_.upper_bound(x.lo);
      if (it != map_.begin()) --it;
      for (; it != map_.end() && it->first <= x.hi; ++it) {
        if (it->second < cursor) continue;
        if (it->first > cursor) {
          out.push_back({static_cast<Header>(cursor),
                         static_cast<Header>(it->first - 1)});
        }
        cursor = std::uint64_t{it->second} + 1;
        if (cursor > x.hi) break;
      }
      if (cursor <= x.hi) out.push_back({static_cast<Header>(cursor), x.hi});
    }
    return HeaderSet::FromIntervals(std::move(out), width_);
  }

  bool Intersects(const HeaderSet& s) const {
    for (const Interval& x : s.intervals()) {
      auto it = map_.upper_bound(x.hi);
      if (it == map_.begin()) continue;
      --it;
      if (it->second >= x.lo) return true;
    }
    return false;
  }

  HeaderSet ToHeaderSet() const {
    std::vector<Interval> out;
    out.reserve(map_.size());
    for (const auto& [lo, hi] : map_) out.push_back({lo, hi});
    return HeaderSet::FromIntervals(std::move(out), width_);
  }

 private:
  int width_;
  std::map<Header, Header> map_;
};

// A HeaderSet with prefix sums for O(log n) rank selection; used wherever a
// set is sampled repeatedly (production traffic, random fuzz draws).
class IndexedHeaderSet {
 public:
  IndexedHeaderSet() = default;
  explicit IndexedHeaderSet(HeaderSet set) : set_(std::move(set)) {
    ends_.reserve(set_.intervals().size());
    std::uint64_t total = 0;
    for (const Interval& iv : set_.intervals()) {
      total += iv.size();
      ends_.push_back(total);
    }
  }

  const HeaderSet& set() const { return set_; }
  std::uint64_t size() const { return ends_.empty() ? 0 : ends_.back(); }

  Header Nth(std::uint64_t index) const {
    if (index >= size()) {
      throw Error(ErrorCode::kInvalidArgument, "index beyond set cardinality");
    }
    auto it = std::upper_bound(ends_.begin(), ends_.end(), index);
    const std::size_t k = static_cast<std::size_t>(it - ends_.begin());
    const std::uint64_t before = k == 0 ? 0 : ends_[k - 1];
    return static_cast<Header>(set_.intervals()[k].lo + (index - before));
  }

  template <typename Rng>
  Header Sample(Rng& rng) const {
    if (size() == 0) {
      throw Error(ErrorCode::kEmptySet, "cannot sample from an empty set");
    }
    std::uniform_int_distribution<std::uint64_t> pick(0, size() - 1);
    return Nth(pick(rng));
  }

 private:
  HeaderSet set_;
  std::vector<std::uint64_t> ends_;
};

// --- literal syntax -------------------------------------------------------

inline std::string FormatHeader(Header h, int width) {
  if (width == 32) {
    return std::to_string(h >> 24) + "." + std::to_string((h >> 16) & 0xff) +
           "." + std::to_string((h >> 8) & 0xff) + "." +
           std::to_string(h & 0xff);
  }
  return std::to_string(h);
}

inline Header ParseHeader(std::string_view text, int width) {
  auto fail = [&](const std::string& why) -> Error {
    return Error(ErrorCode::kMalformedLiteral,
                 "bad header '" + std::string(text) + "': " + why);
  };
  if (text.empty()) throw fail("empty");
  std::uint64_t value = 0;
  if (text.find('.') != std::string_view::npos) {
    int parts = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t dot = text.find('.', pos);
      if (dot == std::string_view::npos) dot = text.size();
      std::string_view part = text.substr(pos, dot - pos);
      unsigned octet = 0;
      auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(),
                                     octet);
      if (part.empty() || ec != std::errc() ||
          p != part.data() + part.size() || octet > 255) {
        throw fail("bad octet");
      }
      value = (value << 8) | octet;
      ++parts;
      pos = dot + 1;
      if (dot == text.size()) break;
    }
    if (parts != 4) throw fail("expected four octets");
  } else {
    int base = 10;
    std::string_view digits = text;
    if (digits.size() > 2 && digits[0] == '0' &&
        (digits[1] == 'x' || digits[1] == 'X')) {
      base = 16;
      digits.remove_prefix(2);
    }
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(),
                                   value, base);
    if (ec != std::errc() || p != digits.data() + digits.size()) {
      throw fail("not a number");
    }
  }
  if (value > MaxHeader(width)) throw fail("value exceeds header width");
  return static_cast<Header>(value);
}

inline HeaderSet HeaderSet::Parse(std::string_view text, int width) {
  CheckWidth(width);
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
      s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
      s.remove_suffix(1);
    }
    return s;
  };
  text = trim(text);
  if (text.empty()) {
    throw Error(ErrorCode::kMalformedLiteral, "empty header-set literal");
  }
  std::vector<Interval> pieces;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view term =
        trim(text.substr(pos, comma == std::string_view::npos
                                  ? std::string_view::npos
                                  : comma - pos));
    if (term == "*") {
      pieces.push_back({0, MaxHeader(width)});
    } else if (term == "empty") {
      // contributes nothing
    } else if (std::size_t slash = term.find('/');
               slash != std::string_view::npos) {
      const Header addr = ParseHeader(term.substr(0, slash), width);
      std::string_view len_text = term.substr(slash + 1);
      int len = 0;
      auto [p, ec] = std::from_chars(
          len_text.data(), len_text.data() + len_text.size(), len);
      if (len_text.empty() || ec != std::errc() ||
          p != len_text.data() + len_text.size() || len < 0 || len > width) {
        throw Error(ErrorCode::kMalformedLiteral,
                    "bad prefix length in '" + std::string(term) + "'");
      }
      pieces.push_back(FromPrefix(addr, len, width).intervals().front());
    } else if (std::size_t dash = term.find('-');
               dash != std::string_view::npos) {
      const Header lo = ParseHeader(term.substr(0, dash), width);
      const Header hi = ParseHeader(term.substr(dash + 1), width);
      if (lo > hi) {
        throw Error(ErrorCode::kMalformedLiteral,
                    "descending range '" + std::string(term) + "'");
      }
      pieces.push_back({lo, hi});
    } else {
      const Header h = ParseHeader(term, width);
      pieces.push_back({h, h});
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return FromIntervals(std::move(pieces), width);
}

inline std::string HeaderSet::ToString() const {
  if (IsEmpty()) return "empty";
  if (IsUniverse()) return "*";
  std::string out;
  for (const Interval& iv : intervals_) {
    if (!out.empty()) out += ",";
    const std::uint64_t size = iv.size();
    const bool aligned_power = (size & (size - 1)) == 0 && iv.lo % size == 0;
    if (size == 1) {
      out += FormatHeader(iv.lo, width_);
    } else if (aligned_power) {
      int host_bits = 0;
      while ((std::uint64_t{1} << host_bits) < size) ++host_bits;
      out += FormatHeader(iv.lo, width_) + "/" +
             std::to_string(width_ - host_bits);
    } else {
      out += FormatHeader(iv.lo, width_) + "-" + FormatHeader(iv.hi, width_);
    }
  }
  return out;
}

}  // namespace pazz

#endif  // PAZZ_HEADERSPACE_HEADER_SET_HPP_
