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

#ifndef PAZZ_FUZZER_FUZZER_HPP_
#define PAZZ_FUZZER_FUZZER_HPP_

#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <string_view>

#include "pazz/common/error.hpp"
#include "pazz/dataplane/simulator.hpp"
#include "pazz/headerspace/header_set.hpp"

namespace pazz {

// The three disjoint areas the header universe splits into for one pair.
struct FuzzPlan {
  HeaderSet entry;     // S_i, covered production space
  HeaderSet sweep;     // S_e - S_i, probed first
  HeaderSet residual;  // everything else

  friend bool operator==(const FuzzPlan&, const FuzzPlan&) = default;
};

inline FuzzPlan PlanFuzz(const HeaderSet& entry, const HeaderSet& exit) {
  if (entry.width() != exit.width()) {
    throw Error(ErrorCode::kInvalidArgument, "S_i and S_e differ in width");
  }
  FuzzPlan p;
  p.entry = entry;
  p.sweep = exit.Difference(entry);
  p.residual = HeaderSet::Universe(entry.width()).Difference(p.sweep).Difference(entry);
  return p;
}

// Keyed bijection on [0, n): a balanced four-round Feistel network over the
// next even bit width, cycle-walked back into range.
class FeistelPermutation {
 public:
  FeistelPermutation(std::uint64_t n = 1, std::uint64_t seed = 0) : n_(n) {
    if (n == 0) throw Error(ErrorCode::kInvalidArgument, "empty permutation");
    int bits = 2;
    while (bits < 64 && (std::uint64_t{1} << bits) < n) ++bits;
    half_ = (bits + 1) / 2;
    mask_ = (std::uint64_t{1} << half_) - 1;
    std::uint64_t k = seed;
    for (auto& key : keys_) key = k = SplitMix64(k);
  }

  std::uint64_t size() const { return n_; }

  std::uint64_t operator()(std::uint64_t i) const {
    std::uint64_t x = i;
    do {
      x = Encrypt(x);
    } while (x >= n_);
    return x;
  }

 private:
  std::uint64_t Encrypt(std::uint64_t x) const {
    std::uint64_t l = x >> half_;
    std::uint64_t r = x & mask_;
    for (std::uint64_t key : keys_) {
      const std::uint64_t f = SplitMix64(key ^ r) & mask_;
      const std::uint64_t nl = r;
      r = l ^ f;
      l = nl;
    }
    return (l << half_) | r;
  }

  std::uint64_t n_;
  int half_ = 1;
  std::uint64_t mask_ = 1;
  std::uint64_t keys_[4] = {};
};

enum class FuzzMode { kPazz, kBaseline };

inline std::string_view FuzzModeName(FuzzMode m) {
  return m == FuzzMode::kPazz ? "pazz" : "baseline";
}

struct FuzzerOptions {
  FuzzMode mode = FuzzMode::kPazz;
  double rate_pps = 1000.0;
  std::uint64_t seed = 1;
};

// Probe source for one source/destination pair. In PAZZ mode the sweep area
// is enumerated in ascending order, then the residual area is drawn without
// replacement; when both are spent the plan starts over with a fresh
// permutation. Baseline mode draws uniformly with replacement from U - S_i.
class Fuzzer {
 public:
  Fuzzer(const FuzzPlan& plan, FuzzerOptions opts) : opts_(opts) {
    if (!(opts.rate_pps > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "probe rate must be > 0");
    }
    Install(plan);
  }

  Fuzzer(const HeaderSet& entry, const HeaderSet& exit, FuzzerOptions opts)
      : Fuzzer(PlanFuzz(entry, exit), opts) {}

  FuzzMode mode() const { return opts_.mode; }
  double rate_pps() const { return opts_.rate_pps; }
  double interval() const { return 1.0 / opts_.rate_pps; }

  FuzzPlan plan() const {
    std::lock_guard<std::mutex> lock(mu_);
    return plan_;
  }

  std::uint64_t emitted() const {
    std::lock_guard<std::mutex> lock(mu_);
    return emitted_;
  }
  std::uint64_t cycles() const {
    std::lock_guard<std::mutex> lock(mu_);
    return cycles_;
  }
  double last_replan_seconds() const {
    std::lock_guard<std::mutex> lock(mu_);
    return last_replan_seconds_;
  }

  // Next probe of the current cycle, or nullopt once the cycle is spent
  // (always nullopt when S_i covers everything).
  std::optional<Header> NextProbe() {
    std::lock_guard<std::mutex> lock(mu_);
    return NextLocked();
  }

  // Continuous testing: re-cycles after exhaustion.
  std::optional<Header> Next() {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto h = NextLocked()) return h;
    if (sweep_.size() == 0 && residual_.size() == 0) return std::nullopt;
    ++cycles_;
    Restart();
    return NextLocked();
  }

  bool Exhausted() const {
    std::lock_guard<std::mutex> lock(mu_);
    return opts_.mode == FuzzMode::kPazz && sweep_pos_ >= sweep_.size() &&
           drawn_ >= residual_.size();
  }

  // Headers drawn from the residual area in the current cycle. Materializing
  // is linear in the draw count, meant for small universes.
  HeaderSet RandomFuzzArea() const {
    std::lock_guard<std::mutex> lock(mu_);
    IntervalAccumulator acc(plan_.entry.width());
    for (std::uint64_t i = 0; i < drawn_; ++i) {
      acc.Add(Interval{residual_.Nth(perm_(i)), residual_.Nth(perm_(i))});
    }
    return acc.ToHeaderSet();
  }

  // A new corpus from the control plane. An unchanged corpus keeps the
  // current position; anything else restarts on the new plan.
  void RebuildOnCorpus(const HeaderSet& entry, const HeaderSet& exit) {
    const auto start = std::chrono::steady_clock::now();
    FuzzPlan next = PlanFuzz(entry, exit);
    std::lock_guard<std::mutex> lock(mu_);
    if (!(next == plan_)) Install(next);
    last_replan_seconds_ = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  }

 private:
  void Install(const FuzzPlan& plan) {
    plan_ = plan;
    sweep_ = IndexedHeaderSet(plan.sweep);
    residual_ = IndexedHeaderSet(plan.residual);
    baseline_ = IndexedHeaderSet(plan.sweep.Union(plan.residual));
    rng_.seed(opts_.seed);
    cycles_ = 0;
    Restart();
  }

  void Restart() {
    sweep_pos_ = 0;
    drawn_ = 0;
    if (residual_.size() != 0) {
      perm_ = FeistelPermutation(residual_.size(),
                                 SplitMix64(opts_.seed ^ (cycles_ + 1)));
    }
  }

  std::optional<Header> NextLocked() {
    if (opts_.mode == FuzzMode::kBaseline) {
      if (baseline_.size() == 0) return std::nullopt;
      ++emitted_;
      return baseline_.Sample(rng_);
    }
    if (sweep_pos_ < sweep_.size()) {
      ++emitted_;
      return sweep_.Nth(sweep_pos_++);
    }
    if (drawn_ < residual_.size()) {
      ++emitted_;
      return residual_.Nth(perm_(drawn_++));
    }
    return std::nullopt;
  }

  FuzzerOptions opts_;
  mutable std::mutex mu_;
  FuzzPlan plan_;
  IndexedHeaderSet sweep_;
  IndexedHeaderSet residual_;
  IndexedHeaderSet baseline_;
  FeistelPermutation perm_;
  std::mt19937_64 rng_;
  std::uint64_t sweep_pos_ = 0;
  std::uint64_t drawn_ = 0;
  std::uint64_t emitted_ = 0;
  std::uint64_t cycles_ = 0;
  double last_replan_seconds_ = 0.0;
};

}  // namespace pazz

#endif  // PAZZ_FUZZER_FUZZER_HPP_
