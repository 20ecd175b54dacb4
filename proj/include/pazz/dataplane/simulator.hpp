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

#ifndef PAZZ_DATAPLANE_SIMULATOR_HPP_
#define PAZZ_DATAPLANE_SIMULATOR_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "pazz/common/error.hpp"
#include "pazz/dataplane/dataplane.hpp"

namespace pazz {

enum class TrafficClass : std::uint8_t { kProduction = 0, kFuzz = 1 };

inline std::string_view TrafficClassName(TrafficClass c) {
  return c == TrafficClass::kProduction ? "prod" : "fuzz";
}

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Egress packet sampling. The decision is a pure function of the packet's
// identity, so runs at different rates sample nested subsets of the same
// traffic and production sampling is independent of the fuzz stream.
class Sampler {
 public:
  explicit Sampler(double rate = 1.0, std::uint64_t seed = 0)
      : rate_(rate), seed_(seed) {
    if (!(rate > 0.0 && rate <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "sampling rate must be in (0,1]");
    }
  }

  double rate() const { return rate_; }

  bool Sampled(TrafficClass cls, std::uint64_t seq, std::uint32_t copy) const {
    std::uint64_t h = SplitMix64(seed_);
    h = SplitMix64(h ^ static_cast<std::uint64_t>(cls));
    h = SplitMix64(h ^ seq);
    h = SplitMix64(h ^ copy);
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    return u < rate_;
  }

 private:
  double rate_;
  std::uint64_t seed_;
};

// A periodic packet source. `next` returns the header for the next slot or
// nullopt to leave the slot empty.
struct TrafficStream {
  TrafficClass cls = TrafficClass::kProduction;
  Endpoint at;
  double start = 0.0;
  double interval = 1e-4;
  std::size_t bytes = 64;
  std::function<std::optional<Header>()> next;
};

struct SampledReport {
  ActualReport report;
  TrafficClass cls = TrafficClass::kProduction;
  std::uint64_t seq = 0;
  std::uint32_t copy = 0;
  double injected_at = 0.0;
  double time = 0.0;
};

struct SimCounters {
  std::array<std::uint64_t, 2> injected{};
  std::array<std::uint64_t, 2> bytes{};
  std::uint64_t forked = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t looped = 0;
  std::uint64_t sampled = 0;
  std::uint64_t hops = 0;

  std::uint64_t InjectedTotal() const { return injected[0] + injected[1]; }
};

struct SimulatorOptions {
  double link_delay = 10e-6;  // seconds per link
};

// Discrete-event simulation of the data plane. Events are ordered by
// (time, insertion order), so with a constant link delay every link is FIFO
// and a run is fully determined by its inputs.
class Simulator {
 public:
  Simulator(const DataPlane& dp, Sampler sampler, SimulatorOptions opts = {})
      : dp_(dp), sampler_(sampler), opts_(opts) {}

  std::size_t AddStream(TrafficStream s) {
    if (!(s.interval > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "stream interval must be > 0");
    }
    streams_.push_back(std::move(s));
    emitted_.push_back(0);
    Push(Event{streams_.back().start, 0, streams_.size() - 1, {}});
    return streams_.size() - 1;
  }

  double now() const { return now_; }
  const SimCounters& counters() const { return counters_; }
  const Sampler& sampler() const { return sampler_; }
  std::uint64_t EmittedBy(std::size_t stream) const { return emitted_[stream]; }
  bool Idle() const { return heap_.empty(); }

  // Processes events with time < `until`. `on_report` sees every sampled
  // report and may return false to stop the run early.
  template <typename F>
  void RunUntil(double until, F&& on_report) {
    while (!heap_.empty() && heap_.front().time < until) {
      if (!ProcessOne(on_report, true)) return;
    }
    now_ = std::max(now_, until);
  }

  // Stops all streams and delivers the packets still in flight.
  template <typename F>
  void Drain(F&& on_report) {
    while (!heap_.empty()) ProcessOne(on_report, false);
  }

  void Drain() {
    Drain([](const SampledReport&) { return true; });
  }

 private:
  struct InFlight {
    PacketInFlight pkt;
    TrafficClass cls = TrafficClass::kProduction;
    std::uint64_t seq = 0;
    std::uint32_t copy = 0;
    double injected_at = 0.0;
  };
  struct Event {
    double time = 0.0;
    std::uint64_t order = 0;
    std::size_t stream = kNoStream;  // kNoStream: packet arrival
    InFlight packet;
  };
  static constexpr std::size_t kNoStream = static_cast<std::size_t>(-1);

  static bool Later(const Event& a, const Event& b) {
    if (a.time != b.time) return a.time > b.time;
    return a.order > b.order;
  }

  void Push(Event e) {
    e.order = order_++;
    heap_.push_back(std::move(e));
    std::push_heap(heap_.begin(), heap_.end(), Later);
  }

  template <typename F>
  struct Sink {
    Simulator& sim;
    F& on_report;
    const InFlight& parent;
    std::size_t outputs = 0;
    bool keep_going = true;

    std::uint32_t NextCopy() {
      return outputs++ == 0 ? parent.copy : sim.next_copy_++;
    }
    void Forward(PacketInFlight&& p) {
      const std::uint32_t copy = NextCopy();
      ++sim.counters_.hops;
      sim.Push(Event{sim.now_ + sim.opts_.link_delay, 0, kNoStream,
                     InFlight{std::move(p), parent.cls, parent.seq, copy,
                              parent.injected_at}});
    }
    void Deliver(ActualReport&& r, const PacketInFlight&) {
      const std::uint32_t copy = NextCopy();
      ++sim.counters_.delivered;
      if (!sim.sampler_.Sampled(parent.cls, parent.seq, copy)) return;
      ++sim.counters_.sampled;
      SampledReport s{std::move(r), parent.cls, parent.seq, copy,
                      parent.injected_at, sim.now_};
      if (!on_report(static_cast<const SampledReport&>(s))) keep_going = false;
    }
    void Drop(const PacketInFlight&, DropReason) {
      NextCopy();
      ++sim.counters_.dropped;
    }
    void Loop(const PacketInFlight&) {
      NextCopy();
      ++sim.counters_.looped;
    }
  };

  template <typename F>
  bool ProcessOne(F& on_report, bool inject) {
    std::pop_heap(heap_.begin(), heap_.end(), Later);
    Event e = std::move(heap_.back());
    heap_.pop_back();
    now_ = std::max(now_, e.time);
    if (e.stream != kNoStream) {
      if (!inject) return true;
      TrafficStream& s = streams_[e.stream];
      if (std::optional<Header> h = s.next()) {
        const auto cls = static_cast<std::size_t>(s.cls);
        InFlight p{dp_.Inject(s.at, *h), s.cls, counters_.injected[cls], 0,
                   e.time};
        ++counters_.injected[cls];
        counters_.bytes[cls] += s.bytes;
        ++emitted_[e.stream];
        Push(Event{e.time, 0, kNoStream, std::move(p)});
      }
      Push(Event{e.time + s.interval, 0, e.stream, {}});
      return true;
    }
    Sink<F> sink{*this, on_report, e.packet};
    dp_.Step(std::move(e.packet.pkt), sink);
    if (sink.outputs > 1) counters_.forked += sink.outputs - 1;
    return sink.keep_going;
  }

  const DataPlane& dp_;
  Sampler sampler_;
  SimulatorOptions opts_;
  std::vector<TrafficStream> streams_;
  std::vector<std::uint64_t> emitted_;
  std::vector<Event> heap_;
  std::uint64_t order_ = 0;
  std::uint32_t next_copy_ = 1;
  double now_ = 0.0;
  SimCounters counters_;
};

}  // namespace pazz

#endif  // PAZZ_DATAPLANE_SIMULATOR_HPP_
