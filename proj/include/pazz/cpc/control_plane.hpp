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

#ifndef PAZZ_CPC_CONTROL_PLANE_HPP_
#define PAZZ_CPC_CONTROL_PLANE_HPP_

#include <chrono>
#include <functional>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "pazz/cpc/reachability_graph.hpp"

namespace pazz {

// Owns the current reachability graph. Readers take an immutable snapshot;
// an update builds the next graph off to the side and swaps it in, then
// pushes fresh corpora to subscribed fuzzers.
class ControlPlane {
 public:
  using CorpusListener = std::function<void(const PortPair&, const Corpus&)>;

  ControlPlane(const Topology& topo, const Config& config,
               TaggingOptions tagging = {})
      : graph_(std::make_shared<const ReachabilityGraph>(
            ReachabilityGraph::Build(topo, config, tagging))) {}

  std::shared_ptr<const ReachabilityGraph> Snapshot() const {
    std::lock_guard<std::mutex> lock(mu_);
    return graph_;
  }

  double build_seconds() const { return Snapshot()->build_seconds(); }
  double last_update_seconds() const {
    std::lock_guard<std::mutex> lock(mu_);
    return last_update_seconds_;
  }

  HeaderSet Reachable(Endpoint src, Endpoint dst) const {
    return Snapshot()->Reachable(src, dst);
  }

  Corpus CorpusFor(Endpoint src, Endpoint dst) const {
    return Snapshot()->CorpusFor(src, dst);
  }

  std::vector<ExpectedReport> ExpectedReports(Header h, Endpoint src,
                                              Endpoint dst) const {
    return Snapshot()->ExpectedReports(h, src, dst);
  }

  void Subscribe(PortPair pair, CorpusListener listener) {
    std::lock_guard<std::mutex> lock(update_mu_);
    listeners_.emplace_back(pair, std::move(listener));
  }

  // Updates are serialized; queries keep running against the old snapshot
  // until the swap.
  void ApplyUpdate(const RuleUpdate& u) {
    std::lock_guard<std::mutex> serial(update_mu_);
    const auto start = std::chrono::steady_clock::now();
    auto next = std::make_shared<const ReachabilityGraph>(Snapshot()->WithUpdate(u));
    const double took = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    {
      std::lock_guard<std::mutex> lock(mu_);
      graph_ = next;
      last_update_seconds_ = took;
    }
    for (const auto& [pair, listener] : listeners_) {
      listener(pair, next->CorpusFor(pair.src, pair.dst));
    }
  }

 private:
  mutable std::mutex mu_;
  std::mutex update_mu_;
  std::shared_ptr<const ReachabilityGraph> graph_;
  double last_update_seconds_ = 0.0;
  std::vector<std::pair<PortPair, CorpusListener>> listeners_;
};

}  // namespace pazz

#endif  // PAZZ_CPC_CONTROL_PLANE_HPP_
