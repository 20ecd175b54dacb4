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

#ifndef PAZZ_HARNESS_REPORT_HPP_
#define PAZZ_HARNESS_REPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <fmt/format.h>

#include "pazz/common/error.hpp"
#include "pazz/harness/experiment.hpp"

namespace pazz {

// Linear-interpolation percentile, q in [0,1].
inline double Percentile(std::vector<double> v, double q) {
  if (v.empty()) throw Error(ErrorCode::kInvalidArgument, "percentile of nothing");
  if (q < 0.0 || q > 1.0) throw Error(ErrorCode::kInvalidArgument, "q not in [0,1]");
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (v[hi] - v[lo]) * (pos - static_cast<double>(lo));
}

inline double Median(std::vector<double> v) { return Percentile(std::move(v), 0.5); }

// Per-fault CSV. Columns are stable; append new ones at the end.
inline constexpr const char* kFaultCsvHeader =
    "topology,mode,seed,fault_id,kind,switch,affected_size,changes_path,"
    "detected,detect_time,detect_probes,detect_packets,detected_by,"
    "verdict_class,localization,auto_localized,localized_correct,collision,"
    "fault_reports";

inline std::string FaultCsv(const std::vector<MetricsRecord>& records) {
  std::string out = std::string(kFaultCsvHeader) + "\n";
  for (const MetricsRecord& m : records) {
    for (const FaultOutcome& f : m.faults) {
      out += fmt::format("{},{},{},{},{},{},{},{},{},{:.6f},{},{},{},{},\"{}\",{},{},{},{}\n",
                         m.topology, m.mode, m.seed, f.id, FaultKindName(f.kind),
                         f.sw, f.affected_size, int{f.changes_path},
                         int{f.detected}, f.detect_time, f.detect_probes,
                         f.detect_packets, f.detected_by, f.verdict_class,
                         f.localization, int{f.auto_localized},
                         int{f.localized_correct}, int{f.collision},
                         f.fault_reports);
    }
  }
  return out;
}

struct SummaryRow {
  std::string topology;
  std::string mode;
  std::string kind;
  std::size_t runs = 0;
  std::size_t faults = 0;
  std::size_t detected = 0;
  std::optional<double> median_time;
  std::optional<double> p90_time;
  std::optional<double> median_probes;  // censored at emitted for undetected
  std::optional<double> p90_probes;
  std::size_t path_changing = 0;
  std::size_t localized_correct = 0;
};

// Aggregates per (topology, mode, fault kind) across seeds. Latency columns
// use detected faults only; probe columns include censored values.
inline std::vector<SummaryRow> Summarize(const std::vector<MetricsRecord>& records) {
  using Key = std::tuple<std::string, std::string, std::string>;
  struct Acc {
    std::set<std::uint64_t> seeds;
    std::vector<double> times, probes;
    SummaryRow row;
  };
  std::map<Key, Acc> groups;
  for (const MetricsRecord& m : records) {
    for (const FaultOutcome& f : m.faults) {
      const Key key{m.topology, m.mode, std::string(FaultKindName(f.kind))};
      Acc& a = groups[key];
      a.seeds.insert(m.seed);
      ++a.row.faults;
      a.probes.push_back(static_cast<double>(f.detect_probes));
      if (f.detected) {
        ++a.row.detected;
        a.times.push_back(f.detect_time);
      }
      if (IsTypeP(f.kind) && f.changes_path) {
        ++a.row.path_changing;
        if (f.localized_correct) ++a.row.localized_correct;
      }
    }
  }
  std::vector<SummaryRow> out;
  for (auto& [key, a] : groups) {
    SummaryRow r = a.row;
    std::tie(r.topology, r.mode, r.kind) = key;
    r.runs = a.seeds.size();
    if (!a.times.empty()) {
      r.median_time = Median(a.times);
      r.p90_time = Percentile(a.times, 0.9);
    }
    if (!a.probes.empty()) {
      r.median_probes = Median(a.probes);
      r.p90_probes = Percentile(a.probes, 0.9);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string SummaryCsv(const std::vector<SummaryRow>& rows) {
  auto opt = [](const std::optional<double>& v) {
    return v ? fmt::format("{:.6f}", *v) : std::string();
  };
  std::string out =
      "topology,mode,kind,runs,faults,detected,median_time,p90_time,"
      "median_probes,p90_probes,path_changing,localized_correct\n";
  for (const SummaryRow& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", r.topology,
                       r.mode, r.kind, r.runs, r.faults, r.detected,
                       opt(r.median_time), opt(r.p90_time), opt(r.median_probes),
                       opt(r.p90_probes), r.path_changing, r.localized_correct);
  }
  return out;
}

struct CdfPoint {
  double time = 0.0;
  double fraction = 0.0;
};

// Empirical CDF of detection time over all faults (optionally one kind).
// Undetected faults never contribute a step, so the curve ends at the
// detected fraction.
inline std::vector<CdfPoint> DetectionCdf(const std::vector<MetricsRecord>& records,
                                          std::optional<FaultKind> kind = {}) {
  std::vector<double> times;
  std::size_t total = 0;
  for (const MetricsRecord& m : records) {
    for (const FaultOutcome& f : m.faults) {
      if (kind && f.kind != *kind) continue;
      ++total;
      if (f.detected) times.push_back(f.detect_time);
    }
  }
  std::sort(times.begin(), times.end());
  std::vector<CdfPoint> out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double frac = static_cast<double>(i + 1) / static_cast<double>(total);
    if (!out.empty() && out.back().time == times[i]) {
      out.back().fraction = frac;
    } else {
      out.push_back({times[i], frac});
    }
  }
  return out;
}

inline std::string CdfCsv(const std::vector<MetricsRecord>& records) {
  std::string out = "kind,time,fraction\n";
  auto emit = [&](std::string_view name, std::optional<FaultKind> k) {
    for (const CdfPoint& p : DetectionCdf(records, k)) {
      out += fmt::format("{},{:.6f},{:.6f}\n", name, p.time, p.fraction);
    }
  };
  emit("all", std::nullopt);
  for (FaultKind k : {FaultKind::kTypePMatch, FaultKind::kTypePAction,
                      FaultKind::kTypeAHidden}) {
    emit(FaultKindName(k), k);
  }
  return out;
}

// Median Type-a probe count of `baseline` over that of `pazz`. Undetected
// baseline faults are censored at the probes emitted, so this is a lower
// bound whenever censoring occurred.
inline std::optional<double> TypeAProbeSpeedup(const std::vector<MetricsRecord>& pazz,
                                               const std::vector<MetricsRecord>& baseline) {
  auto probes = [](const std::vector<MetricsRecord>& rs) {
    std::vector<double> v;
    for (const auto& m : rs) {
      for (const auto& f : m.faults) {
        if (f.kind == FaultKind::kTypeAHidden) {
          v.push_back(static_cast<double>(f.detect_probes));
        }
      }
    }
    return v;
  };
  const auto a = probes(pazz);
  const auto b = probes(baseline);
  if (a.empty() || b.empty()) return std::nullopt;
  const double ma = Median(a);
  if (ma <= 0.0) return std::nullopt;
  return Median(b) / ma;
}

}  // namespace pazz

#endif  // PAZZ_HARNESS_REPORT_HPP_
