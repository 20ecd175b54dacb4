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

// Command-line front end: network generation, experiments, reports and the
// standalone fuzz / replay / check tools.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "pazz/pazz.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFindings = 3;

struct NetworkArgs {
  std::string topo = "grid16";
  std::uint64_t seed = 1;
  double rules_scale = 0.1;
  int width = pazz::kDefaultHeaderWidth;
  std::string net_dir;  // load instead of generating when set
};

void AddNetworkOptions(CLI::App* cmd, NetworkArgs& a) {
  cmd->add_option("--topo", a.topo, "grid4|grid9|grid16|fattree4");
  cmd->add_option("--seed", a.seed, "generator seed");
  cmd->add_option("--rules-scale", a.rules_scale, "fraction of the full rule count");
  cmd->add_option("--width", a.width, "header width in bits");
  cmd->add_option("--net", a.net_dir, "directory written by 'gen' (overrides --topo)");
}

struct LoadedNetwork {
  pazz::Topology topology;
  pazz::Config config;
  std::optional<pazz::PortPair> pair;
};

LoadedNetwork LoadNetwork(const NetworkArgs& a) {
  LoadedNetwork n;
  if (!a.net_dir.empty()) {
    const fs::path dir(a.net_dir);
    n.topology = pazz::LoadTopology((dir / "topology.txt").string());
    n.config = pazz::LoadRules((dir / "rules.txt").string(), &n.topology);
    const auto pairs = n.topology.Pairs();
    if (!pairs.empty()) n.pair = pairs.front();
    return n;
  }
  pazz::GeneratorOptions g;
  g.rules_scale = a.rules_scale;
  g.width = a.width;
  g.seed = a.seed;
  pazz::GeneratedNetwork net = pazz::Generate(pazz::ParseTopologyKind(a.topo), g);
  n.topology = std::move(net.topology);
  n.config = std::move(net.config);
  n.pair = net.layout.pair;
  return n;
}

pazz::PortPair ParsePair(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) {
    throw pazz::Error(pazz::ErrorCode::kInvalidArgument,
                      "pair must look like SRC_SW/PORT:DST_SW/PORT");
  }
  return {pazz::io_internal::ParseEndpoint(s.substr(0, colon), 0),
          pazz::io_internal::ParseEndpoint(s.substr(colon + 1), 0)};
}

// Accepts "1/100" or a plain fraction.
double ParseRate(const std::string& s) {
  double value = 0.0;
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      value = std::stod(s);
    } else {
      value = std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
    }
  } catch (const std::exception&) {
    throw pazz::Error(pazz::ErrorCode::kInvalidArgument, "bad sampling rate '" + s + "'");
  }
  return value;
}

void ParseMix(const std::string& s, pazz::ExperimentConfig& cfg) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument("no colon");
    cfg.mix_p = std::stoi(s.substr(0, colon));
    cfg.mix_a = std::stoi(s.substr(colon + 1));
  } catch (const std::exception&) {
    throw pazz::Error(pazz::ErrorCode::kInvalidArgument, "fault mix must be P:A, got '" + s + "'");
  }
}

void WriteText(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) {
    throw pazz::Error(pazz::ErrorCode::kInvalidArgument, "cannot write " + p.string());
  }
  out << text;
}

// --- gen -------------------------------------------------------------------

int RunGen(const NetworkArgs& a, const std::string& out, bool json) {
  const LoadedNetwork n = LoadNetwork(a);
  fs::create_directories(out);
  const fs::path dir(out);
  pazz::SaveTopology((dir / "topology.txt").string(), n.topology);
  pazz::SaveRules((dir / "rules.txt").string(), n.config);
  if (json) {
    pazz::SaveTopology((dir / "topology.json").string(), n.topology);
    pazz::SaveRules((dir / "rules.json").string(), n.config);
  }
  fmt::print("{}: {} switches, {} links, {} rules -> {}\n", a.topo,
             n.topology.switches().size(), n.topology.links().size(),
             n.config.rules().size(), out);
  return kExitOk;
}

// --- run / baseline --------------------------------------------------------

struct RunArgs {
  NetworkArgs net;
  std::size_t faults = 30;
  std::string mix = "35:65";
  std::string sample = "1/100";
  double duration = 120.0;
  double production_pps = 1e4;
  double fuzz_pps = 1000.0;
  bool paper_scale = false;
  bool keep_running = false;
  bool log_reports = false;
  std::string out = "pazz-out";
};

void AddRunOptions(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("--topo", a.net.topo, "grid4|grid9|grid16|fattree4");
  cmd->add_option("--seed", a.net.seed, "experiment seed");
  cmd->add_option("--rules-scale", a.net.rules_scale, "fraction of the full rule count");
  cmd->add_option("--faults", a.faults, "number of injected faults");
  cmd->add_option("--fault-mix", a.mix, "Type-p:Type-a ratio");
  cmd->add_option("--sample", a.sample, "sampling rate, e.g. 1/100");
  cmd->add_option("--duration", a.duration, "simulated seconds");
  cmd->add_option("--production-pps", a.production_pps, "production packet rate");
  cmd->add_option("--fuzz-pps", a.fuzz_pps, "probe rate");
  cmd->add_flag("--paper-scale", a.paper_scale, "full rule count and 1e6 production pps");
  cmd->add_flag("--keep-running", a.keep_running, "do not stop once every fault is detected");
  cmd->add_flag("--log-reports", a.log_reports, "also write every sampled report");
  cmd->add_option("--out", a.out, "output directory");
}

int RunExperiment(const RunArgs& a, bool baseline, const std::vector<std::string>& argv) {
  pazz::ExperimentConfig cfg;
  cfg.topology = pazz::ParseTopologyKind(a.net.topo);
  cfg.rules_scale = a.net.rules_scale;
  cfg.seed = a.net.seed;
  cfg.faults = a.faults;
  ParseMix(a.mix, cfg);
  cfg.sample_rate = ParseRate(a.sample);
  cfg.duration = a.duration;
  cfg.production_pps = a.production_pps;
  cfg.fuzz_pps = a.fuzz_pps;
  cfg.baseline = baseline;
  cfg.stop_when_all_detected = !a.keep_running;
  if (a.paper_scale) {
    cfg.rules_scale = 1.0;
    cfg.production_pps = 1e6;
  }
  cfg.Validate();

  const fs::path dir(a.out);
  fs::create_directories(dir);
  std::ofstream verdicts(dir / "verdicts.log");
  std::ofstream reports;
  pazz::RunOutputs outs;
  outs.verdict_log = &verdicts;
  if (a.log_reports) {
    reports.open(dir / "reports.log");
    outs.report_log = &reports;
  }

  nlohmann::json manifest = {{"tool", "pazz"},
                             {"command", argv},
                             {"config", cfg.ToJson()},
                             {"seeds",
                              {{"experiment", cfg.seed},
                               {"generator", cfg.seed}}},
                             {"files",
                              {"metrics.json", "timings.json", "verdicts.log",
                               "findings.json"}}};
  if (a.log_reports) manifest["files"].push_back("reports.log");
  WriteText(dir / "manifest.json", manifest.dump(2) + "\n");

  const pazz::RunResult r = pazz::Run(cfg, outs);
  WriteText(dir / "metrics.json", r.metrics.ToJson().dump(2) + "\n");
  WriteText(dir / "timings.json", r.timings.ToJson().dump(2) + "\n");
  nlohmann::json findings = nlohmann::json::array();
  for (const pazz::Finding& f : r.findings) {
    findings.push_back({{"id", f.id},
                        {"first_seen", f.first_seen},
                        {"last_seen", f.last_seen},
                        {"hits", f.hits},
                        {"verdict", pazz::VerdictToJson(f.first, r.width)}});
  }
  WriteText(dir / "findings.json", findings.dump(2) + "\n");

  std::size_t detected = 0;
  for (const auto& f : r.metrics.faults) detected += f.detected ? 1 : 0;
  fmt::print("{} {} seed={}: {}/{} faults detected, {} sampled reports, {} findings, "
             "{} collisions (bloom) / {} (hash) -> {}\n",
             r.metrics.mode, r.metrics.topology, cfg.seed, detected,
             r.metrics.faults.size(), r.metrics.sampled_reports, r.metrics.findings,
             r.metrics.bloom_collisions, r.metrics.hash_collisions, a.out);
  return r.findings.empty() ? kExitOk : kExitFindings;
}

// --- report ----------------------------------------------------------------

int RunReport(const std::vector<std::string>& inputs, const std::string& out) {
  std::vector<pazz::MetricsRecord> records;
  for (const std::string& in : inputs) {
    fs::path p(in);
    if (fs::is_directory(p)) p /= "metrics.json";
    std::ifstream f(p);
    if (!f) throw pazz::Error(pazz::ErrorCode::kNotFound, "cannot read " + p.string());
    nlohmann::json j;
    try {
      f >> j;
    } catch (const nlohmann::json::exception& e) {
      throw pazz::Error(pazz::ErrorCode::kParseError, p.string() + ": " + e.what());
    }
    records.push_back(pazz::MetricsRecord::FromJson(j));
  }
  const auto rows = pazz::Summarize(records);
  const std::string summary = pazz::SummaryCsv(rows);
  if (!out.empty()) {
    fs::create_directories(out);
    WriteText(fs::path(out) / "faults.csv", pazz::FaultCsv(records));
    WriteText(fs::path(out) / "summary.csv", summary);
    WriteText(fs::path(out) / "cdf.csv", pazz::CdfCsv(records));
  }
  std::cout << summary;

  std::vector<pazz::MetricsRecord> pazz_runs, baseline_runs;
  for (const auto& m : records) {
    (m.mode == "baseline" ? baseline_runs : pazz_runs).push_back(m);
  }
  if (const auto s = pazz::TypeAProbeSpeedup(pazz_runs, baseline_runs)) {
    fmt::print("type_a median probe speedup vs baseline: {:.2f}x\n", *s);
  }
  return kExitOk;
}

// --- fuzz ------------------------------------------------------------------

int RunFuzz(const NetworkArgs& a, const std::string& pair_arg, double rate,
            std::uint64_t count, bool baseline, std::uint64_t fuzz_seed,
            const std::string& out) {
  const LoadedNetwork n = LoadNetwork(a);
  const pazz::PortPair pair = pair_arg.empty()
                                  ? n.pair.value_or(pazz::PortPair{})
                                  : ParsePair(pair_arg);
  if (pair_arg.empty() && !n.pair) {
    throw pazz::Error(pazz::ErrorCode::kInvalidArgument, "network has no port pair; pass --pair");
  }
  const auto graph = pazz::ReachabilityGraph::Build(n.topology, n.config);
  const pazz::Corpus corpus = graph.CorpusFor(pair.src, pair.dst);
  pazz::FuzzerOptions opts;
  opts.mode = baseline ? pazz::FuzzMode::kBaseline : pazz::FuzzMode::kPazz;
  opts.rate_pps = rate;
  opts.seed = fuzz_seed;
  pazz::Fuzzer fuzzer(corpus.entry, corpus.exit, opts);

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.empty() && out != "-") {
    file.open(out);
    if (!file) throw pazz::Error(pazz::ErrorCode::kInvalidArgument, "cannot write " + out);
    os = &file;
  }
  pazz::Log().info("fuzzing {} -> {}: sweep {} headers, residual {} headers",
                   pazz::ToString(pair.src), pazz::ToString(pair.dst),
                   fuzzer.plan().sweep.Cardinality(),
                   fuzzer.plan().residual.Cardinality());
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto h = fuzzer.Next();
    if (!h) break;
    pazz::PacketRecord p;
    p.time = static_cast<double>(i) * fuzzer.interval();
    p.cls = pazz::TrafficClass::kFuzz;
    p.seq = i;
    p.at = pair.src;
    p.header = *h;
    *os << pazz::FormatPacketLine(p, n.config.width()) << "\n";
  }
  return kExitOk;
}

// --- replay ----------------------------------------------------------------

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pazz::Error(pazz::ErrorCode::kNotFound, "cannot read " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

bool Skippable(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

int RunReplay(const NetworkArgs& a, const std::string& packets, const std::string& out,
              const std::string& pcap) {
  const LoadedNetwork n = LoadNetwork(a);
  const pazz::DataPlane dp(n.topology, n.config);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.empty() && out != "-") {
    file.open(out);
    os = &file;
  }
  std::optional<pazz::PcapWriter> writer;
  if (!pcap.empty()) writer.emplace(pcap);
  const auto lines = ReadLines(packets);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Skippable(lines[i])) continue;
    const pazz::PacketRecord p = pazz::ParsePacketLine(lines[i], n.config.width(), i + 1);
    const auto tr = dp.Trace(p.at, p.header);
    std::uint32_t copy = 0;
    for (const auto& d : tr.delivered) {
      pazz::SampledReport s;
      s.report = d.report;
      s.cls = p.cls;
      s.seq = p.seq;
      s.copy = copy++;
      s.injected_at = p.time;
      s.time = p.time;
      *os << pazz::FormatReportLine(s, n.config.width()) << "\n";
      if (writer) writer->Write(s.time, s.report);
    }
  }
  return kExitOk;
}

// --- check -----------------------------------------------------------------

int RunCheck(const NetworkArgs& a, const std::string& reports, const std::string& out,
             const std::string& json_out) {
  const LoadedNetwork n = LoadNetwork(a);
  const auto graph = pazz::ReachabilityGraph::Build(n.topology, n.config);
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.empty() && out != "-") {
    file.open(out);
    os = &file;
  }
  pazz::FindingLog log;
  nlohmann::json verdicts = nlohmann::json::array();
  std::size_t checked = 0;
  const auto lines = ReadLines(reports);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Skippable(lines[i])) continue;
    const pazz::SampledReport s = pazz::ParseReportLine(lines[i], n.config.width(), i + 1);
    if (!s.report.entry) {
      throw pazz::Error(pazz::ErrorCode::kParseError, "report has no entry port", i + 1);
    }
    const auto expected =
        graph.ExpectedReports(s.report.header, *s.report.entry, s.report.egress);
    const pazz::Verdict v = pazz::Check(s.report, expected);
    ++checked;
    if (v.outcome == pazz::Outcome::kConsistent) continue;
    log.Record(v, s.time);
    *os << pazz::FormatVerdictLine(v, s.time, n.config.width()) << "\n";
    verdicts.push_back(pazz::VerdictToJson(v, n.config.width()));
  }
  if (!json_out.empty()) WriteText(json_out, verdicts.dump(2) + "\n");
  fmt::print(stderr, "{} reports checked, {} fault verdicts, {} open findings\n", checked,
             verdicts.size(), log.size());
  return log.size() == 0 ? kExitOk : kExitFindings;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consistency checking for simulated SDN data planes"};
  app.require_subcommand(1);
  const std::vector<std::string> args(argv, argv + argc);

  NetworkArgs gen_args;
  std::string gen_out = "pazz-net";
  bool gen_json = false;
  auto* gen = app.add_subcommand("gen", "generate a topology and rule set");
  AddNetworkOptions(gen, gen_args);
  gen->add_option("--out", gen_out, "output directory");
  gen->add_flag("--json", gen_json, "also write JSON forms");

  RunArgs run_args, base_args;
  auto* run = app.add_subcommand("run", "run a fault-detection experiment");
  AddRunOptions(run, run_args);
  auto* base = app.add_subcommand("baseline", "same experiment with exhaustive random probes");
  AddRunOptions(base, base_args);

  std::vector<std::string> report_in;
  std::string report_out;
  auto* report = app.add_subcommand("report", "aggregate metrics from run directories");
  report->add_option("inputs", report_in, "run directories or metrics.json files")->required();
  report->add_option("--out", report_out, "directory for CSV tables");

  NetworkArgs fuzz_net;
  std::string fuzz_pair, fuzz_out;
  double fuzz_rate = 1000.0;
  std::uint64_t fuzz_count = 1000, fuzz_seed = 1;
  bool fuzz_baseline = false;
  auto* fuzz = app.add_subcommand("fuzz", "emit a probe stream for a port pair");
  AddNetworkOptions(fuzz, fuzz_net);
  fuzz->add_option("--pair", fuzz_pair, "SRC_SW/PORT:DST_SW/PORT");
  fuzz->add_option("--rate", fuzz_rate, "probes per second");
  fuzz->add_option("--count", fuzz_count, "number of probes");
  fuzz->add_option("--fuzz-seed", fuzz_seed, "probe order seed");
  fuzz->add_flag("--baseline", fuzz_baseline, "uniform probes instead of sweep first");
  fuzz->add_option("--out", fuzz_out, "output file (default stdout)");

  NetworkArgs replay_net;
  std::string replay_in, replay_out, replay_pcap;
  auto* replay = app.add_subcommand("replay", "push a packet trace through the data plane");
  AddNetworkOptions(replay, replay_net);
  replay->add_option("--packets", replay_in, "packet trace")->required();
  replay->add_option("--out", replay_out, "report file (default stdout)");
  replay->add_option("--pcap", replay_pcap, "also write tagged frames as pcap");

  NetworkArgs check_net;
  std::string check_in, check_out, check_json;
  auto* check = app.add_subcommand("check", "check egress reports against the control plane");
  AddNetworkOptions(check, check_net);
  check->add_option("--reports", check_in, "report file")->required();
  check->add_option("--out", check_out, "verdict log (default stdout)");
  check->add_option("--json", check_json, "verdicts as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*gen) return RunGen(gen_args, gen_out, gen_json);
    if (*run) return RunExperiment(run_args, false, args);
    if (*base) return RunExperiment(base_args, true, args);
    if (*report) return RunReport(report_in, report_out);
    if (*fuzz) {
      return RunFuzz(fuzz_net, fuzz_pair, fuzz_rate, fuzz_count, fuzz_baseline, fuzz_seed,
                     fuzz_out);
    }
    if (*replay) return RunReplay(replay_net, replay_in, replay_out, replay_pcap);
    if (*check) return RunCheck(check_net, check_in, check_out, check_json);
  } catch (const pazz::Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitError;
  }
  return kExitError;
}
