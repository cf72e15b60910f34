// Copyright 2026 The ftsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// ftsim: assemble benchmarks, run single injections, and drive fault
// injection campaigns and configuration sweeps.
//
// Exit codes: 0 success, 1 configuration or input error, 2 golden-run
// failure, 3 invariant violation during a campaign.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ftsim/assembler.hpp"
#include "ftsim/campaign_plan.hpp"
#include "ftsim/experiment.hpp"
#include "ftsim/machine.hpp"
#include "ftsim/memory.hpp"
#include "ftsim/metrics.hpp"
#include "ftsim/report.hpp"
#include "ftsim/rsmt.hpp"
#include "ftsim/scheme.hpp"

namespace fs = std::filesystem;
using ftsim::ConfigError;
using ftsim::GoldenRunError;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitGolden = 2;
constexpr int kExitInvariant = 3;

ftsim::ReportFormats ParseFormats(const std::string& text) {
  if (text.empty() || text == "all") return {};
  ftsim::ReportFormats f{false, false, false};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "json") {
      f.json = true;
    } else if (item == "csv") {
      f.csv = true;
    } else if (item == "markdown" || item == "md") {
      f.markdown = true;
    } else {
      throw ConfigError("unknown report format '" + item + "'");
    }
  }
  return f;
}

struct CampaignFlags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::string format;
  bool quiet = false;
};

ftsim::ExperimentConfig LoadConfig(const CampaignFlags& flags) {
  auto config = ftsim::LoadExperimentConfig(flags.config);
  ftsim::ApplyEnvironmentOverrides(config);
  if (flags.seed) config.seed = *flags.seed;
  if (flags.workers) config.workers = *flags.workers;
  if (!flags.out.empty()) config.output_dir = flags.out;
  return config;
}

int Execute(const ftsim::ExperimentConfig& config, const CampaignFlags& flags,
            std::optional<std::pair<ftsim::SweepKnob, std::vector<unsigned>>> sweep) {
  ftsim::ProgressFn progress;
  std::uint64_t last_percent = 101;
  if (!flags.quiet) {
    progress = [&](std::uint64_t done, std::uint64_t total) {
      const auto percent = done * 100 / total;
      if (percent != last_percent && (percent % 10 == 0 || done == total)) {
        last_percent = percent;
        std::cerr << "  " << done << "/" << total << " runs\n";
      }
    };
  }
  const auto result = ftsim::RunCampaign(config, progress);
  const auto report = ftsim::BuildReport(result);
  ftsim::WriteReport(report, config.output_dir, ParseFormats(flags.format));
  if (sweep) {
    std::ofstream out(config.output_dir / "sweep.csv", std::ios::binary);
    const auto csv = ftsim::SweepCsv(report, sweep->first);
    out << csv;
    if (!out) throw std::runtime_error("cannot write sweep.csv");
    std::cout << csv << "\n";
  }
  std::cout << ftsim::FormatSummary(report);
  std::cout << "report written to " << config.output_dir.string() << "\n";
  return result.violations.empty() ? 0 : kExitInvariant;
}

int CmdAsm(const std::string& path, bool listing, const std::string& golden, unsigned registers) {
  const auto program = ftsim::AssembleFile(path, registers);
  std::cout << program.name << ": " << program.code.size() << " instructions, " << program.data_init.size()
            << " data words, output [" << program.output.base << ", " << program.output.end() << ")\n";
  if (listing) {
    for (std::size_t i = 0; i < program.code.size(); ++i) {
      std::cout << "  " << i << ":\t" << ftsim::Disassemble(program.code[i]) << "\n";
    }
  }
  if (!golden.empty()) {
    const auto run = ftsim::Run(program, {});
    if (run.status != ftsim::RunStatus::kHalted) {
      throw GoldenRunError(program.name + ": fault-free run did not halt");
    }
    const auto bytes = ftsim::OutputBytes(run.output);
    std::ofstream out(golden, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("cannot write " + golden);
    std::cout << "golden: " << run.cycles << " cycles, " << run.commits << " instructions, " << bytes.size()
              << " bytes -> " << golden << "\n";
  }
  return 0;
}

struct RunFlags {
  std::string program;
  std::string scheme = "none";
  std::string scheme_json;
  std::optional<unsigned> buffer;
  std::optional<unsigned> checkers;
  std::string fault;
  std::string format = "text";
  unsigned registers = ftsim::kDefaultRegisterCount;
};

int CmdRun(const RunFlags& flags) {
  const auto program = ftsim::AssembleFile(flags.program, flags.registers);

  ftsim::SchemeConfig config;
  if (!flags.scheme_json.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(flags.scheme_json);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("--scheme-json: ") + e.what());
    }
    config = ftsim::SchemeConfigFromJson(j);
  } else {
    const auto kind = ftsim::ParseSchemeKind(flags.scheme);
    if (!kind) throw ConfigError("unknown scheme '" + flags.scheme + "'");
    config.kind = *kind;
  }
  if (flags.buffer) config.rsmt.buffer_capacity = *flags.buffer;
  if (flags.checkers) config.pardet.n_checkers = *flags.checkers;
  config.Validate();

  const ftsim::MachineLimits limits;
  const auto baseline = ftsim::RunUnprotected(program, limits);
  if (baseline.status != ftsim::SchemeStatus::kHalted) {
    throw GoldenRunError(program.name + ": fault-free run did not halt");
  }
  const auto fault_free = ftsim::RunScheme(program, limits, config);

  std::optional<ftsim::FaultSpec> fault;
  if (!flags.fault.empty()) fault = ftsim::ParseFaultSpec(flags.fault);
  ftsim::SchemeRunResult run = fault_free;
  std::optional<ftsim::Outcome> outcome;
  if (fault) {
    ftsim::MachineLimits budget = limits;
    budget.max_cycles = static_cast<std::uint64_t>(
                            std::floor(limits.hang_multiplier * static_cast<double>(fault_free.cycles))) + 1;
    run = ftsim::RunScheme(program, budget, config, fault);
    outcome = ftsim::Classify({fault_free.cycles, baseline.output}, run, *fault, limits.hang_multiplier);
  }

  nlohmann::ordered_json j;
  j["benchmark"] = program.name;
  j["scheme"] = ftsim::ToJson(config);
  j["status"] = std::string(ftsim::ToString(run.status));
  j["crash"] = std::string(ftsim::ToString(run.crash));
  j["cycles"] = run.cycles;
  j["commits"] = run.commits;
  j["ipc"] = run.ipc();
  j["slowdown"] = static_cast<double>(run.cycles) / static_cast<double>(baseline.cycles);
  j["detections"] = nlohmann::ordered_json::array();
  for (const auto& d : run.detections) {
    j["detections"].push_back({{"cycle", d.cycle}, {"seq", d.seq}, {"cause", std::string(ftsim::ToString(d.cause))}});
  }
  j["fault"] = fault ? ftsim::ToJson(*fault) : nlohmann::ordered_json(nullptr);
  if (outcome) {
    auto optional = [](const std::optional<std::uint64_t>& v) {
      return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    };
    j["outcome"] = {{"class", std::string(ftsim::ToString(outcome->cls))},
                    {"latency", optional(outcome->latency)},
                    {"manifest_latency", optional(outcome->manifest_latency)}};
  } else {
    j["outcome"] = nullptr;
  }
  if (config.kind == ftsim::SchemeKind::kRsmt && !run.slack.empty()) {
    const auto slack = ftsim::MeasureSlack(run.slack);
    j["slack"] = {{"min", slack.instructions.min},
                  {"median", slack.instructions.median},
                  {"mean", slack.instructions.mean},
                  {"max", slack.instructions.max}};
  }
  if (config.kind == ftsim::SchemeKind::kParDet) {
    j["checkers"] = {{"segments", run.checkers.segments},
                     {"busy_wait_cycles", run.checkers.busy_wait_cycles},
                     {"max_concurrent", run.checkers.max_concurrent},
                     {"verified_cycle", run.verified_cycle}};
  }

  if (flags.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else if (flags.format == "text") {
    std::cout << program.name << " under " << config.Label() << "\n";
    std::cout << "  status:   " << j["status"].get<std::string>();
    if (run.status == ftsim::SchemeStatus::kCrashed) std::cout << " (" << ftsim::ToString(run.crash) << ")";
    std::cout << "\n  cycles:   " << run.cycles << " (slowdown " << j["slowdown"].get<double>() << ")\n";
    std::cout << "  commits:  " << run.commits << " (IPC " << run.ipc() << ")\n";
    for (const auto& d : run.detections) {
      std::cout << "  detected: cycle " << d.cycle << ", " << ftsim::ToString(d.cause) << " at " << d.seq << "\n";
    }
    if (outcome) {
      std::cout << "  fault:    " << ftsim::FormatFaultSpec(*fault) << "\n  outcome:  " << ftsim::ToString(outcome->cls);
      if (outcome->latency) std::cout << ", latency " << *outcome->latency << " cycles";
      std::cout << "\n";
    }
  } else {
    throw ConfigError("--format must be text or json");
  }
  return 0;
}

std::vector<unsigned> ParseValues(const std::string& text) {
  std::vector<unsigned> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      values.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw ConfigError("--values: '" + item + "' is not a count");
    }
  }
  if (values.empty()) throw ConfigError("--values is empty");
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ftsim: error-detection scheme simulator and fault-injection harness"};
  app.require_subcommand(1);

  auto* asm_cmd = app.add_subcommand("asm", "Assemble a kernel; optionally write its golden output");
  std::string asm_path;
  bool listing = false;
  std::string golden;
  unsigned asm_registers = ftsim::kDefaultRegisterCount;
  asm_cmd->add_option("program", asm_path, "Assembly source")->required()->check(CLI::ExistingFile);
  asm_cmd->add_flag("--listing", listing, "Print the disassembled program");
  asm_cmd->add_option("--golden", golden, "Write the fault-free output image to this file");
  asm_cmd->add_option("--registers", asm_registers, "Register file size");

  auto* run_cmd = app.add_subcommand("run", "Run one program under one scheme, optionally with a fault");
  RunFlags run_flags;
  run_cmd->add_option("program", run_flags.program, "Assembly source")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--scheme", run_flags.scheme, "none | dmr | rsmt | pardet");
  run_cmd->add_option("--scheme-json", run_flags.scheme_json, "Scheme configuration block as JSON");
  run_cmd->add_option("--buffer", run_flags.buffer, "R-SMT comparison buffer capacity");
  run_cmd->add_option("--checkers", run_flags.checkers, "ParDet checker count");
  run_cmd->add_option("--fault", run_flags.fault, "kind:rN:bit:cycle, e.g. transient:r5:3:100");
  run_cmd->add_option("--format", run_flags.format, "text | json");
  run_cmd->add_option("--registers", run_flags.registers, "Register file size");

  CampaignFlags campaign_flags;
  auto add_campaign_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", campaign_flags.config, "Experiment config (JSON)")->required();
    cmd->add_option("--out", campaign_flags.out, "Output directory");
    cmd->add_option("--seed", campaign_flags.seed, "Campaign seed (overrides config and FTSIM_SEED)");
    cmd->add_option("--workers", campaign_flags.workers, "Worker threads, 0 = all cores");
    cmd->add_option("--format", campaign_flags.format, "Comma list of json, csv, markdown (default all)");
    cmd->add_flag("--quiet", campaign_flags.quiet, "No progress output");
  };
  auto* campaign_cmd = app.add_subcommand("campaign", "Run a fault injection campaign");
  add_campaign_flags(campaign_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run one campaign per value of a configuration knob");
  add_campaign_flags(sweep_cmd);
  std::string knob_name;
  std::string values_text;
  sweep_cmd->add_option("--knob", knob_name, "rsmt_buffer | pardet_checkers")->required();
  sweep_cmd->add_option("--values", values_text, "Comma-separated knob values")->required();

  auto* report_cmd = app.add_subcommand("report", "Re-emit report files from a report.json");
  std::string report_in;
  std::string report_out;
  std::string report_format;
  report_cmd->add_option("report", report_in, "report.json or the directory holding it")->required();
  report_cmd->add_option("--out", report_out, "Output directory (default: alongside the input)");
  report_cmd->add_option("--format", report_format, "Comma list of json, csv, markdown (default all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*asm_cmd) return CmdAsm(asm_path, listing, golden, asm_registers);
    if (*run_cmd) return CmdRun(run_flags);
    if (*campaign_cmd) return Execute(LoadConfig(campaign_flags), campaign_flags, std::nullopt);
    if (*sweep_cmd) {
      const auto knob = ftsim::ParseSweepKnob(knob_name);
      if (!knob) throw ConfigError("unknown knob '" + knob_name + "'");
      const auto values = ParseValues(values_text);
      const auto config = ftsim::ExpandSweep(LoadConfig(campaign_flags), *knob, values);
      return Execute(config, campaign_flags, std::make_pair(*knob, values));
    }
    if (*report_cmd) {
      fs::path in = report_in;
      if (fs::is_directory(in)) in /= "report.json";
      const auto report = ftsim::LoadReport(in);
      const fs::path out = report_out.empty() ? in.parent_path() : fs::path(report_out);
      ftsim::WriteReport(report, out, ParseFormats(report_format));
      std::cout << ftsim::FormatSummary(report);
      return 0;
    }
  } catch (const GoldenRunError& e) {
    std::cerr << "ftsim: golden run failed: " << e.what() << "\n";
    return kExitGolden;
  } catch (const std::exception& e) {
    std::cerr << "ftsim: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
