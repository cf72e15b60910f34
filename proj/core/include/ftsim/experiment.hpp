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


// Campaign orchestration: configuration, golden runs, the parallel
// injection sweep and configuration sweeps.

#ifndef FTSIM_EXPERIMENT_HPP_
#define FTSIM_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ftsim/campaign_plan.hpp"
#include "ftsim/cost_model.hpp"
#include "ftsim/isa.hpp"
#include "ftsim/metrics.hpp"
#include "ftsim/rsmt.hpp"
#include "ftsim/scheme.hpp"

namespace ftsim {

// Bad configuration (CLI exit code 1).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A benchmark failed its fault-free run or its golden fixture (exit code 2).
class GoldenRunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::vector<std::filesystem::path> benchmarks;
  // Holds <benchmark>.bin golden outputs; empty skips the fixture check.
  std::filesystem::path golden_dir;
  std::vector<SchemeConfig> schemes = {SchemeConfig::Dmr(), SchemeConfig::Rsmt(), SchemeConfig::ParDet()};
  std::uint64_t n_faults = 1000;
  std::uint64_t seed = 42;
  double kind_mix = 0.5;
  unsigned registers = kDefaultRegisterCount;
  MachineLimits limits;
  InjectionTiming injection;
  PowerParams power;
  // R-SMT buffer sizes for the fault-free slack experiment.
  std::vector<unsigned> slack_capacities = {1, 2, 5, 10, 50};
  unsigned workers = 0;  // 0: one per hardware thread
  std::filesystem::path output_dir = "report";

  // Throws ConfigError.
  void Validate() const;
};

// Relative paths in `j` resolve against `base_dir`. Throws ConfigError.
ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

// The parts of a config that determine results (no paths, no worker count).
nlohmann::ordered_json ToJson(const ExperimentConfig& config);

nlohmann::ordered_json ToJson(const MachineLimits& limits);
MachineLimits MachineLimitsFromJson(const nlohmann::json& j);

// FTSIM_SEED and FTSIM_WORKERS, when set, replace the config's values.
void ApplyEnvironmentOverrides(ExperimentConfig& config);

struct SchemeCampaign {
  SchemeConfig config;
  SchemeRunResult fault_free;
  std::vector<Outcome> outcomes;  // plan order
};

struct SlackPoint {
  unsigned capacity = 0;
  std::uint64_t cycles = 0;
  SlackSummary slack;
};

struct BenchmarkCampaign {
  std::string name;
  SchemeRunResult baseline;  // unprotected, fault-free
  CampaignPlan plan;
  std::vector<SchemeCampaign> schemes;
  std::vector<SlackPoint> slack_sweep;
};

struct CampaignResult {
  ExperimentConfig config;
  std::vector<BenchmarkCampaign> benchmarks;
  // Broken scheme invariants (CLI exit code 3).
  std::vector<std::string> violations;
};

using ProgressFn = std::function<void(std::uint64_t done, std::uint64_t total)>;

// Throws ConfigError or GoldenRunError.
CampaignResult RunCampaign(const ExperimentConfig& config, const ProgressFn& progress = {});

enum class SweepKnob : std::uint8_t { kRsmtBuffer, kPardetCheckers };
std::string_view ToString(SweepKnob knob);
std::optional<SweepKnob> ParseSweepKnob(std::string_view text);

// Replaces the first scheme the knob applies to with one copy per value, in
// value order; further schemes of that kind are dropped. Throws ConfigError
// if values is empty or no scheme matches.
ExperimentConfig ExpandSweep(const ExperimentConfig& config, SweepKnob knob, std::span<const unsigned> values);

}  // namespace ftsim

#endif  // FTSIM_EXPERIMENT_HPP_
