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

// Common vocabulary of the error-detection schemes: configuration blocks,
// detection events and the per-run result every scheme produces.

#ifndef FTSIM_SCHEME_HPP_
#define FTSIM_SCHEME_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ftsim/fault.hpp"
#include "ftsim/isa.hpp"

namespace ftsim {

enum class SchemeKind : std::uint8_t { kNone, kDmr, kRsmt, kParDet };

std::string_view ToString(SchemeKind kind);
std::optional<SchemeKind> ParseSchemeKind(std::string_view text);

struct RsmtParams {
  unsigned buffer_capacity = 10;
  unsigned commit_width = 1;

  friend bool operator==(const RsmtParams&, const RsmtParams&) = default;
};

struct ParDetParams {
  unsigned n_checkers = 3;
  std::uint64_t segment_insns = 1000;
  double speed_ratio = 0.25;
  std::uint64_t checkpoint_cost = 32;
  std::uint64_t log_entries_per_segment = 1024;

  friend bool operator==(const ParDetParams&, const ParDetParams&) = default;
};

struct SchemeConfig {
  SchemeKind kind = SchemeKind::kNone;
  RsmtParams rsmt;
  ParDetParams pardet;

  // Unique, stable name used in reports, e.g. "rsmt-b10" or "pardet-n3".
  std::string Label() const;
  // Throws std::invalid_argument.
  void Validate() const;

  static SchemeConfig Unprotected() { return {}; }
  static SchemeConfig Dmr() { return {SchemeKind::kDmr, {}, {}}; }
  static SchemeConfig Rsmt(unsigned capacity = 10, unsigned width = 1) {
    return {SchemeKind::kRsmt, {capacity, width}, {}};
  }
  static SchemeConfig ParDet(ParDetParams params = {}) { return {SchemeKind::kParDet, {}, params}; }

  friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

// {"scheme":"dmr"}, {"scheme":"rsmt","buffer_capacity":10,"commit_width":1},
// {"scheme":"pardet","n_checkers":3,...}. Missing knobs take defaults.
nlohmann::ordered_json ToJson(const SchemeConfig& config);
SchemeConfig SchemeConfigFromJson(const nlohmann::json& j);

enum class DetectionCause : std::uint8_t { kResultMismatch, kStateMismatch };
std::string_view ToString(DetectionCause cause);

struct DetectionEvent {
  std::uint64_t cycle = 0;
  // Dynamic sequence number of the mismatching commit, or the segment index
  // for state comparisons.
  std::uint64_t seq = 0;
  DetectionCause cause = DetectionCause::kResultMismatch;

  friend bool operator==(const DetectionEvent&, const DetectionEvent&) = default;
};

enum class SchemeStatus : std::uint8_t { kHalted, kCrashed, kTimedOut, kDetected };
std::string_view ToString(SchemeStatus status);

enum class CoreRole : std::uint8_t { kMain, kChecker };

// Activity of one physical core, the input to the power model.
struct CoreActivity {
  CoreRole role = CoreRole::kMain;
  std::uint64_t active_cycles = 0;
  std::uint64_t commits = 0;
};

// Primary-to-redundant distance, sampled at every redundant commit.
struct SlackSample {
  std::uint64_t instructions = 0;
  std::uint64_t cycles = 0;
};

struct CheckerStats {
  std::uint64_t segments = 0;
  std::uint64_t checkpoint_stall_cycles = 0;
  std::uint64_t busy_wait_cycles = 0;  // main core waiting for a free checker
  std::vector<std::uint64_t> busy_cycles;  // per checker
  unsigned max_concurrent = 0;
};

struct SchemeRunResult {
  SchemeKind scheme = SchemeKind::kNone;
  SchemeStatus status = SchemeStatus::kHalted;
  CrashReason crash = CrashReason::kNone;
  // Cycles until the protected program stopped (for ParDet: main-core time,
  // checkpoint stalls included).
  std::uint64_t cycles = 0;
  // Instructions retired by the main core or primary thread.
  std::uint64_t commits = 0;
  std::vector<std::uint64_t> output;
  std::vector<DetectionEvent> detections;
  std::vector<CoreActivity> activity;
  std::optional<std::uint64_t> manifest_cycle;
  std::vector<SlackSample> slack;
  CheckerStats checkers;
  // Last cycle at which any verification work finished.
  std::uint64_t verified_cycle = 0;

  double ipc() const { return cycles == 0 ? 0.0 : static_cast<double>(commits) / static_cast<double>(cycles); }
};

// Dispatches to the scheme named by `config`.
SchemeRunResult RunScheme(const Program& program, const MachineLimits& limits, const SchemeConfig& config,
                          const std::optional<FaultSpec>& fault = std::nullopt);

// The unprotected single core wrapped as a scheme.
SchemeRunResult RunUnprotected(const Program& program, const MachineLimits& limits,
                               const std::optional<FaultSpec>& fault = std::nullopt);

}  // namespace ftsim

#endif  // FTSIM_SCHEME_HPP_
