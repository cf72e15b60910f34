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


#include "ftsim/scheme.hpp"

#include <stdexcept>

#include "ftsim/dmr.hpp"
#include "ftsim/machine.hpp"
#include "ftsim/pardet.hpp"
#include "ftsim/rsmt.hpp"

namespace ftsim {

std::string_view ToString(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kNone: return "none";
    case SchemeKind::kDmr: return "dmr";
    case SchemeKind::kRsmt: return "rsmt";
    case SchemeKind::kParDet: return "pardet";
  }
  return "?";
}

std::optional<SchemeKind> ParseSchemeKind(std::string_view text) {
  if (text == "none" || text == "unprotected") return SchemeKind::kNone;
  if (text == "dmr") return SchemeKind::kDmr;
  if (text == "rsmt" || text == "r-smt") return SchemeKind::kRsmt;
  if (text == "pardet") return SchemeKind::kParDet;
  return std::nullopt;
}

std::string_view ToString(DetectionCause cause) {
  return cause == DetectionCause::kResultMismatch ? "result_mismatch" : "state_mismatch";
}

std::string_view ToString(SchemeStatus status) {
  switch (status) {
    case SchemeStatus::kHalted: return "halted";
    case SchemeStatus::kCrashed: return "crashed";
    case SchemeStatus::kTimedOut: return "timed_out";
    case SchemeStatus::kDetected: return "detected";
  }
  return "?";
}

std::string SchemeConfig::Label() const {
  switch (kind) {
    case SchemeKind::kNone: return "none";
    case SchemeKind::kDmr: return "dmr";
    case SchemeKind::kRsmt: {
      std::string label = "rsmt-b" + std::to_string(rsmt.buffer_capacity);
      if (rsmt.commit_width != 1) label += "-w" + std::to_string(rsmt.commit_width);
      return label;
    }
    case SchemeKind::kParDet: return "pardet-n" + std::to_string(pardet.n_checkers);
  }
  return "?";
}

void SchemeConfig::Validate() const {
  if (kind == SchemeKind::kRsmt) {
    if (rsmt.buffer_capacity == 0) throw std::invalid_argument("rsmt buffer_capacity must be >= 1");
    if (rsmt.commit_width == 0 || rsmt.commit_width > 2) {
      throw std::invalid_argument("rsmt commit_width must be 1 or 2");
    }
  }
  if (kind == SchemeKind::kParDet) {
    if (pardet.n_checkers == 0) throw std::invalid_argument("pardet n_checkers must be >= 1");
    if (pardet.segment_insns == 0) throw std::invalid_argument("pardet segment_insns must be >= 1");
    if (!(pardet.speed_ratio > 0.0) || pardet.speed_ratio > 1.0) {
      throw std::invalid_argument("pardet speed_ratio must be in (0, 1]");
    }
    if (pardet.log_entries_per_segment == 0) {
      throw std::invalid_argument("pardet log_entries_per_segment must be >= 1");
    }
  }
}

nlohmann::ordered_json ToJson(const SchemeConfig& config) {
  nlohmann::ordered_json j;
  j["scheme"] = std::string(ToString(config.kind));
  if (config.kind == SchemeKind::kRsmt) {
    j["buffer_capacity"] = config.rsmt.buffer_capacity;
    j["commit_width"] = config.rsmt.commit_width;
  } else if (config.kind == SchemeKind::kParDet) {
    j["n_checkers"] = config.pardet.n_checkers;
    j["segment_insns"] = config.pardet.segment_insns;
    j["speed_ratio"] = config.pardet.speed_ratio;
    j["checkpoint_cost"] = config.pardet.checkpoint_cost;
    j["log_entries_per_segment"] = config.pardet.log_entries_per_segment;
  }
  return j;
}

SchemeConfig SchemeConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("scheme config must be a JSON object");
  const auto name = j.value("scheme", std::string{});
  const auto kind = ParseSchemeKind(name);
  if (!kind) throw std::invalid_argument("unknown scheme '" + name + "'");

  SchemeConfig config;
  config.kind = *kind;
  try {
    config.rsmt.buffer_capacity = j.value("buffer_capacity", config.rsmt.buffer_capacity);
    config.rsmt.commit_width = j.value("commit_width", config.rsmt.commit_width);
    config.pardet.n_checkers = j.value("n_checkers", config.pardet.n_checkers);
    config.pardet.segment_insns = j.value("segment_insns", config.pardet.segment_insns);
    config.pardet.speed_ratio = j.value("speed_ratio", config.pardet.speed_ratio);
    config.pardet.checkpoint_cost = j.value("checkpoint_cost", config.pardet.checkpoint_cost);
    config.pardet.log_entries_per_segment =
        j.value("log_entries_per_segment", config.pardet.log_entries_per_segment);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad scheme parameter: ") + e.what());
  }
  config.Validate();
  return config;
}

SchemeRunResult RunUnprotected(const Program& program, const MachineLimits& limits,
                               const std::optional<FaultSpec>& fault) {
  limits.Validate();
  Machine machine(program, limits);
  if (fault) machine.AttachFault(*fault);

  SchemeRunResult result;
  result.scheme = SchemeKind::kNone;
  result.status = SchemeStatus::kHalted;
  while (!machine.finished()) {
    if (machine.cycle() >= limits.max_cycles) {
      result.status = SchemeStatus::kTimedOut;
      break;
    }
    const auto outcome = machine.Step();
    if (outcome.kind == StepOutcome::Kind::kCrashed) {
      result.status = SchemeStatus::kCrashed;
      result.crash = outcome.reason;
    }
  }
  result.cycles = machine.cycle();
  result.verified_cycle = result.cycles;
  result.commits = machine.core().commits();
  result.output = machine.Output();
  if (const auto* f = machine.core().fault()) result.manifest_cycle = f->manifest_cycle();
  result.activity = {{CoreRole::kMain, result.cycles, result.commits}};
  return result;
}

SchemeRunResult RunScheme(const Program& program, const MachineLimits& limits, const SchemeConfig& config,
                          const std::optional<FaultSpec>& fault) {
  config.Validate();
  switch (config.kind) {
    case SchemeKind::kNone: return RunUnprotected(program, limits, fault);
    case SchemeKind::kDmr: return RunDmr(program, limits, fault);
    case SchemeKind::kRsmt: return RunRsmt(program, limits, config.rsmt, fault);
    case SchemeKind::kParDet: return RunParDet(program, limits, config.pardet, fault);
  }
  throw std::invalid_argument("unknown scheme kind");
}

}  // namespace ftsim
