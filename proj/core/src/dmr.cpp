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

#include "ftsim/dmr.hpp"

#include <stdexcept>
#include <string>

#include "ftsim/core.hpp"
#include "ftsim/memory.hpp"

namespace ftsim {

std::optional<CommitMismatch> CompareCommits(const CommitRecord& a, const CommitRecord& b) {
  if (a.seq != b.seq) {
    throw std::logic_error("commit comparison misaligned: seq " + std::to_string(a.seq) + " vs " +
                           std::to_string(b.seq));
  }
  if (a.static_index != b.static_index || a.value != b.value || a.aux != b.aux) {
    return CommitMismatch{a, b};
  }
  return std::nullopt;
}

SchemeRunResult RunDmr(const Program& program, const MachineLimits& limits,
                       const std::optional<FaultSpec>& fault) {
  limits.Validate();
  Memory main_memory(program, limits);
  Memory shadow_memory(program, limits);
  Core main(program, limits, main_memory);
  Core shadow(program, limits, shadow_memory);
  if (fault) main.AttachFault(*fault);

  SchemeRunResult result;
  result.scheme = SchemeKind::kDmr;
  std::uint64_t cycle = 0;
  using Kind = StepOutcome::Kind;

  while (true) {
    if (!main.running() && !shadow.running()) {
      result.status = SchemeStatus::kHalted;
      break;
    }
    if (cycle >= limits.max_cycles) {
      result.status = SchemeStatus::kTimedOut;
      break;
    }
    const StepOutcome m = main.running() ? main.Advance(cycle) : StepOutcome{Kind::kHalted, {}, {}};
    const StepOutcome s = shadow.running() ? shadow.Advance(cycle) : StepOutcome{Kind::kHalted, {}, {}};

    if (m.kind == Kind::kCrashed) {
      result.status = SchemeStatus::kCrashed;
      result.crash = m.reason;
      ++cycle;
      break;
    }
    const bool both_halted = m.kind == Kind::kHalted && s.kind == Kind::kHalted;
    if (!both_halted) ++cycle;

    if (m.kind == Kind::kCommitted && s.kind == Kind::kCommitted) {
      if (CompareCommits(m.record, s.record)) {
        result.detections.push_back({m.record.cycle, m.record.seq, DetectionCause::kResultMismatch});
        result.status = SchemeStatus::kDetected;
        break;
      }
    } else if (m.kind != s.kind) {
      // The cores fell out of lockstep: one retired (or stopped) while the
      // other did not.
      result.detections.push_back({cycle, main.commits(), DetectionCause::kResultMismatch});
      result.status = SchemeStatus::kDetected;
      break;
    }
  }

  result.cycles = cycle;
  result.verified_cycle = cycle;
  result.commits = main.commits();
  result.output = main_memory.Slice(program.output);
  if (const auto* f = main.fault()) result.manifest_cycle = f->manifest_cycle();
  result.activity = {{CoreRole::kMain, cycle, main.commits()}, {CoreRole::kMain, cycle, shadow.commits()}};
  return result;
}

}  // namespace ftsim
