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

#include "ftsim/machine.hpp"

namespace ftsim {

Machine::Machine(const Program& program, const MachineLimits& limits)
    : program_(&program), limits_(limits), memory_(program, limits_), core_(program, limits_, memory_) {
  limits_.Validate();
}

StepOutcome Machine::Step() {
  auto outcome = core_.Advance(cycle_);
  if (outcome.kind != StepOutcome::Kind::kHalted) ++cycle_;
  return outcome;
}

RunResult Run(const Program& program, const MachineLimits& limits, bool trace,
              const std::optional<FaultSpec>& fault) {
  Machine machine(program, limits);
  if (fault) machine.AttachFault(*fault);

  RunResult result;
  while (!machine.finished()) {
    if (machine.cycle() >= limits.max_cycles) {
      result.status = RunStatus::kTimedOut;
      break;
    }
    auto outcome = machine.Step();
    if (outcome.kind == StepOutcome::Kind::kCommitted && trace) result.trace.push_back(outcome.record);
    if (outcome.kind == StepOutcome::Kind::kCrashed) {
      result.status = RunStatus::kCrashed;
      result.crash = outcome.reason;
    }
  }
  result.cycles = machine.cycle();
  result.commits = machine.core().commits();
  result.output = machine.Output();
  result.final_state = machine.core().state();
  return result;
}

}  // namespace ftsim
