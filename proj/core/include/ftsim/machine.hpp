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

#ifndef FTSIM_MACHINE_HPP_
#define FTSIM_MACHINE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "ftsim/core.hpp"
#include "ftsim/fault.hpp"
#include "ftsim/isa.hpp"
#include "ftsim/memory.hpp"

namespace ftsim {

enum class RunStatus : std::uint8_t { kHalted, kCrashed, kTimedOut };

struct RunResult {
  RunStatus status = RunStatus::kHalted;
  CrashReason crash = CrashReason::kNone;
  std::uint64_t cycles = 0;
  std::uint64_t commits = 0;
  std::vector<std::uint64_t> output;
  std::vector<CommitRecord> trace;
  ArchState final_state;

  double ipc() const { return cycles == 0 ? 0.0 : static_cast<double>(commits) / static_cast<double>(cycles); }
};

// An unprotected single-core machine: one core, its memory, and the clock.
class Machine {
 public:
  Machine(const Program& program, const MachineLimits& limits);

  Machine(const Machine&) = delete;
  Machine& operator=(const Machine&) = delete;

  void AttachFault(const FaultSpec& spec) { core_.AttachFault(spec); }

  // Advances one cycle (no cycle is consumed when the program falls off its
  // end). Throws std::logic_error once halted or crashed.
  StepOutcome Step();

  bool finished() const { return !core_.running(); }
  std::uint64_t cycle() const { return cycle_; }
  const Core& core() const { return core_; }
  const Memory& memory() const { return memory_; }
  std::vector<std::uint64_t> Output() const { return memory_.Slice(program_->output); }

 private:
  const Program* program_;
  MachineLimits limits_;
  Memory memory_;
  Core core_;
  std::uint64_t cycle_ = 0;
};

RunResult Run(const Program& program, const MachineLimits& limits, bool trace = false,
              const std::optional<FaultSpec>& fault = std::nullopt);

}  // namespace ftsim

#endif  // FTSIM_MACHINE_HPP_
