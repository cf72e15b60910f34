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

#ifndef FTSIM_CORE_HPP_
#define FTSIM_CORE_HPP_

#include <cstdint>
#include <optional>

#include "ftsim/fault.hpp"
#include "ftsim/isa.hpp"
#include "ftsim/memory.hpp"

namespace ftsim {

enum class CoreStatus : std::uint8_t { kRunning, kHalted, kCrashed };

struct StepOutcome {
  enum class Kind : std::uint8_t {
    kCommitted,
    kBusy,     // an instruction is in flight; nothing retired this cycle
    kCrashed,
    kHalted,   // pc reached the end of the program; no cycle consumed
  };
  Kind kind = Kind::kBusy;
  CommitRecord record;
  CrashReason reason = CrashReason::kNone;
};

struct IssueOutcome {
  enum class Kind : std::uint8_t { kIssued, kAtEnd, kCrashed };
  Kind kind = Kind::kIssued;
  UnitClass unit = UnitClass::kAlu;
  std::uint32_t latency = 1;
  CrashReason reason = CrashReason::kNone;
};

// One in-order hardware thread: architectural state plus at most one
// instruction in flight. Operands are read (through the fault hook) and the
// result computed when an instruction issues; registers, memory and pc are
// updated when it commits, `latency` cycles later at the earliest.
//
// The owner drives the clock. Per cycle: Tick(), then Issue() if Idle(),
// then Commit() if Ready(). Advance() does exactly that for a thread that
// owns its core alone.
class Core {
 public:
  Core(const Program& program, const MachineLimits& limits, MemoryPort& memory);

  Core(const Core&) = delete;
  Core& operator=(const Core&) = delete;

  // Throws std::invalid_argument for a nonexistent register or bit, and
  // std::logic_error once the core has started executing.
  void AttachFault(const FaultSpec& spec);

  StepOutcome Advance(std::uint64_t cycle);

  void Tick(std::uint64_t cycle) {
    if (fault_) fault_->Tick(cycle, state_.regs);
  }
  IssueOutcome Issue(std::uint64_t cycle);
  bool Idle() const { return !inflight_; }
  bool Ready(std::uint64_t cycle) const { return inflight_ && inflight_->ready_cycle <= cycle; }
  // Commit record `cycle` is the cycle count once this cycle completes.
  CommitRecord Commit(std::uint64_t cycle);

  // Issue and commit the next instruction in one call, ignoring latency.
  StepOutcome ExecuteOne(std::uint64_t cycle);

  // Architectural state as seen through the register read port, so
  // stuck-at bits show up in checkpoints.
  ArchState Capture(std::uint64_t cycle) const;
  const ArchState& state() const { return state_; }
  void LoadState(const ArchState& state);

  CoreStatus status() const { return status_; }
  bool running() const { return status_ == CoreStatus::kRunning; }
  CrashReason crash_reason() const { return crash_reason_; }
  std::uint64_t commits() const { return seq_; }
  bool AtEnd() const { return state_.pc == code_size_; }
  const FaultState* fault() const { return fault_ ? &*fault_ : nullptr; }
  // Static index of the next instruction to issue, or of the one in flight.
  std::uint64_t pc() const { return inflight_ ? inflight_->index : state_.pc; }
  const Instruction* NextInstruction() const;

 private:
  struct InFlight {
    std::uint32_t index = 0;
    Opcode op = Opcode::kHalt;
    std::uint8_t dst = 0;
    bool writes = false;
    std::uint64_t value = 0;
    std::uint64_t aux = 0;
    std::uint64_t next_pc = 0;
    std::uint64_t ready_cycle = 0;
  };

  std::uint64_t ReadReg(unsigned r, std::uint64_t cycle) {
    return fault_ ? fault_->Read(r, state_.regs[r], cycle) : state_.regs[r];
  }
  IssueOutcome CrashAt(CrashReason reason);

  const Instruction* code_;
  std::uint64_t code_size_;
  Timing timing_;
  MemoryPort* memory_;
  ArchState state_;
  std::optional<InFlight> inflight_;
  std::optional<FaultState> fault_;
  CoreStatus status_ = CoreStatus::kRunning;
  CrashReason crash_reason_ = CrashReason::kNone;
  std::uint64_t seq_ = 0;
  bool started_ = false;
};

}  // namespace ftsim

#endif  // FTSIM_CORE_HPP_
