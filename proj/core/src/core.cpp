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

#include "ftsim/core.hpp"

#include <stdexcept>
#include <string>

namespace ftsim {

Core::Core(const Program& program, const MachineLimits& limits, MemoryPort& memory)
    : code_(program.code.data()),
      code_size_(program.code.size()),
      timing_(limits.timing),
      memory_(&memory) {
  state_.regs.assign(program.registers, 0);
}

void Core::AttachFault(const FaultSpec& spec) {
  if (started_) throw std::logic_error("faults must be attached before the first cycle");
  if (spec.reg >= state_.regs.size()) {
    throw std::invalid_argument("fault targets nonexistent register r" + std::to_string(spec.reg));
  }
  if (spec.bit >= 64) throw std::invalid_argument("fault bit must be < 64");
  fault_.emplace(spec);
}

const Instruction* Core::NextInstruction() const {
  auto pc = this->pc();
  return pc < code_size_ ? &code_[pc] : nullptr;
}

StepOutcome Core::Advance(std::uint64_t cycle) {
  if (status_ != CoreStatus::kRunning) throw std::logic_error("core is not running");
  Tick(cycle);
  if (Idle()) {
    auto issued = Issue(cycle);
    if (issued.kind == IssueOutcome::Kind::kAtEnd) return {StepOutcome::Kind::kHalted, {}, {}};
    if (issued.kind == IssueOutcome::Kind::kCrashed) {
      return {StepOutcome::Kind::kCrashed, {}, issued.reason};
    }
  }
  if (Ready(cycle)) return {StepOutcome::Kind::kCommitted, Commit(cycle), {}};
  return {StepOutcome::Kind::kBusy, {}, {}};
}

StepOutcome Core::ExecuteOne(std::uint64_t cycle) {
  if (status_ != CoreStatus::kRunning) throw std::logic_error("core is not running");
  Tick(cycle);
  auto issued = Issue(cycle);
  if (issued.kind == IssueOutcome::Kind::kAtEnd) return {StepOutcome::Kind::kHalted, {}, {}};
  if (issued.kind == IssueOutcome::Kind::kCrashed) return {StepOutcome::Kind::kCrashed, {}, issued.reason};
  return {StepOutcome::Kind::kCommitted, Commit(cycle), {}};
}

IssueOutcome Core::CrashAt(CrashReason reason) {
  status_ = CoreStatus::kCrashed;
  crash_reason_ = reason;
  return {IssueOutcome::Kind::kCrashed, UnitClass::kAlu, 1, reason};
}

IssueOutcome Core::Issue(std::uint64_t cycle) {
  if (inflight_) throw std::logic_error("issue with an instruction already in flight");
  started_ = true;
  if (state_.pc == code_size_) {
    status_ = CoreStatus::kHalted;
    return {IssueOutcome::Kind::kAtEnd, UnitClass::kAlu, 0, CrashReason::kNone};
  }
  if (state_.pc > code_size_) return CrashAt(CrashReason::kInvalidJump);

  const auto index = static_cast<std::uint32_t>(state_.pc);
  const Instruction& ins = code_[index];
  InFlight f;
  f.index = index;
  f.op = ins.op;
  f.dst = ins.dst;
  f.writes = WritesRegister(ins.op);
  f.next_pc = state_.pc + 1;

  auto operand2 = [&] { return ins.src2_is_imm ? static_cast<std::uint64_t>(ins.imm) : ReadReg(ins.src2, cycle); };

  switch (ins.op) {
    case Opcode::kAdd: f.value = ReadReg(ins.src1, cycle) + operand2(); break;
    case Opcode::kSub: f.value = ReadReg(ins.src1, cycle) - operand2(); break;
    case Opcode::kMul: f.value = ReadReg(ins.src1, cycle) * operand2(); break;
    case Opcode::kDivu: {
      const auto a = ReadReg(ins.src1, cycle);
      const auto b = operand2();
      if (b == 0) return CrashAt(CrashReason::kDivideByZero);
      f.value = a / b;
      break;
    }
    case Opcode::kAnd: f.value = ReadReg(ins.src1, cycle) & operand2(); break;
    case Opcode::kOr: f.value = ReadReg(ins.src1, cycle) | operand2(); break;
    case Opcode::kXor: f.value = ReadReg(ins.src1, cycle) ^ operand2(); break;
    case Opcode::kShl: {
      const auto a = ReadReg(ins.src1, cycle);
      f.value = a << (operand2() & 63);
      break;
    }
    case Opcode::kShr: {
      const auto a = ReadReg(ins.src1, cycle);
      f.value = a >> (operand2() & 63);
      break;
    }
    case Opcode::kLoadi: f.value = static_cast<std::uint64_t>(ins.imm); break;
    case Opcode::kLoad: {
      f.aux = ReadReg(ins.src1, cycle) + static_cast<std::uint64_t>(ins.imm);
      auto access = memory_->Load(f.aux);
      if (!access.ok) return CrashAt(access.reason);
      f.value = access.value;
      break;
    }
    case Opcode::kStore: {
      f.aux = ReadReg(ins.src1, cycle) + static_cast<std::uint64_t>(ins.imm);
      f.value = ReadReg(ins.src2, cycle);
      auto access = memory_->CheckStore(f.aux, f.value);
      if (!access.ok) return CrashAt(access.reason);
      break;
    }
    case Opcode::kBeq:
    case Opcode::kBne:
    case Opcode::kBlt: {
      const auto a = ReadReg(ins.src1, cycle);
      const auto b = operand2();
      bool taken = false;
      if (ins.op == Opcode::kBeq) taken = a == b;
      if (ins.op == Opcode::kBne) taken = a != b;
      if (ins.op == Opcode::kBlt) taken = static_cast<std::int64_t>(a) < static_cast<std::int64_t>(b);
      if (taken) f.next_pc = ins.target;
      f.value = taken ? 1 : 0;
      f.aux = f.next_pc;
      break;
    }
    case Opcode::kJump:
      f.next_pc = ins.target;
      f.value = 1;
      f.aux = f.next_pc;
      break;
    case Opcode::kHalt:
      break;
  }
  if (f.next_pc > code_size_) return CrashAt(CrashReason::kInvalidJump);

  const auto latency = timing_.of(ins.op);
  f.ready_cycle = cycle + latency - 1;
  inflight_ = f;
  return {IssueOutcome::Kind::kIssued, UnitOf(ins.op), latency, CrashReason::kNone};
}

CommitRecord Core::Commit(std::uint64_t cycle) {
  if (!inflight_) throw std::logic_error("commit with nothing in flight");
  const InFlight f = *inflight_;
  inflight_.reset();
  if (f.writes) {
    state_.regs[f.dst] = f.value;
    if (fault_) fault_->OnWrite(f.dst);
  }
  if (f.op == Opcode::kStore) memory_->Store(f.aux, f.value);
  state_.pc = f.next_pc;
  if (f.op == Opcode::kHalt) status_ = CoreStatus::kHalted;
  return {seq_++, f.index, f.op, f.value, f.aux, cycle + 1};
}

ArchState Core::Capture(std::uint64_t cycle) const {
  ArchState snapshot = state_;
  if (fault_) {
    for (unsigned r = 0; r < snapshot.regs.size(); ++r) {
      snapshot.regs[r] = fault_->Peek(r, snapshot.regs[r], cycle);
    }
  }
  return snapshot;
}

void Core::LoadState(const ArchState& state) {
  if (state.regs.size() != state_.regs.size()) {
    throw std::invalid_argument("LoadState: register file size mismatch");
  }
  if (inflight_) throw std::logic_error("LoadState with an instruction in flight");
  state_ = state;
}

}  // namespace ftsim
