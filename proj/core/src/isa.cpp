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

#include "ftsim/isa.hpp"

#include <stdexcept>
#include <string>

namespace ftsim {
namespace {

constexpr std::array<std::string_view, kOpcodeCount> kMnemonics = {
    "ADD",  "SUB",   "MUL", "DIVU", "AND", "OR",  "XOR",  "SHL",  "SHR",
    "LOADI", "LOAD", "STORE", "BEQ", "BNE", "BLT", "JUMP", "HALT",
};

std::string Reg(unsigned r) { return "r" + std::to_string(r); }

}  // namespace

std::string_view Mnemonic(Opcode op) {
  return kMnemonics[static_cast<std::size_t>(op)];
}

std::optional<Opcode> ParseMnemonic(std::string_view text) {
  for (std::size_t i = 0; i < kOpcodeCount; ++i) {
    const auto& m = kMnemonics[i];
    if (m.size() != text.size()) continue;
    bool same = true;
    for (std::size_t j = 0; j < m.size() && same; ++j) {
      char c = text[j];
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
      same = c == m[j];
    }
    if (same) return static_cast<Opcode>(i);
  }
  return std::nullopt;
}

UnitClass UnitOf(Opcode op) {
  switch (op) {
    case Opcode::kMul:
    case Opcode::kDivu:
      return UnitClass::kMulDiv;
    case Opcode::kLoad:
    case Opcode::kStore:
      return UnitClass::kMem;
    default:
      return UnitClass::kAlu;
  }
}

std::string Disassemble(const Instruction& ins) {
  std::string out(Mnemonic(ins.op));
  auto operand2 = [&] {
    return ins.src2_is_imm ? std::to_string(ins.imm) : Reg(ins.src2);
  };
  if (IsAluBinary(ins.op)) {
    out += " " + Reg(ins.dst) + ", " + Reg(ins.src1) + ", " + operand2();
  } else if (ins.op == Opcode::kLoadi) {
    out += " " + Reg(ins.dst) + ", " + std::to_string(ins.imm);
  } else if (ins.op == Opcode::kLoad) {
    out += " " + Reg(ins.dst) + ", " + Reg(ins.src1) + ", " + std::to_string(ins.imm);
  } else if (ins.op == Opcode::kStore) {
    out += " " + Reg(ins.src2) + ", " + Reg(ins.src1) + ", " + std::to_string(ins.imm);
  } else if (IsBranch(ins.op)) {
    out += " " + Reg(ins.src1) + ", " + operand2() + ", @" + std::to_string(ins.target);
  } else if (ins.op == Opcode::kJump) {
    out += " @" + std::to_string(ins.target);
  }
  return out;
}

std::vector<StateDiff> DiffState(const ArchState& a, const ArchState& b) {
  if (a.regs.size() != b.regs.size()) {
    throw std::invalid_argument("DiffState: register files differ in size (" +
                                std::to_string(a.regs.size()) + " vs " +
                                std::to_string(b.regs.size()) + ")");
  }
  std::vector<StateDiff> diffs;
  if (a.pc != b.pc) diffs.push_back({kPcIndex, a.pc, b.pc});
  for (std::size_t i = 0; i < a.regs.size(); ++i) {
    if (a.regs[i] != b.regs[i]) {
      diffs.push_back({static_cast<std::uint32_t>(i), a.regs[i], b.regs[i]});
    }
  }
  return diffs;
}

Timing Timing::Default() {
  Timing t = Unit();
  t.latency[static_cast<std::size_t>(Opcode::kMul)] = 3;
  t.latency[static_cast<std::size_t>(Opcode::kDivu)] = 12;
  t.latency[static_cast<std::size_t>(Opcode::kLoad)] = 3;
  t.latency[static_cast<std::size_t>(Opcode::kStore)] = 2;
  return t;
}

Timing Timing::Unit() {
  Timing t;
  t.latency.fill(1);
  return t;
}

void MachineLimits::Validate() const {
  if (memory_words == 0) throw std::invalid_argument("memory_words must be positive");
  if (!(hang_multiplier > 1.0)) throw std::invalid_argument("hang_multiplier must exceed 1");
  for (auto l : timing.latency) {
    if (l == 0) throw std::invalid_argument("opcode latency must be at least one cycle");
  }
}

std::string_view ToString(CrashReason reason) {
  switch (reason) {
    case CrashReason::kNone: return "none";
    case CrashReason::kOutOfBoundsLoad: return "out_of_bounds_load";
    case CrashReason::kOutOfBoundsStore: return "out_of_bounds_store";
    case CrashReason::kDivideByZero: return "divide_by_zero";
    case CrashReason::kInvalidJump: return "invalid_jump";
    case CrashReason::kLogDivergence: return "log_divergence";
  }
  return "unknown";
}

}  // namespace ftsim
