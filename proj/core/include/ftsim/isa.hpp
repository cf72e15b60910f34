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

#ifndef FTSIM_ISA_HPP_
#define FTSIM_ISA_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ftsim {

inline constexpr unsigned kDefaultRegisterCount = 32;
inline constexpr unsigned kMaxRegisterCount = 256;

enum class Opcode : std::uint8_t {
  kAdd,
  kSub,
  kMul,
  kDivu,
  kAnd,
  kOr,
  kXor,
  kShl,
  kShr,
  kLoadi,
  kLoad,
  kStore,
  kBeq,
  kBne,
  kBlt,
  kJump,
  kHalt,
};
inline constexpr std::size_t kOpcodeCount = 17;

std::string_view Mnemonic(Opcode op);
std::optional<Opcode> ParseMnemonic(std::string_view text);

// Execution resource an opcode occupies while in flight. Alu work is
// pipelined; MulDiv and Mem are single unpipelined units that hardware
// threads sharing a core must arbitrate for.
enum class UnitClass : std::uint8_t { kAlu, kMulDiv, kMem };
UnitClass UnitOf(Opcode op);

constexpr bool IsBranch(Opcode op) {
  return op == Opcode::kBeq || op == Opcode::kBne || op == Opcode::kBlt;
}
constexpr bool IsAluBinary(Opcode op) {
  return op <= Opcode::kShr;
}
constexpr bool WritesRegister(Opcode op) {
  return IsAluBinary(op) || op == Opcode::kLoadi || op == Opcode::kLoad;
}

// One decoded instruction. `src2` is ignored when `src2_is_imm` is set, in
// which case `imm` is the second operand. LOAD/STORE address memory at
// regs[src1] + imm; STORE writes regs[src2].
struct Instruction {
  Opcode op = Opcode::kHalt;
  std::uint8_t dst = 0;
  std::uint8_t src1 = 0;
  std::uint8_t src2 = 0;
  bool src2_is_imm = false;
  std::int64_t imm = 0;
  std::uint32_t target = 0;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

std::string Disassemble(const Instruction& ins);

struct AddressRange {
  std::uint64_t base = 0;
  std::uint64_t length = 0;

  std::uint64_t end() const { return base + length; }
  friend bool operator==(const AddressRange&, const AddressRange&) = default;
};

struct Program {
  std::string name;
  std::vector<Instruction> code;
  std::map<std::uint64_t, std::uint64_t> data_init;
  AddressRange output;
  unsigned registers = kDefaultRegisterCount;
};

// Architectural state: the unit ParDet checkpoints and compares.
struct ArchState {
  std::uint64_t pc = 0;
  std::vector<std::uint64_t> regs;

  friend bool operator==(const ArchState&, const ArchState&) = default;
};

// Reserved index used by DiffState to report a program-counter divergence.
inline constexpr std::uint32_t kPcIndex = 0xFFFFFFFFu;

struct StateDiff {
  std::uint32_t index = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;

  friend bool operator==(const StateDiff&, const StateDiff&) = default;
};

// Registers (and pc, as kPcIndex) whose values differ, pc first. Throws
// std::invalid_argument when the register files differ in size.
std::vector<StateDiff> DiffState(const ArchState& a, const ArchState& b);

// One retired instruction. `value` is the destination value for ALU, LOADI
// and LOAD, the stored value for STORE and the taken flag for control
// transfers. `aux` is the effective address for LOAD/STORE and the next pc
// for control transfers; zero otherwise.
struct CommitRecord {
  std::uint64_t seq = 0;
  std::uint32_t static_index = 0;
  Opcode op = Opcode::kHalt;
  std::uint64_t value = 0;
  std::uint64_t aux = 0;
  std::uint64_t cycle = 0;

  friend bool operator==(const CommitRecord&, const CommitRecord&) = default;
};

// Per-opcode execution latency in cycles.
struct Timing {
  std::array<std::uint32_t, kOpcodeCount> latency{};

  std::uint32_t of(Opcode op) const { return latency[static_cast<std::size_t>(op)]; }

  static Timing Default();
  // Every opcode takes one cycle.
  static Timing Unit();

  friend bool operator==(const Timing&, const Timing&) = default;
};

struct MachineLimits {
  std::uint64_t max_cycles = 50'000'000;
  std::uint64_t memory_words = 4096;
  double hang_multiplier = 3.0;
  Timing timing = Timing::Default();

  // Throws std::invalid_argument on an unusable configuration.
  void Validate() const;
};

enum class CrashReason : std::uint8_t {
  kNone,
  kOutOfBoundsLoad,
  kOutOfBoundsStore,
  kDivideByZero,
  kInvalidJump,
  kLogDivergence,
};
std::string_view ToString(CrashReason reason);

}  // namespace ftsim

#endif  // FTSIM_ISA_HPP_
