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

#include <random>
#include <string>

#include <gtest/gtest.h>

#include "ftsim/assembler.hpp"
#include "ftsim/isa.hpp"
#include "ftsim/machine.hpp"
#include "ftsim/memory.hpp"
#include "oracle/ref_interp.hpp"

namespace ftsim {
namespace {

TEST(AssemblerTest, MinimalProgram) {
  Program p = Assemble("LOADI r1, 5\nHALT\n");
  ASSERT_EQ(p.code.size(), 2u);
  EXPECT_EQ(p.code[0].op, Opcode::kLoadi);
  EXPECT_EQ(p.code[0].dst, 1);
  EXPECT_EQ(p.code[0].imm, 5);
  EXPECT_EQ(p.code[1].op, Opcode::kHalt);
  EXPECT_TRUE(p.data_init.empty());
}

TEST(AssemblerTest, UndefinedLabel) {
  try {
    Assemble("JUMP missing_label");
    FAIL() << "expected AssemblyError";
  } catch (const AssemblyError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("missing_label"), std::string::npos);
  }
}

TEST(AssemblerTest, RejectsUnknownOpcodeWithLine) {
  try {
    Assemble("LOADI r1, 1\n\nFROB r1, r2, r3\n");
    FAIL() << "expected AssemblyError";
  } catch (const AssemblyError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(AssemblerTest, RejectsRegisterOutOfRange) {
  EXPECT_THROW(Assemble("LOADI r32, 1"), AssemblyError);
  EXPECT_NO_THROW(Assemble("LOADI r7, 1", "", 8));
  EXPECT_THROW(Assemble("LOADI r8, 1", "", 8), AssemblyError);
}

TEST(AssemblerTest, RejectsMalformedOperands) {
  EXPECT_THROW(Assemble("ADD r1, r2"), AssemblyError);
  EXPECT_THROW(Assemble("ADD r1, r2, r3, r4"), AssemblyError);
  EXPECT_THROW(Assemble("LOADI r1, 12abc"), AssemblyError);
  EXPECT_THROW(Assemble("x:\nx: HALT"), AssemblyError);
  EXPECT_THROW(Assemble(".bogus 1"), AssemblyError);
}

TEST(AssemblerTest, DirectivesAndLabels) {
  Program p = Assemble(R"(
.equ BASE, 0x10
.data BASE, 1, -2, 3   # three words
.output 0x20, 2
top:  LOAD r1, r0, BASE
      BNE  r1, 0, top
end:  HALT
)");
  EXPECT_EQ(p.data_init.size(), 3u);
  EXPECT_EQ(p.data_init.at(16), 1u);
  EXPECT_EQ(p.data_init.at(17), static_cast<std::uint64_t>(-2));
  EXPECT_EQ(p.output, (AddressRange{32, 2}));
  EXPECT_EQ(p.code[0].imm, 16);
  EXPECT_EQ(p.code[1].target, 0u);
  EXPECT_TRUE(p.code[1].src2_is_imm);
}

TEST(AssemblerTest, MnemonicsAreCaseInsensitive) {
  Program p = Assemble("loadi r1, 5\nHaLt");
  EXPECT_EQ(p.code[1].op, Opcode::kHalt);
}

TEST(IsaTest, MnemonicRoundTrip) {
  for (std::size_t i = 0; i < kOpcodeCount; ++i) {
    const auto op = static_cast<Opcode>(i);
    EXPECT_EQ(ParseMnemonic(Mnemonic(op)), op);
  }
  EXPECT_FALSE(ParseMnemonic("NOP").has_value());
}

TEST(IsaTest, DefaultLatenciesMatchReference) {
  const Timing def = Timing::Default();
  const Timing unit = Timing::Unit();
  for (std::size_t i = 0; i < kOpcodeCount; ++i) {
    const auto op = static_cast<Opcode>(i);
    EXPECT_EQ(def.of(op), refsim::Latency(op, false)) << Mnemonic(op);
    EXPECT_EQ(unit.of(op), 1u);
  }
}

TEST(IsaTest, LimitsValidation) {
  MachineLimits limits;
  EXPECT_NO_THROW(limits.Validate());
  limits.hang_multiplier = 1.0;
  EXPECT_THROW(limits.Validate(), std::invalid_argument);
  limits = {};
  limits.memory_words = 0;
  EXPECT_THROW(limits.Validate(), std::invalid_argument);
}

TEST(DiffStateTest, IdenticalStates) {
  ArchState a{4, {1, 2, 3}};
  EXPECT_TRUE(DiffState(a, a).empty());
}

TEST(DiffStateTest, SingleRegister) {
  ArchState a{4, std::vector<std::uint64_t>(32, 0)};
  ArchState b = a;
  a.regs[7] = 11;
  b.regs[7] = 13;
  EXPECT_EQ(DiffState(a, b), (std::vector<StateDiff>{{7, 11, 13}}));
}

TEST(DiffStateTest, PcComesFirst) {
  ArchState a{4, {0, 1}};
  ArchState b{5, {0, 2}};
  EXPECT_EQ(DiffState(a, b), (std::vector<StateDiff>{{kPcIndex, 4, 5}, {1, 1, 2}}));
}

TEST(DiffStateTest, SizeMismatchThrows) {
  EXPECT_THROW(DiffState(ArchState{0, {1}}, ArchState{0, {1, 2}}), std::invalid_argument);
}

TEST(DiffStateTest, StuckAtOneOnEvenRegister) {
  // r3 ends holding 6; reads through the faulty port see 6 | 1.
  Program p = Assemble("LOADI r3, 6\nADD r4, r3, 0\nHALT");
  Machine golden(p, {});
  while (!golden.finished()) golden.Step();
  Machine faulted(p, {});
  faulted.AttachFault({FaultKind::kStuckAt1, 3, 0, 0, 0});
  while (!faulted.finished()) faulted.Step();
  const auto diffs = DiffState(golden.core().Capture(golden.cycle()), faulted.core().Capture(faulted.cycle()));
  // r4 copied r3 through the faulty port, so it differs as well.
  EXPECT_EQ(diffs, (std::vector<StateDiff>{{3, 6, 7}, {4, 6, 7}}));
}

TEST(StepTest, ImmediateLoadCommits) {
  Program p = Assemble("LOADI r1, 5\nHALT");
  Machine m(p, {});
  const StepOutcome out = m.Step();
  ASSERT_EQ(out.kind, StepOutcome::Kind::kCommitted);
  EXPECT_EQ(out.record.seq, 0u);
  EXPECT_EQ(out.record.value, 5u);
  EXPECT_EQ(out.record.cycle, 1u);
  EXPECT_EQ(m.core().state().pc, 1u);
}

TEST(StepTest, OutOfBoundsLoadCrashes) {
  Program p = Assemble("LOADI r1, 5000\nLOAD r2, r1\nHALT");
  RunResult r = ftsim::Run(p, {});
  EXPECT_EQ(r.status, RunStatus::kCrashed);
  EXPECT_EQ(r.crash, CrashReason::kOutOfBoundsLoad);
}

TEST(StepTest, OutOfBoundsStoreCrashes) {
  Program p = Assemble("LOADI r1, -1\nSTORE r1, r1\nHALT");
  RunResult r = ftsim::Run(p, {});
  EXPECT_EQ(r.status, RunStatus::kCrashed);
  EXPECT_EQ(r.crash, CrashReason::kOutOfBoundsStore);
}

TEST(StepTest, DivideByZeroCrashes) {
  Program p = Assemble("LOADI r0, 0\nLOADI r2, 9\nDIVU r1, r2, r0\nHALT");
  RunResult r = ftsim::Run(p, {});
  EXPECT_EQ(r.status, RunStatus::kCrashed);
  EXPECT_EQ(r.crash, CrashReason::kDivideByZero);
}

TEST(StepTest, StepAfterFinishThrows) {
  Program p = Assemble("HALT");
  Machine m(p, {});
  m.Step();
  ASSERT_TRUE(m.finished());
  EXPECT_THROW(m.Step(), std::logic_error);
}

TEST(StepTest, LatencyDelaysCommit) {
  Program p = Assemble("LOADI r1, 3\nMUL r2, r1, r1\nHALT");
  Machine m(p, {});
  EXPECT_EQ(m.Step().kind, StepOutcome::Kind::kCommitted);
  EXPECT_EQ(m.Step().kind, StepOutcome::Kind::kBusy);
  EXPECT_EQ(m.Step().kind, StepOutcome::Kind::kBusy);
  const StepOutcome mul = m.Step();
  ASSERT_EQ(mul.kind, StepOutcome::Kind::kCommitted);
  EXPECT_EQ(mul.record.value, 9u);
  EXPECT_EQ(mul.record.cycle, 4u);
}

TEST(RunTest, TwoInstructionProgram) {
  RunResult r = ftsim::Run(Assemble("LOADI r1, 5\nHALT"), {});
  EXPECT_EQ(r.status, RunStatus::kHalted);
  EXPECT_EQ(r.cycles, 2u);
  EXPECT_EQ(r.commits, 2u);
  EXPECT_DOUBLE_EQ(r.ipc(), 1.0);
}

TEST(RunTest, EmptyProgram) {
  RunResult r = ftsim::Run(Assemble(""), {});
  EXPECT_EQ(r.status, RunStatus::kHalted);
  EXPECT_EQ(r.cycles, 0u);
  EXPECT_EQ(r.commits, 0u);
}

TEST(RunTest, FallingOffTheEndHalts) {
  RunResult r = ftsim::Run(Assemble("LOADI r1, 1\nLOADI r2, 2"), {});
  EXPECT_EQ(r.status, RunStatus::kHalted);
  EXPECT_EQ(r.cycles, 2u);
}

TEST(RunTest, InfiniteLoopTimesOut) {
  MachineLimits limits;
  limits.max_cycles = 100;
  RunResult r = ftsim::Run(Assemble("top: JUMP top"), limits);
  EXPECT_EQ(r.status, RunStatus::kTimedOut);
  EXPECT_EQ(r.cycles, 100u);
}

TEST(RunTest, OutputRegionOutsideMemoryRejected) {
  MachineLimits limits;
  limits.memory_words = 16;
  EXPECT_THROW(ftsim::Run(Assemble(".output 10, 8\nHALT"), limits), std::invalid_argument);
}

TEST(OutputBytesTest, LittleEndianRoundTrip) {
  const std::vector<std::uint64_t> words = {0x0102030405060708ull, 0xFFull};
  const auto bytes = OutputBytes(words);
  ASSERT_EQ(bytes.size(), 16u);
  EXPECT_EQ(bytes[0], 0x08);
  EXPECT_EQ(bytes[7], 0x01);
  EXPECT_EQ(bytes[8], 0xFF);
  EXPECT_EQ(OutputWords(bytes), words);
}

// Straight-line random programs over a small register file and memory, with
// in-range addresses only so that every run halts.
std::string RandomProgram(std::mt19937_64& rng) {
  static const char* kOps[] = {"ADD", "SUB", "MUL", "AND", "OR", "XOR", "SHL", "SHR", "DIVU"};
  std::uniform_int_distribution<int> reg(1, 7), op(0, 8), imm(1, 50), len(5, 60), kind(0, 5);
  std::string src = ".output 0, 8\n";
  for (int r = 1; r < 8; ++r) src += "LOADI r" + std::to_string(r) + ", " + std::to_string(imm(rng)) + "\n";
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    const int k = kind(rng);
    const std::string d = "r" + std::to_string(reg(rng));
    const std::string a = "r" + std::to_string(reg(rng));
    if (k == 0) {
      src += "AND r9, " + a + ", 7\nLOAD " + d + ", r9\n";
    } else if (k == 1) {
      src += "AND r9, " + a + ", 7\nSTORE " + d + ", r9\n";
    } else {
      const std::string name = kOps[op(rng)];
      const std::string rhs = name == "DIVU" ? std::to_string(imm(rng)) : "r" + std::to_string(reg(rng));
      src += name + " " + d + ", " + a + ", " + rhs + "\n";
    }
  }
  return src + "HALT\n";
}

TEST(RunPropertyTest, MatchesReferenceInterpreter) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Program p = Assemble(RandomProgram(rng));
    MachineLimits limits;
    limits.memory_words = 64;
    const RunResult got = ftsim::Run(p, limits);
    const refsim::Result want = refsim::Run(p, {64, limits.max_cycles, false});
    ASSERT_EQ(got.status, RunStatus::kHalted) << trial;
    EXPECT_EQ(got.cycles, want.cycles) << trial;
    EXPECT_EQ(got.commits, want.commits) << trial;
    EXPECT_EQ(got.output, want.output) << trial;
    EXPECT_EQ(got.final_state.regs, want.regs) << trial;
    EXPECT_LE(got.commits, got.cycles);
  }
}

TEST(RunPropertyTest, DeterministicAndCoherentWithStep) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Program p = Assemble(RandomProgram(rng));
    MachineLimits limits;
    limits.memory_words = 64;
    const RunResult a = ftsim::Run(p, limits, true);
    const RunResult b = ftsim::Run(p, limits, true);
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_EQ(a.cycles, b.cycles);

    Machine m(p, limits);
    std::uint64_t committed = 0;
    while (!m.finished()) {
      if (m.Step().kind == StepOutcome::Kind::kCommitted) ++committed;
    }
    EXPECT_EQ(committed, a.commits);
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      EXPECT_EQ(a.trace[i].seq, i);
      if (i > 0) {
        EXPECT_GE(a.trace[i].cycle, a.trace[i - 1].cycle);
      }
    }
  }
}

}  // namespace
}  // namespace ftsim
