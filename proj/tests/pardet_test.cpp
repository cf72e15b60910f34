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

#include <string>

#include <gtest/gtest.h>

#include "ftsim/assembler.hpp"
#include "ftsim/core.hpp"
#include "ftsim/machine.hpp"
#include "ftsim/memory.hpp"
#include "ftsim/metrics.hpp"
#include "ftsim/pardet.hpp"
#include "test_kernels.hpp"

namespace ftsim {
namespace {

// Runs `p` fault-free and cuts its whole execution into one segment.
Segment WholeRunSegment(const Program& p, const MachineLimits& limits = {}) {
  Memory mem(p, limits);
  Core core(p, limits, mem);
  Segment s;
  s.start = core.Capture(0);
  for (std::uint64_t c = 0; core.running(); ++c) {
    const StepOutcome out = core.ExecuteOne(c);
    if (out.kind != StepOutcome::Kind::kCommitted) break;
    ++s.instructions;
    if (out.record.op == Opcode::kLoad) s.log.push_back({true, out.record.aux, out.record.value});
    if (out.record.op == Opcode::kStore) s.log.push_back({false, out.record.aux, out.record.value});
  }
  s.end = core.Capture(s.instructions);
  return s;
}

const char* const kLoadStore = R"(
.data 10, 7, 9
.output 20, 1
        LOAD  r1, r0, 10
        LOAD  r2, r0, 11
        ADD   r3, r1, r2
        STORE r3, r0, 20
        HALT
)";

TEST(ReplayCyclesTest, Arithmetic) {
  EXPECT_EQ(ReplayCycles(1000, 0.25), 4000u);
  EXPECT_EQ(ReplayCycles(3, 0.5), 6u);
  EXPECT_EQ(ReplayCycles(5, 0.3), 17u);
  EXPECT_EQ(ReplayCycles(7, 1.0), 7u);
  EXPECT_THROW(ReplayCycles(1, 0.0), std::invalid_argument);
}

TEST(VerifySegmentTest, FaultFreeSegmentPasses) {
  const Program p = Assemble(kLoadStore);
  const SegmentVerdict v = VerifySegment(p, {}, WholeRunSegment(p));
  EXPECT_TRUE(v.ok);
  EXPECT_TRUE(v.diffs.empty());
  EXPECT_EQ(v.replayed, 5u);
}

TEST(VerifySegmentTest, EndStateDifferingInOneRegister) {
  const Program p = Assemble(kLoadStore);
  Segment s = WholeRunSegment(p);
  s.end.regs[3] ^= 4;
  const SegmentVerdict v = VerifySegment(p, {}, s);
  EXPECT_FALSE(v.ok);
  ASSERT_EQ(v.diffs.size(), 1u);
  EXPECT_EQ(v.diffs[0].index, 3u);
  EXPECT_EQ(v.diverged_at, 4u);
}

TEST(VerifySegmentTest, LoggedStoreValueMismatch) {
  const Program p = Assemble(kLoadStore);
  Segment s = WholeRunSegment(p);
  s.log.back().value += 1;
  const SegmentVerdict v = VerifySegment(p, {}, s);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.diverged_at, 3u);
}

TEST(VerifySegmentTest, LogUnderrun) {
  const Program p = Assemble(kLoadStore);
  Segment s = WholeRunSegment(p);
  s.log.resize(1);
  const SegmentVerdict v = VerifySegment(p, {}, s);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.diverged_at, 1u);
}

TEST(VerifySegmentTest, LeftoverLogEntriesAreADivergence) {
  const Program p = Assemble(kLoadStore);
  Segment s = WholeRunSegment(p);
  s.log.push_back({true, 10, 7});
  EXPECT_FALSE(VerifySegment(p, {}, s).ok);
}

TEST(VerifySegmentTest, LoadAddressMismatch) {
  const Program p = Assemble(kLoadStore);
  Segment s = WholeRunSegment(p);
  s.log[0].address = 12;
  EXPECT_FALSE(VerifySegment(p, {}, s).ok);
}

TEST(VerifySegmentTest, CheckerCrashIsADivergence) {
  const Program p = Assemble("DIVU r1, r1, r2\nHALT");
  Segment s;
  s.instructions = 2;
  s.start = ArchState{0, std::vector<std::uint64_t>(32, 0)};
  s.end = s.start;
  const SegmentVerdict v = VerifySegment(p, {}, s);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.crash, CrashReason::kDivideByZero);
  EXPECT_EQ(v.diverged_at, 0u);
}

TEST(VerifySegmentTest, OverwrittenFaultIsMaskedForTheSegment) {
  // The flip on r5 lands before r5 is rewritten and nothing reads it in
  // between: replay from the clean start reaches the same end state.
  const Program p = Assemble(R"(
        LOADI r5, 3
        LOADI r1, 1
        LOADI r2, 2
        LOADI r5, 8
        ADD   r6, r5, r1
        HALT
)");
  MachineLimits limits;
  limits.timing = Timing::Unit();
  ParDetParams params;
  params.segment_insns = 100;
  const SchemeRunResult run = RunParDet(p, limits, params, FaultSpec{FaultKind::kTransientFlip, 5, 6, 1, 0});
  EXPECT_EQ(run.status, SchemeStatus::kHalted);
  EXPECT_TRUE(run.detections.empty());
}

TEST(ParDetTest, DeadRegisterFlipIsOverdetected) {
  // r20 is never read or written; the live end checkpoint still carries the
  // flip, so the state comparison reports it.
  const Program p = Assemble(R"(
        LOADI r1, 0
loop:   ADD   r1, r1, 1
        BLT   r1, 50, loop
        HALT
)");
  const FaultSpec f{FaultKind::kTransientFlip, 20, 9, 10, 0};
  const SchemeRunResult run = RunParDet(p, {}, {}, f);
  EXPECT_EQ(run.status, SchemeStatus::kDetected);
  ASSERT_EQ(run.detections.size(), 1u);
  EXPECT_EQ(run.detections[0].cause, DetectionCause::kStateMismatch);
  // The unprotected core never notices.
  const RunResult single = ftsim::Run(p, {}, false, f);
  EXPECT_EQ(single.output, ftsim::Run(p, {}).output);
}

TEST(ParDetTest, FaultFreeKernelsVerifyEverySegment) {
  for (auto name : testing::kKernelNames) {
    const Program& p = testing::Kernel(name);
    const RunResult single = ftsim::Run(p, {});
    const SchemeRunResult run = RunParDet(p, {});
    EXPECT_EQ(run.status, SchemeStatus::kHalted) << name;
    EXPECT_TRUE(run.detections.empty()) << name;
    EXPECT_EQ(run.output, single.output) << name;
    EXPECT_GE(run.cycles, single.cycles) << name;
    EXPECT_GE(run.verified_cycle, run.cycles) << name;
    EXPECT_EQ(run.checkers.segments, (single.commits + 999) / 1000) << name;
    std::uint64_t replayed = 0;
    for (std::size_t i = 1; i < run.activity.size(); ++i) replayed += run.activity[i].commits;
    EXPECT_EQ(replayed, single.commits) << name;
  }
}

TEST(ParDetTest, DetectionLatencyAtLeastOneFullReplay) {
  // fir only touches r1-r8, so a fault in r20 leaves control flow alone and
  // every segment but the last holds 1000 instructions. The segment holding
  // the injection closes after it and takes 4000 cycles to replay.
  const Program& p = testing::Kernel("fir");
  const Golden golden = Golden::From(RunParDet(p, {}));
  MachineLimits limits;
  limits.max_cycles = golden.cycles * 3 + 1;
  for (std::uint64_t inject : {5'000u, 12'345u, 20'000u, 31'000u}) {
    for (auto kind : {FaultKind::kTransientFlip, FaultKind::kStuckAt1}) {
      const FaultSpec f{kind, 20, 7, inject, 0};
      const Outcome o = Classify(golden, RunParDet(p, limits, {}, f), f);
      ASSERT_EQ(o.cls, OutcomeClass::kDetected) << FormatFaultSpec(f);
      EXPECT_GE(*o.latency, ReplayCycles(1000, 0.25)) << FormatFaultSpec(f);
    }
  }
}

TEST(ParDetTest, SmallSegmentsOverlapOnEveryKernel) {
  ParDetParams params;
  params.segment_insns = 50;
  for (auto name : testing::kKernelNames) {
    const SchemeRunResult run = RunParDet(testing::Kernel(name), {}, params);
    EXPECT_GE(run.checkers.max_concurrent, 2u) << name;
  }
}

TEST(ParDetTest, MoreCheckersNeverSlowTheMainCore) {
  for (auto name : testing::kKernelNames) {
    std::uint64_t prev = ~std::uint64_t{0};
    for (unsigned n : {1u, 2u, 3u, 4u, 6u}) {
      ParDetParams params;
      params.n_checkers = n;
      const SchemeRunResult run = RunParDet(testing::Kernel(name), {}, params);
      EXPECT_LE(run.cycles, prev) << name << " n=" << n;
      prev = run.cycles;
    }
  }
}

TEST(ParDetTest, LogCapacityCutsSegments) {
  ParDetParams params;
  params.log_entries_per_segment = 16;
  const Program& p = testing::Kernel("qsort");
  const SchemeRunResult run = RunParDet(p, {}, params);
  EXPECT_EQ(run.status, SchemeStatus::kHalted);
  EXPECT_GT(run.checkers.segments, (ftsim::Run(p, {}).commits + 999) / 1000);
}

TEST(ParDetTest, MainCoreCrashIsCrash) {
  const Program p = Assemble("LOADI r1, 8\nLOAD r2, r1\nHALT");
  const SchemeRunResult run = RunParDet(p, {}, {}, FaultSpec{FaultKind::kStuckAt1, 1, 50, 0, 0});
  EXPECT_EQ(run.status, SchemeStatus::kCrashed);
}

TEST(ParDetTest, RejectsBadParams) {
  ParDetParams params;
  params.n_checkers = 0;
  EXPECT_THROW(RunParDet(Assemble("HALT"), {}, params), std::invalid_argument);
  params = {};
  params.speed_ratio = 1.5;
  EXPECT_THROW(RunParDet(Assemble("HALT"), {}, params), std::invalid_argument);
  params = {};
  params.segment_insns = 0;
  EXPECT_THROW(RunParDet(Assemble("HALT"), {}, params), std::invalid_argument);
}

}  // namespace
}  // namespace ftsim
