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


// Parallel detection with log-based replay.
//
// The main core runs ahead unchecked. Its retired instructions are cut into
// segments (segment_insns instructions, or fewer when the segment's load /
// store log fills or the program stops). At each cut the main core stalls
// checkpoint_cost cycles to snapshot its architectural state and then hands
// the segment (start checkpoint, log, end checkpoint) to the next free
// checker in round-robin order, waiting if every checker is busy. A checker
// replays the segment at speed_ratio instructions per cycle, feeding loads
// from the log and matching stores against it, and compares its final state
// with the end checkpoint when the replay completes.

#ifndef FTSIM_PARDET_HPP_
#define FTSIM_PARDET_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "ftsim/fault.hpp"
#include "ftsim/isa.hpp"
#include "ftsim/scheme.hpp"

namespace ftsim {

struct LogEntry {
  bool is_load = true;
  std::uint64_t address = 0;
  std::uint64_t value = 0;

  friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

struct Segment {
  std::uint64_t index = 0;
  std::uint64_t first_seq = 0;
  std::uint64_t instructions = 0;
  ArchState start;
  ArchState end;
  std::vector<LogEntry> log;
};

struct SegmentVerdict {
  bool ok = true;
  // Offset within the segment of the first instruction at which replay went
  // wrong; instructions - 1 when only the end states differ.
  std::optional<std::uint64_t> diverged_at;
  std::vector<StateDiff> diffs;
  CrashReason crash = CrashReason::kNone;
  std::uint64_t replayed = 0;
};

// Functional replay of one segment on a fault-free checker.
SegmentVerdict VerifySegment(const Program& program, const MachineLimits& limits, const Segment& segment);

// Cycles a checker needs for `instructions` at `speed_ratio`.
std::uint64_t ReplayCycles(std::uint64_t instructions, double speed_ratio);

SchemeRunResult RunParDet(const Program& program, const MachineLimits& limits, const ParDetParams& params = {},
                          const std::optional<FaultSpec>& fault = std::nullopt);

}  // namespace ftsim

#endif  // FTSIM_PARDET_HPP_
