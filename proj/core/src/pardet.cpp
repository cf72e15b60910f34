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


#include "ftsim/pardet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "ftsim/core.hpp"
#include "ftsim/memory.hpp"

namespace ftsim {
namespace {

// Memory as the checker sees it: the main core's log, consumed in order.
class LogPort final : public MemoryPort {
 public:
  LogPort(const std::vector<LogEntry>& log, std::uint64_t words) : log_(log), words_(words) {}

  bool diverged() const { return diverged_; }
  bool exhausted() const { return next_ == log_.size(); }

  MemAccess Load(std::uint64_t address) override {
    if (address >= words_) return MemAccess::Fail(CrashReason::kOutOfBoundsLoad);
    const LogEntry* e = Take();
    if (e == nullptr || !e->is_load || e->address != address) {
      diverged_ = true;
      return MemAccess::Ok(0);
    }
    return MemAccess::Ok(e->value);
  }
  MemAccess CheckStore(std::uint64_t address, std::uint64_t value) override {
    if (address >= words_) return MemAccess::Fail(CrashReason::kOutOfBoundsStore);
    const LogEntry* e = Take();
    if (e == nullptr || e->is_load || e->address != address || e->value != value) diverged_ = true;
    return MemAccess::Ok(0);
  }
  void Store(std::uint64_t, std::uint64_t) override {}

 private:
  const LogEntry* Take() { return next_ < log_.size() ? &log_[next_++] : nullptr; }

  const std::vector<LogEntry>& log_;
  std::uint64_t words_;
  std::size_t next_ = 0;
  bool diverged_ = false;
};

}  // namespace

std::uint64_t ReplayCycles(std::uint64_t instructions, double speed_ratio) {
  if (!(speed_ratio > 0.0)) throw std::invalid_argument("speed_ratio must be positive");
  return static_cast<std::uint64_t>(std::ceil(static_cast<double>(instructions) / speed_ratio - 1e-9));
}

SegmentVerdict VerifySegment(const Program& program, const MachineLimits& limits, const Segment& segment) {
  LogPort port(segment.log, limits.memory_words);
  Core checker(program, limits, port);
  checker.LoadState(segment.start);

  SegmentVerdict verdict;
  auto fail = [&](std::uint64_t at) {
    verdict.ok = false;
    verdict.diverged_at = at;
    return verdict;
  };

  for (std::uint64_t i = 0; i < segment.instructions; ++i) {
    if (!checker.running()) return fail(i);
    const auto step = checker.ExecuteOne(i);
    if (step.kind == StepOutcome::Kind::kCrashed) {
      verdict.crash = step.reason;
      return fail(i);
    }
    if (step.kind == StepOutcome::Kind::kHalted) return fail(i);
    ++verdict.replayed;
    if (port.diverged()) return fail(i);
  }
  verdict.diffs = DiffState(checker.state(), segment.end);
  if (!verdict.diffs.empty() || !port.exhausted()) {
    return fail(segment.instructions == 0 ? 0 : segment.instructions - 1);
  }
  return verdict;
}

SchemeRunResult RunParDet(const Program& program, const MachineLimits& limits, const ParDetParams& params,
                          const std::optional<FaultSpec>& fault) {
  limits.Validate();
  SchemeConfig::ParDet(params).Validate();

  Memory memory(program, limits);
  Core main(program, limits, memory);
  if (fault) main.AttachFault(*fault);

  const unsigned n = params.n_checkers;
  std::vector<std::uint64_t> checker_free_at(n, 0);
  std::vector<std::uint64_t> checker_commits(n, 0);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> busy_intervals;

  SchemeRunResult result;
  result.scheme = SchemeKind::kParDet;
  result.checkers.busy_cycles.assign(n, 0);

  Segment segment;
  segment.start = main.Capture(0);
  std::optional<DetectionEvent> detection;
  std::uint64_t resume_at = 0;
  unsigned next_checker = 0;
  std::uint64_t cycle = 0;

  // Hands the open segment to a checker; `end_cycle` is when the main core
  // retired its last instruction. The main core resumes once a checker has
  // taken the segment.
  auto close_segment = [&](std::uint64_t end_cycle) {
    if (segment.instructions == 0) return;
    segment.end = main.Capture(end_cycle);
    const auto verdict = VerifySegment(program, limits, segment);
    const std::uint64_t ready = end_cycle + params.checkpoint_cost;

    unsigned owner = next_checker;
    for (unsigned k = 0; k < n; ++k) {
      const unsigned j = (next_checker + k) % n;
      if (checker_free_at[j] <= ready) {
        owner = j;
        break;
      }
      if (checker_free_at[j] < checker_free_at[owner]) owner = j;
    }
    next_checker = (owner + 1) % n;
    const std::uint64_t start = std::max(ready, checker_free_at[owner]);
    const std::uint64_t done = start + ReplayCycles(segment.instructions, params.speed_ratio);
    if (!verdict.ok && (!detection || done < detection->cycle)) {
      detection = DetectionEvent{done, segment.index, DetectionCause::kStateMismatch};
    }
    checker_free_at[owner] = done;
    checker_commits[owner] += verdict.replayed;
    result.checkers.busy_cycles[owner] += done - start;
    busy_intervals.emplace_back(start, done);
    ++result.checkers.segments;
    result.checkers.checkpoint_stall_cycles += params.checkpoint_cost;
    result.checkers.busy_wait_cycles += start - ready;
    result.verified_cycle = std::max(result.verified_cycle, done);
    resume_at = start;

    Segment next;
    next.index = segment.index + 1;
    next.first_seq = segment.first_seq + segment.instructions;
    next.start = segment.end;
    segment = std::move(next);
  };

  while (true) {
    if (detection && detection->cycle <= cycle) {
      result.status = SchemeStatus::kDetected;
      break;
    }
    if (!main.running() && cycle >= resume_at) {
      result.status = SchemeStatus::kHalted;
      break;
    }
    if (cycle >= limits.max_cycles) {
      result.status = SchemeStatus::kTimedOut;
      break;
    }
    main.Tick(cycle);
    if (cycle < resume_at || !main.running()) {
      ++cycle;
      continue;
    }
    if (main.Idle()) {
      const auto issued = main.Issue(cycle);
      if (issued.kind == IssueOutcome::Kind::kCrashed) {
        result.status = SchemeStatus::kCrashed;
        result.crash = issued.reason;
        ++cycle;
        break;
      }
      if (issued.kind == IssueOutcome::Kind::kAtEnd) {
        close_segment(cycle);
        continue;
      }
    }
    if (main.Ready(cycle)) {
      const auto record = main.Commit(cycle);
      if (record.op == Opcode::kLoad) segment.log.push_back({true, record.aux, record.value});
      if (record.op == Opcode::kStore) segment.log.push_back({false, record.aux, record.value});
      ++segment.instructions;
      if (!main.running() || segment.instructions >= params.segment_insns ||
          segment.log.size() >= params.log_entries_per_segment) {
        close_segment(record.cycle);
      }
    }
    ++cycle;
  }

  // A halted main core still waits for outstanding verdicts.
  if (result.status == SchemeStatus::kHalted && detection) result.status = SchemeStatus::kDetected;
  if (result.status == SchemeStatus::kDetected) result.detections.push_back(*detection);

  result.cycles = cycle;
  result.commits = main.commits();
  result.output = memory.Slice(program.output);
  if (const auto* f = main.fault()) result.manifest_cycle = f->manifest_cycle();

  std::vector<std::pair<std::uint64_t, int>> edges;
  for (const auto& [s, e] : busy_intervals) {
    if (e > s) {
      edges.emplace_back(s, 1);
      edges.emplace_back(e, -1);
    }
  }
  std::sort(edges.begin(), edges.end());
  int live = 0;
  for (const auto& [t, d] : edges) {
    live += d;
    result.checkers.max_concurrent = std::max(result.checkers.max_concurrent, static_cast<unsigned>(live));
  }

  result.activity.push_back({CoreRole::kMain, cycle, main.commits()});
  for (unsigned j = 0; j < n; ++j) {
    result.activity.push_back({CoreRole::kChecker, result.checkers.busy_cycles[j], checker_commits[j]});
  }
  return result;
}

}  // namespace ftsim
