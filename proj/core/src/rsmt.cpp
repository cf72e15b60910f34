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


#include "ftsim/rsmt.hpp"

#include <array>
#include <stdexcept>
#include <vector>

#include "ftsim/core.hpp"
#include "ftsim/dmr.hpp"
#include "ftsim/memory.hpp"

namespace ftsim {

ComparisonBuffer::ComparisonBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("comparison buffer capacity must be positive");
}

void ComparisonBuffer::Push(const CommitRecord& record) {
  if (full()) throw std::logic_error("comparison buffer overflow");
  queue_.push_back(record);
}

CommitRecord ComparisonBuffer::Pop() {
  if (empty()) throw std::logic_error("comparison buffer underflow");
  CommitRecord r = queue_.front();
  queue_.pop_front();
  return r;
}

const CommitRecord& ComparisonBuffer::Front() const {
  if (empty()) throw std::logic_error("comparison buffer is empty");
  return queue_.front();
}

CommitGrant ArbitrateCommit(bool primary_ready, bool redundant_ready, std::size_t occupancy,
                            std::size_t capacity, unsigned commit_width, SmtThread& last) {
  const bool r = redundant_ready && occupancy > 0;
  if (commit_width >= 2) {
    // With two slots the redundant pop happens first and frees an entry.
    const bool p = primary_ready && (occupancy < capacity || r);
    return {p, r};
  }
  const bool p = primary_ready && occupancy < capacity;
  if (p && r) {
    const bool pick_primary = last == SmtThread::kRedundant;
    last = pick_primary ? SmtThread::kPrimary : SmtThread::kRedundant;
    return {pick_primary, !pick_primary};
  }
  if (p) last = SmtThread::kPrimary;
  if (r) last = SmtThread::kRedundant;
  return {p, r};
}

namespace {

// The redundant thread's view of memory: loads return what the primary
// loaded for the same dynamic instruction, stores go nowhere.
class ReplicaPort final : public MemoryPort {
 public:
  explicit ReplicaPort(std::uint64_t words) : words_(words) {}

  void set_head(const CommitRecord* head) { head_ = head; }

  MemAccess Load(std::uint64_t address) override {
    if (address >= words_) return MemAccess::Fail(CrashReason::kOutOfBoundsLoad);
    if (head_ == nullptr || head_->op != Opcode::kLoad) return MemAccess::Ok(0);
    return MemAccess::Ok(head_->value);
  }
  MemAccess CheckStore(std::uint64_t address, std::uint64_t) override {
    if (address >= words_) return MemAccess::Fail(CrashReason::kOutOfBoundsStore);
    return MemAccess::Ok(0);
  }
  void Store(std::uint64_t, std::uint64_t) override {}

 private:
  std::uint64_t words_;
  const CommitRecord* head_ = nullptr;
};

constexpr std::size_t kSharedUnits = 3;

}  // namespace

SchemeRunResult RunRsmt(const Program& program, const MachineLimits& limits, const RsmtParams& params,
                        const std::optional<FaultSpec>& fault) {
  limits.Validate();
  if (params.buffer_capacity == 0) throw std::invalid_argument("buffer_capacity must be positive");
  if (params.commit_width == 0) throw std::invalid_argument("commit_width must be positive");

  Memory memory(program, limits);
  ReplicaPort replica(limits.memory_words);
  Core primary(program, limits, memory);
  Core redundant(program, limits, replica);
  if (fault) primary.AttachFault(*fault);

  ComparisonBuffer buffer(params.buffer_capacity);
  std::array<std::uint64_t, kSharedUnits> unit_free_at{};
  SmtThread last = SmtThread::kRedundant;

  SchemeRunResult result;
  result.scheme = SchemeKind::kRsmt;
  std::uint64_t cycle = 0;
  bool stop = false;

  auto detect = [&](std::uint64_t at, std::uint64_t seq) {
    result.detections.push_back({at, seq, DetectionCause::kResultMismatch});
    result.status = SchemeStatus::kDetected;
    stop = true;
  };

  // Returns false if the thread crashed.
  auto try_issue = [&](Core& thread, bool is_redundant) {
    if (!thread.running() || !thread.Idle()) return true;
    const Instruction* next = thread.NextInstruction();
    if (next != nullptr) {
      if (is_redundant) {
        if (buffer.empty()) return true;
        replica.set_head(&buffer.Front());
      }
      const auto unit = static_cast<std::size_t>(UnitOf(next->op));
      if (UnitOf(next->op) != UnitClass::kAlu && unit_free_at[unit] > cycle) return true;
    }
    const auto issued = thread.Issue(cycle);
    if (issued.kind == IssueOutcome::Kind::kCrashed) return false;
    if (issued.kind == IssueOutcome::Kind::kIssued && issued.unit != UnitClass::kAlu) {
      unit_free_at[static_cast<std::size_t>(issued.unit)] = cycle + issued.latency;
    }
    return true;
  };

  while (true) {
    if (!primary.running() && !redundant.running()) {
      result.status = SchemeStatus::kHalted;
      break;
    }
    if (cycle >= limits.max_cycles) {
      result.status = SchemeStatus::kTimedOut;
      break;
    }
    primary.Tick(cycle);

    // Issue priority alternates so neither thread starves a shared unit.
    bool primary_ok = true;
    bool redundant_ok = true;
    if (cycle % 2 == 0) {
      primary_ok = try_issue(primary, false);
      redundant_ok = try_issue(redundant, true);
    } else {
      redundant_ok = try_issue(redundant, true);
      primary_ok = try_issue(primary, false);
    }
    if (!primary_ok) {
      result.status = SchemeStatus::kCrashed;
      result.crash = primary.crash_reason();
      ++cycle;
      break;
    }
    if (!redundant_ok) {
      detect(cycle + 1, redundant.commits());
      ++cycle;
      break;
    }

    const auto grant = ArbitrateCommit(primary.running() && primary.Ready(cycle),
                                       redundant.running() && redundant.Ready(cycle), buffer.size(),
                                       buffer.capacity(), params.commit_width, last);
    if (grant.redundant) {
      const auto occupancy = buffer.size();
      const CommitRecord head = buffer.Pop();
      const CommitRecord mine = redundant.Commit(cycle);
      result.slack.push_back({occupancy, mine.cycle - head.cycle});
      if (CompareCommits(head, mine)) detect(mine.cycle, mine.seq);
    }
    if (grant.primary && !stop) buffer.Push(primary.Commit(cycle));
    ++cycle;
    if (stop) break;

    // Streams that can no longer line up: one thread has stopped while the
    // other still has (or needs) records.
    const bool redundant_waits = redundant.running() && redundant.Idle() && redundant.NextInstruction() != nullptr;
    if (!primary.running() && buffer.empty() && redundant_waits) {
      detect(cycle, redundant.commits());
      break;
    }
    if (!redundant.running() && (primary.running() || !buffer.empty())) {
      detect(cycle, redundant.commits());
      break;
    }
  }

  result.cycles = cycle;
  result.verified_cycle = cycle;
  result.commits = primary.commits();
  result.output = memory.Slice(program.output);
  if (const auto* f = primary.fault()) result.manifest_cycle = f->manifest_cycle();
  result.activity = {{CoreRole::kMain, cycle, primary.commits() + redundant.commits()}};
  return result;
}

SlackSummary MeasureSlack(std::span<const SlackSample> trace) {
  if (trace.empty()) throw std::invalid_argument("empty slack trace");
  std::vector<std::uint64_t> insns;
  std::vector<std::uint64_t> cycles;
  insns.reserve(trace.size());
  cycles.reserve(trace.size());
  for (const auto& s : trace) {
    insns.push_back(s.instructions);
    cycles.push_back(s.cycles);
  }
  return {Summarize(insns), Summarize(cycles), Histogram(insns)};
}

}  // namespace ftsim
