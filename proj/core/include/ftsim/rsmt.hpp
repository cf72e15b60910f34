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

// Redundant simultaneous multithreading.
//
// A primary and a redundant hardware thread share one core: one commit port
// (commit_width slots per cycle), one multiply/divide unit and one memory
// port. Every primary commit is pushed into a bounded FIFO comparison
// buffer. The redundant thread may only start instruction k once record k
// sits at the buffer head; it takes load values from that record, never
// writes memory, and pops and compares the record when it retires.
//
// Commit arbitration is round-robin, overridden by buffer state: a full
// buffer stalls the primary, an empty one stalls the redundant thread.

#ifndef FTSIM_RSMT_HPP_
#define FTSIM_RSMT_HPP_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>

#include "ftsim/fault.hpp"
#include "ftsim/isa.hpp"
#include "ftsim/scheme.hpp"
#include "ftsim/stats.hpp"

namespace ftsim {

class ComparisonBuffer {
 public:
  explicit ComparisonBuffer(std::size_t capacity);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return queue_.size(); }
  bool empty() const { return queue_.empty(); }
  bool full() const { return queue_.size() >= capacity_; }

  // Throws std::logic_error on overflow / underflow.
  void Push(const CommitRecord& record);
  CommitRecord Pop();
  const CommitRecord& Front() const;

 private:
  std::size_t capacity_;
  std::deque<CommitRecord> queue_;
};

enum class SmtThread : std::uint8_t { kPrimary, kRedundant };

struct CommitGrant {
  bool primary = false;
  bool redundant = false;
};

// Decides which ready threads retire this cycle. `last` is the thread that
// won the previous contended cycle and is updated in place.
CommitGrant ArbitrateCommit(bool primary_ready, bool redundant_ready, std::size_t occupancy,
                            std::size_t capacity, unsigned commit_width, SmtThread& last);

SchemeRunResult RunRsmt(const Program& program, const MachineLimits& limits, const RsmtParams& params = {},
                        const std::optional<FaultSpec>& fault = std::nullopt);

struct SlackSummary {
  Distribution instructions;
  Distribution cycles;
  std::map<std::uint64_t, std::uint64_t> histogram;  // instruction slack -> samples
};

// Throws std::invalid_argument on an empty trace.
SlackSummary MeasureSlack(std::span<const SlackSample> trace);

}  // namespace ftsim

#endif  // FTSIM_RSMT_HPP_
