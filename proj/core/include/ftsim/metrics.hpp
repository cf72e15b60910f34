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


// Outcome classification and campaign aggregates.

#ifndef FTSIM_METRICS_HPP_
#define FTSIM_METRICS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ftsim/fault.hpp"
#include "ftsim/machine.hpp"
#include "ftsim/scheme.hpp"
#include "ftsim/stats.hpp"

namespace ftsim {

enum class OutcomeClass : std::uint8_t { kDetected, kMasked, kSdc, kCrash, kHang };
inline constexpr std::size_t kOutcomeClassCount = 5;
inline constexpr std::array<OutcomeClass, kOutcomeClassCount> kAllOutcomeClasses = {
    OutcomeClass::kDetected, OutcomeClass::kMasked, OutcomeClass::kSdc, OutcomeClass::kCrash, OutcomeClass::kHang};

std::string_view ToString(OutcomeClass c);
std::optional<OutcomeClass> ParseOutcomeClass(std::string_view text);

struct Outcome {
  OutcomeClass cls = OutcomeClass::kMasked;
  std::uint64_t fault_id = 0;
  FaultKind kind = FaultKind::kTransientFlip;
  // Present iff cls == kDetected. Measured from injection.
  std::optional<std::uint64_t> latency;
  // Detection cycle minus first corrupted read, when the fault was ever read.
  std::optional<std::uint64_t> manifest_latency;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// The fault-free reference a run is judged against.
struct Golden {
  std::uint64_t cycles = 0;
  std::vector<std::uint64_t> output;

  // Throw std::invalid_argument unless the run halted normally.
  static Golden From(const RunResult& run);
  static Golden From(const SchemeRunResult& run);
};

// Detected > Crash > Hang > SDC > Masked. A run that timed out counts as a
// hang whatever its cycle count.
Outcome Classify(const Golden& golden, const SchemeRunResult& run, const FaultSpec& fault,
                 double hang_multiplier = 3.0);

struct EfficiencyBreakdown {
  std::uint64_t n = 0;
  std::array<std::uint64_t, kOutcomeClassCount> counts{};
  std::array<double, kOutcomeClassCount> fractions{};
  double margin = 0.0;

  std::uint64_t count(OutcomeClass c) const { return counts[static_cast<std::size_t>(c)]; }
  double fraction(OutcomeClass c) const { return fractions[static_cast<std::size_t>(c)]; }
  // Crash + Hang (+ SDC when `with_sdc`).
  double failure_fraction(bool with_sdc = true) const;
};

// Throws std::invalid_argument on an empty list.
EfficiencyBreakdown Aggregate(std::span<const Outcome> outcomes);

struct LatencyStats {
  Distribution summary;
  std::map<std::uint64_t, std::uint64_t> histogram;  // power-of-two bins
};

// Over Detected outcomes only; throws std::invalid_argument if there are none.
LatencyStats ComputeLatencyStats(std::span<const Outcome> outcomes);

}  // namespace ftsim

#endif  // FTSIM_METRICS_HPP_
