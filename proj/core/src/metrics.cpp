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


#include "ftsim/metrics.hpp"

#include <stdexcept>

namespace ftsim {

std::string_view ToString(OutcomeClass c) {
  switch (c) {
    case OutcomeClass::kDetected: return "detected";
    case OutcomeClass::kMasked: return "masked";
    case OutcomeClass::kSdc: return "sdc";
    case OutcomeClass::kCrash: return "crash";
    case OutcomeClass::kHang: return "hang";
  }
  return "?";
}

std::optional<OutcomeClass> ParseOutcomeClass(std::string_view text) {
  for (auto c : kAllOutcomeClasses) {
    if (ToString(c) == text) return c;
  }
  return std::nullopt;
}

Golden Golden::From(const RunResult& run) {
  if (run.status != RunStatus::kHalted) throw std::invalid_argument("golden run did not halt");
  return {run.cycles, run.output};
}

Golden Golden::From(const SchemeRunResult& run) {
  if (run.status != SchemeStatus::kHalted) throw std::invalid_argument("golden run did not halt");
  return {run.cycles, run.output};
}

Outcome Classify(const Golden& golden, const SchemeRunResult& run, const FaultSpec& fault,
                 double hang_multiplier) {
  Outcome o;
  o.fault_id = fault.id;
  o.kind = fault.kind;
  if (!run.detections.empty()) {
    const auto at = run.detections.front().cycle;
    if (at < fault.inject_cycle) throw std::logic_error("detection precedes injection");
    o.cls = OutcomeClass::kDetected;
    o.latency = at - fault.inject_cycle;
    if (run.manifest_cycle && *run.manifest_cycle <= at) o.manifest_latency = at - *run.manifest_cycle;
    return o;
  }
  if (run.status == SchemeStatus::kCrashed) {
    o.cls = OutcomeClass::kCrash;
  } else if (run.status == SchemeStatus::kTimedOut ||
             static_cast<double>(run.cycles) > hang_multiplier * static_cast<double>(golden.cycles)) {
    o.cls = OutcomeClass::kHang;
  } else if (run.output != golden.output) {
    o.cls = OutcomeClass::kSdc;
  } else {
    o.cls = OutcomeClass::kMasked;
  }
  return o;
}

double EfficiencyBreakdown::failure_fraction(bool with_sdc) const {
  double f = fraction(OutcomeClass::kCrash) + fraction(OutcomeClass::kHang);
  if (with_sdc) f += fraction(OutcomeClass::kSdc);
  return f;
}

EfficiencyBreakdown Aggregate(std::span<const Outcome> outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("cannot aggregate zero outcomes");
  EfficiencyBreakdown b;
  b.n = outcomes.size();
  for (const auto& o : outcomes) ++b.counts[static_cast<std::size_t>(o.cls)];
  for (std::size_t i = 0; i < kOutcomeClassCount; ++i) {
    b.fractions[i] = static_cast<double>(b.counts[i]) / static_cast<double>(b.n);
  }
  b.margin = MarginOfError(b.n);
  return b;
}

LatencyStats ComputeLatencyStats(std::span<const Outcome> outcomes) {
  std::vector<std::uint64_t> latencies;
  for (const auto& o : outcomes) {
    if (o.cls == OutcomeClass::kDetected && o.latency) latencies.push_back(*o.latency);
  }
  if (latencies.empty()) throw std::invalid_argument("no detected outcomes");
  return {Summarize(latencies), Log2Histogram(latencies)};
}

}  // namespace ftsim
