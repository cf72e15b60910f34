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


// Statistical fault-injection planning.

#ifndef FTSIM_CAMPAIGN_PLAN_HPP_
#define FTSIM_CAMPAIGN_PLAN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ftsim/fault.hpp"
#include "ftsim/scheme.hpp"

namespace ftsim {

// inject_cycle ~ Normal(mean_fraction * golden, sd_fraction * golden),
// rounded and clamped to [0, golden).
struct InjectionTiming {
  double mean_fraction = 0.5;
  double sd_fraction = 1.0 / 6.0;

  friend bool operator==(const InjectionTiming&, const InjectionTiming&) = default;
};

struct PlanRequest {
  std::uint64_t n = 1000;
  std::uint64_t seed = 0;
  std::uint64_t golden_cycles = 1;
  double kind_mix = 0.5;  // fraction transient
  unsigned registers = 32;
  InjectionTiming timing;
};

struct CampaignPlan {
  std::string benchmark;
  std::uint64_t seed = 0;
  std::uint64_t golden_cycles = 0;
  std::vector<FaultSpec> faults;
  // Every fault is replayed unchanged under each of these.
  std::vector<SchemeConfig> scheme_matrix;

  friend bool operator==(const CampaignPlan&, const CampaignPlan&) = default;
};

// llround(n * kind_mix) transient faults, the rest split uniformly at random
// between stuck-at-0 and stuck-at-1; register and bit uniform; ids 0..n-1.
// A pure function of the request. Throws std::invalid_argument.
CampaignPlan PlanCampaign(const PlanRequest& request);

// Independent per-stream seed (splitmix64 of seed and stream index).
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

nlohmann::ordered_json ToJson(const FaultSpec& spec);
FaultSpec FaultSpecFromJson(const nlohmann::json& j);
nlohmann::ordered_json ToJson(const CampaignPlan& plan);
CampaignPlan CampaignPlanFromJson(const nlohmann::json& j);

}  // namespace ftsim

#endif  // FTSIM_CAMPAIGN_PLAN_HPP_
