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


#include "ftsim/campaign_plan.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace ftsim {

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

// std::uniform_int_distribution is implementation-defined; this keeps plans
// identical across standard libraries.
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

double UnitInterval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Box-Muller, for the same portability reason.
double StandardNormal(std::mt19937_64& rng) {
  double u1 = UnitInterval(rng);
  while (u1 <= 0.0) u1 = UnitInterval(rng);
  const double u2 = UnitInterval(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace

CampaignPlan PlanCampaign(const PlanRequest& request) {
  if (request.n == 0) throw std::invalid_argument("campaign needs at least one fault");
  if (request.golden_cycles == 0) throw std::invalid_argument("golden_cycles must be >= 1");
  if (!(request.kind_mix >= 0.0 && request.kind_mix <= 1.0)) {
    throw std::invalid_argument("kind_mix must be in [0, 1]");
  }
  if (request.registers == 0) throw std::invalid_argument("registers must be >= 1");
  if (!(request.timing.sd_fraction >= 0.0)) throw std::invalid_argument("sd_fraction must be >= 0");

  std::mt19937_64 rng(request.seed);
  const auto n_transient = static_cast<std::uint64_t>(std::llround(static_cast<double>(request.n) * request.kind_mix));

  std::vector<FaultKind> kinds;
  kinds.reserve(request.n);
  for (std::uint64_t i = 0; i < request.n; ++i) {
    if (i < n_transient) {
      kinds.push_back(FaultKind::kTransientFlip);
    } else {
      kinds.push_back(UniformBelow(rng, 2) == 0 ? FaultKind::kStuckAt0 : FaultKind::kStuckAt1);
    }
  }
  for (std::uint64_t i = request.n - 1; i > 0; --i) {
    std::swap(kinds[i], kinds[UniformBelow(rng, i + 1)]);
  }

  const double golden = static_cast<double>(request.golden_cycles);
  const double mean = request.timing.mean_fraction * golden;
  const double sd = request.timing.sd_fraction * golden;

  CampaignPlan plan;
  plan.seed = request.seed;
  plan.golden_cycles = request.golden_cycles;
  plan.faults.reserve(request.n);
  for (std::uint64_t i = 0; i < request.n; ++i) {
    FaultSpec f;
    f.id = i;
    f.kind = kinds[i];
    f.reg = static_cast<unsigned>(UniformBelow(rng, request.registers));
    f.bit = static_cast<unsigned>(UniformBelow(rng, 64));
    const double t = std::round(mean + sd * StandardNormal(rng));
    f.inject_cycle = static_cast<std::uint64_t>(std::clamp(t, 0.0, golden - 1.0));
    plan.faults.push_back(f);
  }
  return plan;
}

nlohmann::ordered_json ToJson(const FaultSpec& spec) {
  nlohmann::ordered_json j;
  j["id"] = spec.id;
  j["kind"] = std::string(ToString(spec.kind));
  j["reg"] = spec.reg;
  j["bit"] = spec.bit;
  j["inject_cycle"] = spec.inject_cycle;
  return j;
}

FaultSpec FaultSpecFromJson(const nlohmann::json& j) {
  try {
    FaultSpec f;
    f.id = j.at("id").get<std::uint64_t>();
    const auto kind = ParseFaultKind(j.at("kind").get<std::string>());
    if (!kind) throw std::invalid_argument("unknown fault kind in plan");
    f.kind = *kind;
    f.reg = j.at("reg").get<unsigned>();
    f.bit = j.at("bit").get<unsigned>();
    f.inject_cycle = j.at("inject_cycle").get<std::uint64_t>();
    if (f.bit >= 64) throw std::invalid_argument("fault bit must be < 64");
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed fault spec: ") + e.what());
  }
}

nlohmann::ordered_json ToJson(const CampaignPlan& plan) {
  nlohmann::ordered_json j;
  j["benchmark"] = plan.benchmark;
  j["seed"] = plan.seed;
  j["golden_cycles"] = plan.golden_cycles;
  j["scheme_matrix"] = nlohmann::ordered_json::array();
  for (const auto& s : plan.scheme_matrix) j["scheme_matrix"].push_back(ToJson(s));
  j["faults"] = nlohmann::ordered_json::array();
  for (const auto& f : plan.faults) j["faults"].push_back(ToJson(f));
  return j;
}

CampaignPlan CampaignPlanFromJson(const nlohmann::json& j) {
  try {
    CampaignPlan plan;
    plan.benchmark = j.value("benchmark", std::string{});
    plan.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("scheme_matrix")) {
      for (const auto& s : j.at("scheme_matrix")) plan.scheme_matrix.push_back(SchemeConfigFromJson(s));
    }
    plan.golden_cycles = j.at("golden_cycles").get<std::uint64_t>();
    for (const auto& f : j.at("faults")) plan.faults.push_back(FaultSpecFromJson(f));
    return plan;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed campaign plan: ") + e.what());
  }
}

}  // namespace ftsim
