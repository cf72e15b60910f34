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


#include "ftsim/cost_model.hpp"

#include <stdexcept>
#include <string>

namespace ftsim {

double AreaOverhead(const SchemeConfig& config) {
  switch (config.kind) {
    case SchemeKind::kNone: return 0.0;
    case SchemeKind::kDmr: return 1.0;
    case SchemeKind::kRsmt: return 0.06 + 0.0004 * (static_cast<double>(config.rsmt.buffer_capacity) / 10.0);
    case SchemeKind::kParDet: return 0.24 * (static_cast<double>(config.pardet.n_checkers) / 3.0);
  }
  throw std::invalid_argument("unknown scheme");
}

nlohmann::ordered_json ToJson(const PowerParams& params) {
  nlohmann::ordered_json j;
  j["main_static_per_cycle"] = params.main.static_per_cycle;
  j["main_energy_per_commit"] = params.main.energy_per_commit;
  j["small_core_factor"] = params.small_core_factor;
  j["uncore_per_cycle"] = params.uncore_per_cycle;
  return j;
}

PowerParams PowerParamsFromJson(const nlohmann::json& j) {
  PowerParams p;
  try {
    p.main.static_per_cycle = j.value("main_static_per_cycle", p.main.static_per_cycle);
    p.main.energy_per_commit = j.value("main_energy_per_commit", p.main.energy_per_commit);
    p.small_core_factor = j.value("small_core_factor", p.small_core_factor);
    p.uncore_per_cycle = j.value("uncore_per_cycle", p.uncore_per_cycle);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad power parameter: ") + e.what());
  }
  if (p.main.static_per_cycle < 0 || p.main.energy_per_commit < 0 || p.small_core_factor < 0 ||
      p.uncore_per_cycle < 0) {
    throw std::invalid_argument("power parameters must be non-negative");
  }
  return p;
}

double CoreEnergy(std::span<const CoreActivity> activity, const PowerParams& params) {
  const CorePower checker = params.checker();
  double energy = 0.0;
  for (const auto& core : activity) {
    const CorePower& p = core.role == CoreRole::kMain ? params.main : checker;
    energy += p.static_per_cycle * static_cast<double>(core.active_cycles) +
              p.energy_per_commit * static_cast<double>(core.commits);
  }
  return energy;
}

double EnergyOverhead(std::span<const CoreActivity> scheme, std::span<const CoreActivity> baseline,
                      const PowerParams& params) {
  const double base = CoreEnergy(baseline, params);
  if (!(base > 0.0)) throw std::invalid_argument("baseline energy is zero");
  return CoreEnergy(scheme, params) / base - 1.0;
}

double PowerOverhead(const SchemeRunResult& scheme, const SchemeRunResult& baseline, const PowerParams& params) {
  if (scheme.cycles == 0 || baseline.cycles == 0) throw std::invalid_argument("power of a zero-cycle run");
  auto power = [&](const SchemeRunResult& r) {
    const auto cycles = static_cast<double>(r.cycles);
    return (CoreEnergy(r.activity, params) + params.uncore_per_cycle * cycles) / cycles;
  };
  const double base = power(baseline);
  if (!(base > 0.0)) throw std::invalid_argument("baseline power is zero");
  return power(scheme) / base - 1.0;
}

}  // namespace ftsim
