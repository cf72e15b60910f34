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


// Analytic area and power models. All results are overheads relative to the
// unprotected single core.

#ifndef FTSIM_COST_MODEL_HPP_
#define FTSIM_COST_MODEL_HPP_

#include <cstdint>
#include <span>

#include <nlohmann/json.hpp>

#include "ftsim/scheme.hpp"

namespace ftsim {

// none 0, DMR 1.00, R-SMT 0.06 + 0.0004 * capacity / 10,
// ParDet 0.24 * n_checkers / 3.
double AreaOverhead(const SchemeConfig& config);

struct CorePower {
  double static_per_cycle = 1.0;
  double energy_per_commit = 2.0;
};

struct PowerParams {
  CorePower main;
  // Checker cores are the main core scaled by this factor.
  double small_core_factor = 0.3;
  // Shared chip-level static power, paid once per cycle whatever the scheme.
  double uncore_per_cycle = 3.0;

  CorePower checker() const {
    return {main.static_per_cycle * small_core_factor, main.energy_per_commit * small_core_factor};
  }
};

nlohmann::ordered_json ToJson(const PowerParams& params);
PowerParams PowerParamsFromJson(const nlohmann::json& j);

// Sum over cores of static_per_cycle * active_cycles + energy_per_commit *
// commits. Core energy only; the uncore term is not included.
double CoreEnergy(std::span<const CoreActivity> activity, const PowerParams& params);

// energy(scheme) / energy(baseline) - 1 over core energy. Throws
// std::invalid_argument on zero baseline energy.
double EnergyOverhead(std::span<const CoreActivity> scheme, std::span<const CoreActivity> baseline,
                      const PowerParams& params);

// Average power relative to the baseline's, minus one. Power is all core
// energy the run spends (checker replay included) plus uncore, divided by
// the main core's execution time.
double PowerOverhead(const SchemeRunResult& scheme, const SchemeRunResult& baseline, const PowerParams& params);

}  // namespace ftsim

#endif  // FTSIM_COST_MODEL_HPP_
