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

#include <gtest/gtest.h>

#include "ftsim/cost_model.hpp"
#include "ftsim/scheme.hpp"
#include "test_kernels.hpp"

namespace ftsim {
namespace {

TEST(AreaOverheadTest, TableValues) {
  EXPECT_NEAR(AreaOverhead(SchemeConfig::Dmr()), 1.00, 5e-5);
  EXPECT_NEAR(AreaOverhead(SchemeConfig::Rsmt(10)), 0.0604, 5e-5);
  EXPECT_NEAR(AreaOverhead(SchemeConfig::ParDet()), 0.24, 5e-5);
  EXPECT_EQ(AreaOverhead(SchemeConfig::Unprotected()), 0.0);
}

TEST(AreaOverheadTest, LinearInKnobs) {
  EXPECT_NEAR(AreaOverhead(SchemeConfig::Rsmt(50)), 0.062, 1e-12);
  ParDetParams six;
  six.n_checkers = 6;
  EXPECT_NEAR(AreaOverhead(SchemeConfig::ParDet(six)), 0.48, 1e-12);
}

TEST(EnergyOverheadTest, IdentityIsZero) {
  const std::vector<CoreActivity> base = {{CoreRole::kMain, 100, 80}};
  EXPECT_EQ(EnergyOverhead(base, base, {}), 0.0);
}

TEST(EnergyOverheadTest, ZeroBaselineThrows) {
  PowerParams p;
  p.main = {0.0, 0.0};
  const std::vector<CoreActivity> base = {{CoreRole::kMain, 100, 80}};
  EXPECT_THROW(EnergyOverhead(base, base, p), std::invalid_argument);
}

TEST(EnergyOverheadTest, CheckerCoresScaled) {
  PowerParams p;
  p.small_core_factor = 0.5;
  const std::vector<CoreActivity> act = {{CoreRole::kMain, 10, 10}, {CoreRole::kChecker, 4, 2}};
  EXPECT_DOUBLE_EQ(CoreEnergy(act, p), 10 * 1.0 + 10 * 2.0 + 4 * 0.5 + 2 * 1.0);
}

TEST(EnergyOverheadTest, RsmtDynamicOnlySpecialization) {
  PowerParams p;
  p.main.static_per_cycle = 0.0;
  for (auto name : testing::kKernelNames) {
    const Program& prog = testing::Kernel(name);
    const SchemeRunResult base = RunUnprotected(prog, {});
    const SchemeRunResult rsmt = RunScheme(prog, {}, SchemeConfig::Rsmt());
    const double redundant_commits = static_cast<double>(rsmt.activity[0].commits - rsmt.commits);
    const double expected = p.main.energy_per_commit * redundant_commits / CoreEnergy(base.activity, p);
    EXPECT_NEAR(EnergyOverhead(rsmt.activity, base.activity, p), expected, 1e-12) << name;
    EXPECT_NEAR(expected, 1.0, 1e-12) << name;
  }
}

TEST(PowerOverheadTest, IdentityIsZero) {
  const SchemeRunResult base = RunUnprotected(testing::Kernel("crc32"), {});
  EXPECT_EQ(PowerOverhead(base, base, {}), 0.0);
}

TEST(PowerOverheadTest, DefaultOrderingOnEveryKernel) {
  const PowerParams p;
  for (auto name : testing::kKernelNames) {
    const Program& prog = testing::Kernel(name);
    const SchemeRunResult base = RunUnprotected(prog, {});
    const double dmr = PowerOverhead(RunScheme(prog, {}, SchemeConfig::Dmr()), base, p);
    const double rsmt = PowerOverhead(RunScheme(prog, {}, SchemeConfig::Rsmt()), base, p);
    const double pardet = PowerOverhead(RunScheme(prog, {}, SchemeConfig::ParDet()), base, p);
    EXPECT_GT(dmr, 0.4) << name;
    EXPECT_LT(dmr, 1.0) << name;
    EXPECT_GT(dmr, pardet) << name;
    EXPECT_GT(pardet, rsmt) << name;
    EXPECT_GE(rsmt, 0.0) << name;
  }
}

TEST(PowerParamsTest, JsonRoundTripAndValidation) {
  PowerParams p;
  p.small_core_factor = 0.25;
  p.uncore_per_cycle = 1.5;
  const PowerParams back = PowerParamsFromJson(nlohmann::json::parse(ToJson(p).dump()));
  EXPECT_EQ(back.small_core_factor, 0.25);
  EXPECT_EQ(back.uncore_per_cycle, 1.5);
  EXPECT_THROW(PowerParamsFromJson(nlohmann::json{{"small_core_factor", -1}}), std::invalid_argument);
  EXPECT_THROW(PowerParamsFromJson(nlohmann::json{{"uncore_per_cycle", "lots"}}), std::invalid_argument);
}

}  // namespace
}  // namespace ftsim
