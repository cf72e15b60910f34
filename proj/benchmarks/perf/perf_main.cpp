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

#include <filesystem>
#include <map>
#include <string>

#include <benchmark/benchmark.h>

#include "ftsim/assembler.hpp"
#include "ftsim/campaign_plan.hpp"
#include "ftsim/machine.hpp"
#include "ftsim/metrics.hpp"
#include "ftsim/scheme.hpp"

namespace {

const ftsim::Program& Kernel(const std::string& name) {
  static std::map<std::string, ftsim::Program> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    it = cache.emplace(name, ftsim::AssembleFile(std::filesystem::path(FTSIM_KERNEL_DIR) / (name + ".asm"))).first;
  }
  return it->second;
}

void BM_CoreRun(benchmark::State& state) {
  const auto& p = Kernel("qsort");
  std::uint64_t commits = 0;
  for (auto _ : state) {
    const auto r = ftsim::Run(p, {});
    commits += r.commits;
    benchmark::DoNotOptimize(r.cycles);
  }
  state.counters["insn/s"] = benchmark::Counter(static_cast<double>(commits), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_CoreRun);

void RunScheme(benchmark::State& state, const ftsim::SchemeConfig& config) {
  const auto& p = Kernel("matmul");
  std::uint64_t commits = 0;
  for (auto _ : state) {
    const auto r = ftsim::RunScheme(p, {}, config);
    commits += r.commits;
    benchmark::DoNotOptimize(r.cycles);
  }
  state.counters["insn/s"] = benchmark::Counter(static_cast<double>(commits), benchmark::Counter::kIsRate);
}
BENCHMARK_CAPTURE(RunScheme, none, ftsim::SchemeConfig::Unprotected());
BENCHMARK_CAPTURE(RunScheme, dmr, ftsim::SchemeConfig::Dmr());
BENCHMARK_CAPTURE(RunScheme, rsmt, ftsim::SchemeConfig::Rsmt());
BENCHMARK_CAPTURE(RunScheme, pardet, ftsim::SchemeConfig::ParDet());

void BM_FaultedRunAndClassify(benchmark::State& state) {
  const auto& p = Kernel("crc32");
  const auto golden = ftsim::Golden::From(ftsim::RunUnprotected(p, {}));
  ftsim::PlanRequest req;
  req.n = 256;
  req.seed = 1;
  req.golden_cycles = golden.cycles;
  const auto plan = ftsim::PlanCampaign(req);
  ftsim::MachineLimits limits;
  limits.max_cycles = golden.cycles * 3 + 1;
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& f = plan.faults[i++ % plan.faults.size()];
    benchmark::DoNotOptimize(ftsim::Classify(golden, ftsim::RunScheme(p, limits, ftsim::SchemeConfig::Dmr(), f), f));
  }
}
BENCHMARK(BM_FaultedRunAndClassify);

void BM_PlanCampaign(benchmark::State& state) {
  ftsim::PlanRequest req;
  req.n = static_cast<std::uint64_t>(state.range(0));
  req.seed = 42;
  req.golden_cycles = 100'000;
  for (auto _ : state) benchmark::DoNotOptimize(ftsim::PlanCampaign(req));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PlanCampaign)->Arg(1000)->Arg(100000);

void BM_Assemble(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ftsim::AssembleFile(std::filesystem::path(FTSIM_KERNEL_DIR) / "dijkstra.asm"));
  }
}
BENCHMARK(BM_Assemble);

}  // namespace

BENCHMARK_MAIN();
