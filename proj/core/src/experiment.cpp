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


#include "ftsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iterator>
#include <mutex>
#include <set>
#include <thread>

#include "ftsim/assembler.hpp"
#include "ftsim/memory.hpp"

namespace ftsim {
namespace {

const std::set<std::string> kConfigKeys = {
    "benchmarks", "golden_dir", "schemes", "n_faults", "seed", "kind_mix", "registers", "limits",
    "injection", "power", "slack_capacities", "workers", "output_dir"};

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

Timing TimingFromJson(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "default") return Timing::Default();
    if (name == "unit") return Timing::Unit();
    throw ConfigError("unknown timing model '" + name + "'");
  }
  if (!j.is_object()) throw ConfigError("timing must be \"default\", \"unit\" or an object of latencies");
  Timing t = Timing::Default();
  for (const auto& [key, value] : j.items()) {
    const auto op = ParseMnemonic(key);
    if (!op) throw ConfigError("timing: unknown opcode '" + key + "'");
    t.latency[static_cast<std::size_t>(*op)] = value.get<std::uint32_t>();
  }
  return t;
}

void ParallelFor(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  const auto threads = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (threads <= 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(body);
  }
  if (error) std::rethrow_exception(error);
}

unsigned EffectiveWorkers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::uint8_t> ReadBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GoldenRunError("missing golden fixture " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (benchmarks.empty()) throw ConfigError("no benchmarks configured");
  if (schemes.empty()) throw ConfigError("no schemes configured");
  if (n_faults == 0) throw ConfigError("n_faults must be >= 1");
  if (!(kind_mix >= 0.0 && kind_mix <= 1.0)) throw ConfigError("kind_mix must be in [0, 1]");
  if (registers == 0 || registers > 256) throw ConfigError("registers must be in [1, 256]");
  if (!(injection.sd_fraction >= 0.0)) throw ConfigError("injection sd_fraction must be >= 0");
  std::set<std::string> labels;
  for (const auto& s : schemes) {
    try {
      s.Validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (!labels.insert(s.Label()).second) throw ConfigError("scheme '" + s.Label() + "' listed twice");
  }
  std::set<std::string> names;
  for (const auto& b : benchmarks) {
    if (!names.insert(b.stem().string()).second) {
      throw ConfigError("benchmark '" + b.stem().string() + "' listed twice");
    }
  }
  for (auto c : slack_capacities) {
    if (c == 0) throw ConfigError("slack capacities must be >= 1");
  }
  try {
    limits.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

nlohmann::ordered_json ToJson(const MachineLimits& limits) {
  nlohmann::ordered_json j;
  j["max_cycles"] = limits.max_cycles;
  j["memory_words"] = limits.memory_words;
  j["hang_multiplier"] = limits.hang_multiplier;
  nlohmann::ordered_json timing;
  for (std::size_t i = 0; i < kOpcodeCount; ++i) {
    timing[std::string(Mnemonic(static_cast<Opcode>(i)))] = limits.timing.latency[i];
  }
  j["timing"] = timing;
  return j;
}

MachineLimits MachineLimitsFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("limits must be an object");
  MachineLimits limits;
  try {
    limits.max_cycles = j.value("max_cycles", limits.max_cycles);
    limits.memory_words = j.value("memory_words", limits.memory_words);
    limits.hang_multiplier = j.value("hang_multiplier", limits.hang_multiplier);
    if (j.contains("timing")) limits.timing = TimingFromJson(j.at("timing"));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad limits: ") + e.what());
  }
  return limits;
}

ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kConfigKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  ExperimentConfig c;
  try {
    for (const auto& b : j.at("benchmarks")) c.benchmarks.push_back(Resolve(base_dir, b.get<std::string>()));
    if (j.contains("golden_dir")) c.golden_dir = Resolve(base_dir, j.at("golden_dir").get<std::string>());
    if (j.contains("schemes")) {
      c.schemes.clear();
      for (const auto& s : j.at("schemes")) c.schemes.push_back(SchemeConfigFromJson(s));
    }
    c.n_faults = j.value("n_faults", c.n_faults);
    c.seed = j.value("seed", c.seed);
    c.kind_mix = j.value("kind_mix", c.kind_mix);
    c.registers = j.value("registers", c.registers);
    if (j.contains("limits")) c.limits = MachineLimitsFromJson(j.at("limits"));
    if (j.contains("injection")) {
      const auto& inj = j.at("injection");
      c.injection.mean_fraction = inj.value("mean_fraction", c.injection.mean_fraction);
      c.injection.sd_fraction = inj.value("sd_fraction", c.injection.sd_fraction);
    }
    if (j.contains("power")) c.power = PowerParamsFromJson(j.at("power"));
    if (j.contains("slack_capacities")) c.slack_capacities = j.at("slack_capacities").get<std::vector<unsigned>>();
    c.workers = j.value("workers", c.workers);
    if (j.contains("output_dir")) c.output_dir = Resolve(base_dir, j.at("output_dir").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  c.Validate();
  return c;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return ExperimentConfigFromJson(j, path.parent_path());
}

nlohmann::ordered_json ToJson(const ExperimentConfig& config) {
  nlohmann::ordered_json j;
  j["benchmarks"] = nlohmann::ordered_json::array();
  for (const auto& b : config.benchmarks) j["benchmarks"].push_back(b.stem().string());
  j["schemes"] = nlohmann::ordered_json::array();
  for (const auto& s : config.schemes) j["schemes"].push_back(ToJson(s));
  j["n_faults"] = config.n_faults;
  j["seed"] = config.seed;
  j["kind_mix"] = config.kind_mix;
  j["registers"] = config.registers;
  j["limits"] = ToJson(config.limits);
  j["injection"] = {{"mean_fraction", config.injection.mean_fraction},
                    {"sd_fraction", config.injection.sd_fraction}};
  j["power"] = ToJson(config.power);
  j["slack_capacities"] = config.slack_capacities;
  return j;
}

void ApplyEnvironmentOverrides(ExperimentConfig& config) {
  auto parse = [](const char* name, const char* text) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(text, &used, 0);
      if (used != std::string(text).size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(std::string(name) + " is not an unsigned integer: '" + text + "'");
    }
  };
  if (const char* s = std::getenv("FTSIM_SEED")) config.seed = parse("FTSIM_SEED", s);
  if (const char* w = std::getenv("FTSIM_WORKERS")) {
    config.workers = static_cast<unsigned>(parse("FTSIM_WORKERS", w));
  }
}

CampaignResult RunCampaign(const ExperimentConfig& config, const ProgressFn& progress) {
  config.Validate();
  const unsigned workers = EffectiveWorkers(config.workers);

  std::vector<Program> programs;
  for (const auto& path : config.benchmarks) {
    try {
      programs.push_back(AssembleFile(path, config.registers));
    } catch (const std::exception& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
  }

  CampaignResult result;
  result.config = config;
  result.benchmarks.resize(programs.size());
  const std::size_t n_schemes = config.schemes.size();

  // Fault-free runs: golden, every scheme, the slack experiment.
  ParallelFor(programs.size(), workers, [&](std::size_t b) {
    const Program& program = programs[b];
    BenchmarkCampaign& bench = result.benchmarks[b];
    bench.name = program.name;
    bench.baseline = RunUnprotected(program, config.limits);
    if (bench.baseline.status != SchemeStatus::kHalted) {
      throw GoldenRunError(program.name + ": golden run ended " + std::string(ToString(bench.baseline.status)));
    }
    if (!config.golden_dir.empty()) {
      const auto expected = ReadBytes(config.golden_dir / (program.name + ".bin"));
      if (OutputBytes(bench.baseline.output) != expected) {
        throw GoldenRunError(program.name + ": output differs from golden fixture");
      }
    }
    PlanRequest request;
    request.n = config.n_faults;
    request.seed = DeriveSeed(config.seed, b);
    request.golden_cycles = bench.baseline.cycles;
    request.kind_mix = config.kind_mix;
    request.registers = config.registers;
    request.timing = config.injection;
    bench.plan = PlanCampaign(request);
    bench.plan.benchmark = program.name;
    bench.plan.scheme_matrix = config.schemes;

    for (const auto& scheme : config.schemes) {
      SchemeCampaign sc;
      sc.config = scheme;
      sc.fault_free = RunScheme(program, config.limits, scheme);
      sc.outcomes.resize(config.n_faults);
      bench.schemes.push_back(std::move(sc));
    }
    for (auto capacity : config.slack_capacities) {
      const auto run = RunRsmt(program, config.limits, {capacity, 1});
      if (run.status != SchemeStatus::kHalted || run.slack.empty()) {
        throw GoldenRunError(program.name + ": fault-free R-SMT run failed at capacity " + std::to_string(capacity));
      }
      bench.slack_sweep.push_back({capacity, run.cycles, MeasureSlack(run.slack)});
    }
  });

  // Injection runs, one job per (benchmark, scheme, fault).
  const std::uint64_t per_bench = n_schemes * config.n_faults;
  const std::uint64_t total = programs.size() * per_bench;
  std::atomic<std::uint64_t> done{0};
  std::mutex progress_mu;
  ParallelFor(total, workers, [&](std::size_t job) {
    const std::size_t b = job / per_bench;
    const std::size_t s = (job % per_bench) / config.n_faults;
    const std::size_t f = job % config.n_faults;
    BenchmarkCampaign& bench = result.benchmarks[b];
    SchemeCampaign& sc = bench.schemes[s];
    const FaultSpec& fault = bench.plan.faults[f];

    MachineLimits limits = config.limits;
    const auto budget = static_cast<std::uint64_t>(
        std::floor(config.limits.hang_multiplier * static_cast<double>(sc.fault_free.cycles)));
    limits.max_cycles = std::min(limits.max_cycles, budget + 1);
    const auto run = RunScheme(programs[b], limits, sc.config, fault);
    sc.outcomes[f] = Classify({sc.fault_free.cycles, bench.baseline.output}, run, fault,
                              config.limits.hang_multiplier);

    const auto n = done.fetch_add(1) + 1;
    if (progress) {
      std::lock_guard lock(progress_mu);
      progress(n, total);
    }
  });

  for (const auto& bench : result.benchmarks) {
    auto violate = [&](const std::string& scheme, const std::string& what) {
      result.violations.push_back(bench.name + "/" + scheme + ": " + what);
    };
    for (const auto& sc : bench.schemes) {
      const auto label = sc.config.Label();
      const auto& ff = sc.fault_free;
      if (ff.status != SchemeStatus::kHalted || !ff.detections.empty() || ff.output != bench.baseline.output) {
        violate(label, "fault-free run did not reproduce the golden output");
      }
      if (ff.cycles < bench.baseline.cycles) violate(label, "fault-free run faster than unprotected");
      if (sc.config.kind == SchemeKind::kDmr && ff.cycles != bench.baseline.cycles) {
        violate(label, "lockstep run slower than unprotected");
      }
      if (sc.config.kind == SchemeKind::kRsmt) {
        for (const auto& sample : ff.slack) {
          if (sample.instructions > sc.config.rsmt.buffer_capacity) {
            violate(label, "slack exceeds buffer capacity");
            break;
          }
        }
      }
      if (sc.config.kind == SchemeKind::kDmr || sc.config.kind == SchemeKind::kRsmt) {
        const auto sdc = std::count_if(sc.outcomes.begin(), sc.outcomes.end(),
                                       [](const Outcome& o) { return o.cls == OutcomeClass::kSdc; });
        if (sdc > 0) violate(label, std::to_string(sdc) + " silent data corruptions");
      }
    }
    for (const auto& point : bench.slack_sweep) {
      if (point.slack.instructions.max > point.capacity) {
        violate("rsmt-b" + std::to_string(point.capacity), "slack exceeds buffer capacity");
      }
    }
  }
  return result;
}

std::string_view ToString(SweepKnob knob) {
  return knob == SweepKnob::kRsmtBuffer ? "rsmt_buffer" : "pardet_checkers";
}

std::optional<SweepKnob> ParseSweepKnob(std::string_view text) {
  if (text == "rsmt_buffer") return SweepKnob::kRsmtBuffer;
  if (text == "pardet_checkers") return SweepKnob::kPardetCheckers;
  return std::nullopt;
}

ExperimentConfig ExpandSweep(const ExperimentConfig& config, SweepKnob knob, std::span<const unsigned> values) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  const SchemeKind target = knob == SweepKnob::kRsmtBuffer ? SchemeKind::kRsmt : SchemeKind::kParDet;
  ExperimentConfig out = config;
  out.schemes.clear();
  bool matched = false;
  for (const auto& s : config.schemes) {
    if (s.kind != target) {
      out.schemes.push_back(s);
      continue;
    }
    if (matched) continue;
    matched = true;
    for (auto v : values) {
      SchemeConfig copy = s;
      if (knob == SweepKnob::kRsmtBuffer) {
        copy.rsmt.buffer_capacity = v;
      } else {
        copy.pardet.n_checkers = v;
      }
      out.schemes.push_back(copy);
    }
  }
  if (!matched) throw ConfigError("sweep knob " + std::string(ToString(knob)) + " matches no configured scheme");
  out.Validate();
  return out;
}

}  // namespace ftsim
