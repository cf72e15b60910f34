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


#include "ftsim/report.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ftsim/cost_model.hpp"
#include "ftsim/fault.hpp"
#include "ftsim/metrics.hpp"
#include "ftsim/stats.hpp"

namespace ftsim {
namespace {

using Json = nlohmann::ordered_json;

Json ToJson(const Distribution& d) {
  Json j;
  j["count"] = d.count;
  j["min"] = d.min;
  j["mean"] = d.mean;
  j["median"] = d.median;
  j["max"] = d.max;
  return j;
}

Json HistogramJson(const std::map<std::uint64_t, std::uint64_t>& h) {
  Json j = Json::array();
  for (const auto& [k, v] : h) j.push_back({k, v});
  return j;
}

std::vector<Outcome> OfKind(const std::vector<Outcome>& all, int permanent) {
  std::vector<Outcome> out;
  for (const auto& o : all) {
    if (permanent < 0 || IsPermanent(o.kind) == (permanent == 1)) out.push_back(o);
  }
  return out;
}

Json BreakdownJson(const std::vector<Outcome>& outcomes) {
  if (outcomes.empty()) return nullptr;
  const auto b = Aggregate(outcomes);
  Json j;
  j["n"] = b.n;
  j["margin"] = b.margin;
  Json counts;
  Json fractions;
  for (auto c : kAllOutcomeClasses) {
    counts[std::string(ToString(c))] = b.count(c);
    fractions[std::string(ToString(c))] = b.fraction(c);
  }
  j["counts"] = counts;
  j["fractions"] = fractions;
  return j;
}

Json LatencyJson(const std::vector<Outcome>& outcomes) {
  bool any = false;
  std::vector<std::uint64_t> manifest;
  for (const auto& o : outcomes) {
    if (o.cls != OutcomeClass::kDetected) continue;
    any = true;
    if (o.manifest_latency) manifest.push_back(*o.manifest_latency);
  }
  if (!any) return nullptr;
  const auto stats = ComputeLatencyStats(outcomes);
  Json j = ToJson(stats.summary);
  j["manifest_mean"] = manifest.empty() ? Json(nullptr) : Json(Summarize(manifest).mean);
  j["histogram"] = HistogramJson(stats.histogram);
  return j;
}

Json OptionalNumber(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

Json SchemeJson(const BenchmarkCampaign& bench, const SchemeCampaign& sc, const PowerParams& power) {
  const auto& ff = sc.fault_free;
  Json j;
  j["label"] = sc.config.Label();
  j["config"] = ToJson(sc.config);

  Json fault_free;
  fault_free["status"] = std::string(ToString(ff.status));
  fault_free["cycles"] = ff.cycles;
  fault_free["commits"] = ff.commits;
  fault_free["ipc"] = ff.ipc();
  fault_free["slowdown"] = static_cast<double>(ff.cycles) / static_cast<double>(bench.baseline.cycles);
  fault_free["verified_cycle"] = ff.verified_cycle;
  j["fault_free"] = fault_free;

  j["area_overhead"] = AreaOverhead(sc.config);
  j["power_overhead"] = PowerOverhead(ff, bench.baseline, power);
  j["energy_overhead"] = EnergyOverhead(ff.activity, bench.baseline.activity, power);

  j["efficiency"] = {{"all", BreakdownJson(sc.outcomes)},
                     {"transient", BreakdownJson(OfKind(sc.outcomes, 0))},
                     {"permanent", BreakdownJson(OfKind(sc.outcomes, 1))}};
  j["latency"] = {{"all", LatencyJson(sc.outcomes)},
                  {"transient", LatencyJson(OfKind(sc.outcomes, 0))},
                  {"permanent", LatencyJson(OfKind(sc.outcomes, 1))}};

  if (sc.config.kind == SchemeKind::kRsmt && !ff.slack.empty()) {
    const auto slack = MeasureSlack(ff.slack);
    j["slack"] = {{"instructions", ToJson(slack.instructions)},
                  {"cycles", ToJson(slack.cycles)},
                  {"histogram", HistogramJson(slack.histogram)}};
  }
  if (sc.config.kind == SchemeKind::kParDet) {
    const auto& c = ff.checkers;
    j["checkers"] = {{"segments", c.segments},
                     {"checkpoint_stall_cycles", c.checkpoint_stall_cycles},
                     {"busy_wait_cycles", c.busy_wait_cycles},
                     {"busy_cycles", c.busy_cycles},
                     {"max_concurrent", c.max_concurrent}};
  }

  Json outcomes = Json::array();
  for (const auto& o : sc.outcomes) {
    outcomes.push_back({std::string(ToString(o.cls)), OptionalNumber(o.latency), OptionalNumber(o.manifest_latency)});
  }
  j["outcomes"] = outcomes;
  return j;
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Per-scheme averages over benchmarks, in configuration order.
Json Summary(const Json& benchmarks) {
  Json summary = Json::array();
  if (benchmarks.empty()) return summary;
  const auto& first = benchmarks.front().at("schemes");
  for (std::size_t s = 0; s < first.size(); ++s) {
    Json row;
    row["label"] = first[s].at("label");
    row["config"] = first[s].at("config");
    row["area_overhead"] = first[s].at("area_overhead");
    std::vector<double> power, energy, slowdown, ipc, latency;
    std::map<std::string, std::map<std::string, std::vector<double>>> fractions;
    std::map<std::string, std::uint64_t> totals;
    for (const auto& bench : benchmarks) {
      const auto& sj = bench.at("schemes")[s];
      power.push_back(sj.at("power_overhead").get<double>());
      energy.push_back(sj.at("energy_overhead").get<double>());
      slowdown.push_back(sj.at("fault_free").at("slowdown").get<double>());
      ipc.push_back(sj.at("fault_free").at("ipc").get<double>());
      if (!sj.at("latency").at("all").is_null()) latency.push_back(sj.at("latency").at("all").at("mean").get<double>());
      for (const char* kind : {"all", "transient", "permanent"}) {
        const auto& b = sj.at("efficiency").at(kind);
        if (b.is_null()) continue;
        totals[kind] += b.at("n").get<std::uint64_t>();
        for (auto c : kAllOutcomeClasses) {
          const std::string name(ToString(c));
          fractions[kind][name].push_back(b.at("fractions").at(name).get<double>());
        }
      }
    }
    row["power_overhead"] = Mean(power);
    row["energy_overhead"] = Mean(energy);
    row["slowdown"] = Mean(slowdown);
    row["ipc"] = Mean(ipc);
    row["mean_latency"] = latency.empty() ? Json(nullptr) : Json(Mean(latency));
    Json efficiency;
    for (const char* kind : {"all", "transient", "permanent"}) {
      if (!totals.contains(kind)) {
        efficiency[kind] = nullptr;
        continue;
      }
      Json e;
      e["n"] = totals[kind];
      e["margin"] = MarginOfError(totals[kind]);
      Json f;
      for (auto c : kAllOutcomeClasses) {
        const std::string name(ToString(c));
        f[name] = Mean(fractions[kind][name]);
      }
      e["fractions"] = f;
      efficiency[kind] = e;
    }
    row["efficiency"] = efficiency;
    summary.push_back(row);
  }
  return summary;
}

std::string Fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string Num(const Json& v, int digits = 6) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return Fixed(v.get<double>(), digits);
  return v.dump();
}

std::string Str(const Json& v) { return v.get<std::string>(); }

double Failures(const Json& fractions) {
  return fractions.at("sdc").get<double>() + fractions.at("crash").get<double>() + fractions.at("hang").get<double>();
}

std::string EfficiencyCsv(const Json& report, const char* kind) {
  std::ostringstream out;
  out << "benchmark,scheme,n";
  for (auto c : kAllOutcomeClasses) out << ',' << ToString(c);
  out << ",margin\n";
  auto row = [&](const std::string& bench, const Json& label, const Json& b) {
    if (b.is_null()) return;
    out << bench << ',' << Str(label) << ',' << b.at("n").dump();
    for (auto c : kAllOutcomeClasses) out << ',' << Num(b.at("fractions").at(std::string(ToString(c))));
    out << ',' << Num(b.at("margin")) << '\n';
  };
  for (const auto& bench : report.at("benchmarks")) {
    for (const auto& s : bench.at("schemes")) row(Str(bench.at("name")), s.at("label"), s.at("efficiency").at(kind));
  }
  for (const auto& s : report.at("summary")) row("mean", s.at("label"), s.at("efficiency").at(kind));
  return out.str();
}

std::string LatencyHistCsv(const Json& report) {
  std::ostringstream out;
  out << "benchmark,scheme,kind,bin_lo,bin_hi,count\n";
  for (const auto& bench : report.at("benchmarks")) {
    for (const auto& s : bench.at("schemes")) {
      for (const char* kind : {"all", "transient", "permanent"}) {
        const auto& l = s.at("latency").at(kind);
        if (l.is_null()) continue;
        for (const auto& bin : l.at("histogram")) {
          const auto lo = bin[0].get<std::uint64_t>();
          const auto hi = lo == 0 ? 0 : 2 * lo - 1;
          out << Str(bench.at("name")) << ',' << Str(s.at("label")) << ',' << kind << ',' << lo << ',' << hi << ','
              << bin[1].dump() << '\n';
        }
      }
    }
  }
  return out.str();
}

std::string LatencySummaryCsv(const Json& report) {
  std::ostringstream out;
  out << "benchmark,scheme,kind,count,min,mean,median,max,manifest_mean\n";
  for (const auto& bench : report.at("benchmarks")) {
    for (const auto& s : bench.at("schemes")) {
      for (const char* kind : {"all", "transient", "permanent"}) {
        const auto& l = s.at("latency").at(kind);
        if (l.is_null()) continue;
        out << Str(bench.at("name")) << ',' << Str(s.at("label")) << ',' << kind << ',' << l.at("count").dump() << ','
            << Num(l.at("min"), 1) << ',' << Num(l.at("mean"), 3) << ',' << Num(l.at("median"), 1) << ','
            << Num(l.at("max"), 1) << ',' << Num(l.at("manifest_mean"), 3) << '\n';
      }
    }
  }
  return out.str();
}

std::string SlackHistCsv(const Json& report) {
  std::ostringstream out;
  out << "benchmark,capacity,slack,count\n";
  for (const auto& bench : report.at("benchmarks")) {
    for (const auto& p : bench.at("slack_sweep")) {
      for (const auto& bin : p.at("histogram")) {
        out << Str(bench.at("name")) << ',' << p.at("capacity").dump() << ',' << bin[0].dump() << ','
            << bin[1].dump() << '\n';
      }
    }
  }
  return out.str();
}

std::string IpcCsv(const Json& report) {
  std::ostringstream out;
  out << "benchmark,scheme,cycles,commits,ipc,slowdown\n";
  for (const auto& bench : report.at("benchmarks")) {
    const auto& g = bench.at("golden");
    out << Str(bench.at("name")) << ",none," << g.at("cycles").dump() << ',' << g.at("commits").dump() << ','
        << Num(g.at("ipc")) << ',' << Fixed(1.0) << '\n';
    for (const auto& s : bench.at("schemes")) {
      const auto& f = s.at("fault_free");
      out << Str(bench.at("name")) << ',' << Str(s.at("label")) << ',' << f.at("cycles").dump() << ','
          << f.at("commits").dump() << ',' << Num(f.at("ipc")) << ',' << Num(f.at("slowdown")) << '\n';
    }
  }
  return out.str();
}

std::string AreaCsv(const Json& report) {
  std::ostringstream out;
  out << "scheme,area_overhead\n";
  for (const auto& s : report.at("summary")) out << Str(s.at("label")) << ',' << Num(s.at("area_overhead")) << '\n';
  return out.str();
}

std::string PowerCsv(const Json& report) {
  std::ostringstream out;
  out << "benchmark,scheme,power_overhead,energy_overhead\n";
  for (const auto& bench : report.at("benchmarks")) {
    for (const auto& s : bench.at("schemes")) {
      out << Str(bench.at("name")) << ',' << Str(s.at("label")) << ',' << Num(s.at("power_overhead")) << ','
          << Num(s.at("energy_overhead")) << '\n';
    }
  }
  for (const auto& s : report.at("summary")) {
    out << "mean," << Str(s.at("label")) << ',' << Num(s.at("power_overhead")) << ','
        << Num(s.at("energy_overhead")) << '\n';
  }
  return out.str();
}

std::string OutcomesCsv(const Json& report) {
  std::ostringstream out;
  out << "benchmark,scheme,fault_id,kind,reg,bit,inject_cycle,class,latency,manifest_latency\n";
  for (const auto& bench : report.at("benchmarks")) {
    const auto& faults = bench.at("plan").at("faults");
    for (const auto& s : bench.at("schemes")) {
      const auto& outcomes = s.at("outcomes");
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& f = faults.at(i);
        const auto& o = outcomes[i];
        out << Str(bench.at("name")) << ',' << Str(s.at("label")) << ',' << f.at("id").dump() << ','
            << Str(f.at("kind")) << ',' << f.at("reg").dump() << ',' << f.at("bit").dump() << ','
            << f.at("inject_cycle").dump() << ',' << Str(o[0]) << ',' << Num(o[1]) << ',' << Num(o[2]) << '\n';
      }
    }
  }
  return out.str();
}

std::string Percent(const Json& v) { return v.is_null() ? "n/a" : Fixed(100.0 * v.get<double>(), 1) + "%"; }

std::string TradeoffsMarkdown(const Json& report) {
  std::ostringstream out;
  out << "# Scheme tradeoffs\n\n";
  out << "Averages over " << report.at("benchmarks").size() << " benchmarks, "
      << report.at("config").at("n_faults").dump() << " injections per benchmark and scheme (95% margin "
      << Percent(report.at("margin")) << ").\n\n";
  out << "| scheme | area overhead | power overhead | slowdown | detected (transient) | detected (permanent) "
         "| failures (transient) | failures (permanent) | mean latency (cycles) |\n";
  out << "|---|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& s : report.at("summary")) {
    const auto& t = s.at("efficiency").at("transient");
    const auto& p = s.at("efficiency").at("permanent");
    out << "| " << Str(s.at("label")) << " | " << Percent(s.at("area_overhead")) << " | "
        << Percent(s.at("power_overhead")) << " | " << Fixed(s.at("slowdown").get<double>(), 3) << " | "
        << (t.is_null() ? "n/a" : Percent(t.at("fractions").at("detected"))) << " | "
        << (p.is_null() ? "n/a" : Percent(p.at("fractions").at("detected"))) << " | "
        << (t.is_null() ? "n/a" : Percent(Failures(t.at("fractions")))) << " | "
        << (p.is_null() ? "n/a" : Percent(Failures(p.at("fractions")))) << " | "
        << (s.at("mean_latency").is_null() ? "n/a" : Fixed(s.at("mean_latency").get<double>(), 1)) << " |\n";
  }

  out << "\n## Per benchmark\n\n";
  out << "| benchmark | scheme | slowdown | detected | mean latency (cycles) |\n";
  out << "|---|---|---:|---:|---:|\n";
  for (const auto& bench : report.at("benchmarks")) {
    for (const auto& s : bench.at("schemes")) {
      const auto& all = s.at("efficiency").at("all");
      const auto& lat = s.at("latency").at("all");
      out << "| " << Str(bench.at("name")) << " | " << Str(s.at("label")) << " | "
          << Fixed(s.at("fault_free").at("slowdown").get<double>(), 3) << " | "
          << Percent(all.at("fractions").at("detected")) << " | "
          << (lat.is_null() ? "n/a" : Fixed(lat.at("mean").get<double>(), 1)) << " |\n";
    }
  }

  const auto& violations = report.at("violations");
  if (!violations.empty()) {
    out << "\n## Invariant violations\n\n";
    for (const auto& v : violations) out << "- " << Str(v) << '\n';
  }
  return out.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("error writing " + path.string());
}

}  // namespace

nlohmann::ordered_json BuildReport(const CampaignResult& result) {
  Json report;
  report["format"] = "ftsim-report/1";
  report["config"] = ToJson(result.config);
  report["margin"] = MarginOfError(result.config.n_faults);

  Json benchmarks = Json::array();
  for (const auto& bench : result.benchmarks) {
    Json b;
    b["name"] = bench.name;
    b["golden"] = {{"cycles", bench.baseline.cycles},
                   {"commits", bench.baseline.commits},
                   {"ipc", bench.baseline.ipc()}};
    b["plan"] = ToJson(bench.plan);
    Json schemes = Json::array();
    for (const auto& sc : bench.schemes) schemes.push_back(SchemeJson(bench, sc, result.config.power));
    b["schemes"] = schemes;
    Json sweep = Json::array();
    for (const auto& p : bench.slack_sweep) {
      sweep.push_back({{"capacity", p.capacity},
                       {"cycles", p.cycles},
                       {"slowdown", static_cast<double>(p.cycles) / static_cast<double>(bench.baseline.cycles)},
                       {"instructions", ToJson(p.slack.instructions)},
                       {"slack_cycles", ToJson(p.slack.cycles)},
                       {"histogram", HistogramJson(p.slack.histogram)}});
    }
    b["slack_sweep"] = sweep;
    benchmarks.push_back(b);
  }
  report["summary"] = Summary(benchmarks);
  report["benchmarks"] = benchmarks;
  report["violations"] = result.violations;
  return report;
}

void WriteReport(const nlohmann::ordered_json& report, const std::filesystem::path& dir,
                 const ReportFormats& formats) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  try {
    if (formats.json) WriteFile(dir / "report.json", report.dump(1) + "\n");
    if (formats.csv) {
      WriteFile(dir / "efficiency_transient.csv", EfficiencyCsv(report, "transient"));
      WriteFile(dir / "efficiency_permanent.csv", EfficiencyCsv(report, "permanent"));
      WriteFile(dir / "latency_hist.csv", LatencyHistCsv(report));
      WriteFile(dir / "latency_summary.csv", LatencySummaryCsv(report));
      WriteFile(dir / "slack_hist.csv", SlackHistCsv(report));
      WriteFile(dir / "ipc.csv", IpcCsv(report));
      WriteFile(dir / "area.csv", AreaCsv(report));
      WriteFile(dir / "power.csv", PowerCsv(report));
      WriteFile(dir / "outcomes.csv", OutcomesCsv(report));
    }
    if (formats.markdown) WriteFile(dir / "tradeoffs.md", TradeoffsMarkdown(report));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed report: ") + e.what());
  }
}

std::string SweepCsv(const nlohmann::ordered_json& report, SweepKnob knob) {
  const char* param = knob == SweepKnob::kRsmtBuffer ? "buffer_capacity" : "n_checkers";
  const std::string scheme = knob == SweepKnob::kRsmtBuffer ? "rsmt" : "pardet";
  std::ostringstream out;
  out << ToString(knob)
      << ",scheme,area_overhead,power_overhead,slowdown,detected_transient,detected_permanent,"
         "failures_transient,failures_permanent,mean_latency\n";
  for (const auto& s : report.at("summary")) {
    const auto& config = s.at("config");
    if (Str(config.at("scheme")) != scheme) continue;
    const auto& t = s.at("efficiency").at("transient");
    const auto& p = s.at("efficiency").at("permanent");
    out << config.at(param).dump() << ',' << Str(s.at("label")) << ',' << Num(s.at("area_overhead")) << ','
        << Num(s.at("power_overhead")) << ',' << Num(s.at("slowdown")) << ','
        << (t.is_null() ? "" : Num(t.at("fractions").at("detected"))) << ','
        << (p.is_null() ? "" : Num(p.at("fractions").at("detected"))) << ','
        << (t.is_null() ? "" : Fixed(Failures(t.at("fractions")))) << ','
        << (p.is_null() ? "" : Fixed(Failures(p.at("fractions")))) << ',' << Num(s.at("mean_latency"), 3) << '\n';
  }
  return out.str();
}

std::string FormatSummary(const nlohmann::ordered_json& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %9s %9s %9s %9s %9s %10s\n", "scheme", "det(tr)", "det(perm)", "fail",
                "slowdown", "power", "latency");
  out << line;
  for (const auto& s : report.at("summary")) {
    const auto& all = s.at("efficiency").at("all");
    const auto& t = s.at("efficiency").at("transient");
    const auto& p = s.at("efficiency").at("permanent");
    auto pct = [](const Json& b) {
      return b.is_null() ? std::string("n/a") : Fixed(100.0 * b.at("fractions").at("detected").get<double>(), 1) + "%";
    };
    std::snprintf(line, sizeof line, "%-12s %9s %9s %8s%% %9.3f %8.1f%% %10s\n", Str(s.at("label")).c_str(),
                  pct(t).c_str(), pct(p).c_str(), Fixed(100.0 * Failures(all.at("fractions")), 1).c_str(),
                  s.at("slowdown").get<double>(), 100.0 * s.at("power_overhead").get<double>(),
                  s.at("mean_latency").is_null() ? "n/a" : Fixed(s.at("mean_latency").get<double>(), 1).c_str());
    out << line;
  }
  out << "margin of error (95%, per benchmark and scheme): +/-" << Fixed(100.0 * report.at("margin").get<double>(), 1)
      << "%\n";
  const auto& violations = report.at("violations");
  for (const auto& v : violations) out << "invariant violation: " << Str(v) << '\n';
  return out.str();
}

nlohmann::ordered_json LoadReport(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace ftsim
