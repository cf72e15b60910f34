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

// Acceptance checks for the default experiment. Prints one PASS/FAIL line
// per criterion and exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ftsim/assembler.hpp"
#include "ftsim/cost_model.hpp"
#include "ftsim/experiment.hpp"
#include "ftsim/fault.hpp"
#include "ftsim/report.hpp"
#include "oracle/micro_programs.hpp"
#include "oracle/sweep.hpp"

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void Expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (notes.size() < 12) notes.push_back(what);
  }
};

std::string Fmt(double v, int digits = 4) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

int failures = 0;

void Report(int id, const std::string& title, const Check& c, const std::string& info = {}) {
  std::cout << "criterion " << id << ": " << (c.ok ? "PASS" : "FAIL") << "  " << title;
  if (!info.empty()) std::cout << "  [" << info << "]";
  std::cout << "\n";
  for (const auto& n : c.notes) std::cout << "    " << n << "\n";
  if (!c.ok) ++failures;
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Runs the default campaign into `dir` with the given worker count.
void RunDefaultCampaign(const fs::path& config_path, const fs::path& dir, unsigned workers) {
  fs::remove_all(dir);
#ifdef FTSIM_CLI
  const std::string cmd = std::string("\"") + FTSIM_CLI + "\" campaign --quiet --config \"" + config_path.string() +
                          "\" --workers " + std::to_string(workers) + " --out \"" + dir.string() + "\" > \"" +
                          (dir.string() + ".log") + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc != 0) throw std::runtime_error("campaign command failed (" + std::to_string(rc) + "): " + cmd);
#else
  ftsim::ExperimentConfig config = ftsim::LoadExperimentConfig(config_path);
  config.workers = workers;
  ftsim::WriteReport(ftsim::BuildReport(ftsim::RunCampaign(config)), dir);
#endif
}

std::uint64_t Count(const Json& breakdown, const char* cls) {
  return breakdown.at("counts").at(cls).get<std::uint64_t>();
}

// Pools per-benchmark counts of one scheme into campaign-wide fractions.
struct Pooled {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t n = 0;
  double fraction(const std::string& cls) const {
    const auto it = counts.find(cls);
    return n == 0 || it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(n);
  }
};

Pooled Pool(const Json& report, std::size_t scheme, const char* kind) {
  Pooled p;
  for (const auto& b : report.at("benchmarks")) {
    const auto& e = b.at("schemes")[scheme].at("efficiency").at(kind);
    if (e.is_null()) continue;
    p.n += e.at("n").get<std::uint64_t>();
    for (const auto& [cls, count] : e.at("counts").items()) p.counts[cls] += count.get<std::uint64_t>();
  }
  return p;
}

std::size_t SchemeIndex(const Json& report, const std::string& kind) {
  const auto& schemes = report.at("benchmarks")[0].at("schemes");
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    if (schemes[i].at("config").at("scheme") == kind) return i;
  }
  throw std::runtime_error("scheme " + kind + " missing from report");
}

}  // namespace

int main() {
  const fs::path source = FTSIM_SOURCE_DIR;
  const fs::path config_path = source / "configs" / "default.json";
  const fs::path work = fs::temp_directory_path() / "ftsim_acceptance";
  fs::create_directories(work);

  Json report;
  double campaign_seconds = 0.0;
  try {
    auto t0 = Clock::now();
    RunDefaultCampaign(config_path, work / "w1", 1);
    campaign_seconds = Seconds(t0);
    RunDefaultCampaign(config_path, work / "w8", 8);
    report = ftsim::LoadReport(work / "w1" / "report.json");
  } catch (const std::exception& e) {
    std::cout << "default campaign failed: " << e.what() << "\n";
    return 1;
  }

  const std::size_t dmr = SchemeIndex(report, "dmr");
  const std::size_t rsmt = SchemeIndex(report, "rsmt");
  const std::size_t pardet = SchemeIndex(report, "pardet");
  const auto& benches = report.at("benchmarks");
  const unsigned capacity = benches[0].at("schemes")[rsmt].at("config").at("buffer_capacity").get<unsigned>();

  {
    Check c;
    c.Expect(benches.size() == 6, "expected 6 benchmarks, got " + std::to_string(benches.size()));
    c.Expect(report.at("config").at("n_faults") == 1000, "expected 1000 faults per benchmark");
    for (const auto& b : benches) {
      for (auto s : {dmr, rsmt}) {
        const auto& sj = b.at("schemes")[s];
        const auto sdc = Count(sj.at("efficiency").at("all"), "sdc");
        c.Expect(sdc == 0, b.at("name").get<std::string>() + " " + sj.at("label").get<std::string>() + ": " +
                               std::to_string(sdc) + " SDC outcomes");
      }
    }
    c.Expect(campaign_seconds < 600.0, "campaign took " + Fmt(campaign_seconds, 1) + " s");
    Report(1, "zero SDC for DMR and R-SMT on the default campaign", c,
           "campaign " + Fmt(campaign_seconds, 1) + " s at workers=1");
  }

  {
    Check c;
    std::string info;
    for (const auto& b : benches) {
      const std::string name = b.at("name");
      auto mean = [&](std::size_t s) {
        const auto& l = b.at("schemes")[s].at("latency").at("all");
        return l.is_null() ? NAN : l.at("mean").get<double>();
      };
      const double d = mean(dmr), r = mean(rsmt), p = mean(pardet);
      info += name + " " + Fmt(d, 1) + "/" + Fmt(r, 1) + "/" + Fmt(p, 1) + "; ";
      c.Expect(d <= r, name + ": DMR mean " + Fmt(d, 2) + " > R-SMT mean " + Fmt(r, 2));
      c.Expect(r < p, name + ": R-SMT mean " + Fmt(r, 2) + " >= ParDet mean " + Fmt(p, 2));
      c.Expect(p / d >= 5.0, name + ": ParDet/DMR ratio " + Fmt(p / d, 2) + " < 5");
      c.Expect(r - d <= 50.0, name + ": R-SMT exceeds DMR by " + Fmt(r - d, 1) + " cycles at capacity " +
                                  std::to_string(capacity) + " (bound 50)");
    }
    Report(2, "mean detection latency DMR <= R-SMT < ParDet, ratio >= 5, gap <= 50", c,
           "dmr/rsmt/pardet: " + info);
  }

  {
    Check c;
    const std::vector<unsigned> want = {1, 2, 5, 10, 50};
    for (const auto& b : benches) {
      const std::string name = b.at("name");
      std::vector<unsigned> caps;
      double prev_median = -1.0;
      for (const auto& p : b.at("slack_sweep")) {
        const unsigned cap = p.at("capacity");
        caps.push_back(cap);
        const double max = p.at("instructions").at("max");
        const double median = p.at("instructions").at("median");
        c.Expect(max <= cap, name + " cap " + std::to_string(cap) + ": max slack " + Fmt(max, 0));
        c.Expect(median >= prev_median, name + " cap " + std::to_string(cap) + ": median slack decreased");
        prev_median = median;
      }
      c.Expect(caps == want, name + ": slack sweep capacities differ from {1,2,5,10,50}");
    }
    Report(3, "slack bounded by capacity, median non-decreasing in capacity", c);
  }

  {
    Check c;
    std::string info;
    for (const auto& b : benches) {
      const std::string name = b.at("name");
      auto slow = [&](std::size_t s) { return b.at("schemes")[s].at("fault_free").at("slowdown").get<double>(); };
      const double d = slow(dmr), r = slow(rsmt), p = slow(pardet);
      info += name + " " + Fmt(r, 3) + "/" + Fmt(p, 3) + "; ";
      c.Expect(d == 1.0, name + ": DMR slowdown " + Fmt(d, 6));
      c.Expect(r > p, name + ": R-SMT slowdown " + Fmt(r) + " <= ParDet " + Fmt(p));
      c.Expect(p >= 1.0, name + ": ParDet slowdown " + Fmt(p) + " < 1");
      double prev = INFINITY;
      for (const auto& pt : b.at("slack_sweep")) {
        const double s = pt.at("slowdown");
        c.Expect(s <= prev, name + ": R-SMT slowdown rises at capacity " + pt.at("capacity").dump());
        prev = s;
      }
    }
    Report(4, "slowdown DMR = 1, R-SMT > ParDet >= 1, R-SMT non-increasing in capacity", c,
           "rsmt/pardet: " + info);
  }

  {
    Check c;
    std::string info;
    for (auto s : {dmr, rsmt, pardet}) {
      const std::string label = benches[0].at("schemes")[s].at("label");
      const Pooled t = Pool(report, s, "transient");
      const Pooled p = Pool(report, s, "permanent");
      const double t_ch = t.fraction("crash") + t.fraction("hang");
      const double p_ch = p.fraction("crash") + p.fraction("hang");
      info += label + " crash+hang " + Fmt(t_ch) + "->" + Fmt(p_ch) + " det " + Fmt(t.fraction("detected")) + "->" +
              Fmt(p.fraction("detected")) + "; ";
      c.Expect(p_ch >= t_ch, label + ": permanent crash+hang " + Fmt(p_ch) + " < transient " + Fmt(t_ch));
      if (s != pardet) {
        c.Expect(p.fraction("detected") >= t.fraction("detected"),
                 label + ": permanent detection " + Fmt(p.fraction("detected")) + " < transient " +
                     Fmt(t.fraction("detected")));
      }
    }
    Report(5, "permanent faults crash/hang at least as often; DMR and R-SMT detect them at least as often", c,
           info);
  }

  {
    Check c;
    const Pooled td = Pool(report, dmr, "transient"), tr = Pool(report, rsmt, "transient"),
                 tp = Pool(report, pardet, "transient");
    const Pooled ad = Pool(report, dmr, "all"), ar = Pool(report, rsmt, "all"), ap = Pool(report, pardet, "all");
    auto fail = [](const Pooled& p) { return p.fraction("sdc") + p.fraction("crash") + p.fraction("hang"); };
    const double dd = td.fraction("detected"), dr = tr.fraction("detected"), dp = tp.fraction("detected");
    c.Expect(dp >= dr, "transient detection ParDet " + Fmt(dp) + " < R-SMT " + Fmt(dr));
    c.Expect(dr >= dd, "transient detection R-SMT " + Fmt(dr) + " < DMR " + Fmt(dd));
    c.Expect(fail(ap) >= fail(ar), "failures ParDet " + Fmt(fail(ap)) + " < R-SMT " + Fmt(fail(ar)));
    c.Expect(fail(ar) >= fail(ad), "failures R-SMT " + Fmt(fail(ar)) + " < DMR " + Fmt(fail(ad)));
    Report(6, "transient detection and failure fractions ParDet >= R-SMT >= DMR", c,
           "detection " + Fmt(dp) + "/" + Fmt(dr) + "/" + Fmt(dd) + ", failures " + Fmt(fail(ap)) + "/" +
               Fmt(fail(ar)) + "/" + Fmt(fail(ad)) + " (pardet/rsmt/dmr)");
  }

  {
    Check c;
    auto exact4 = [](double v, double want) { return std::round(v * 1e4) == std::round(want * 1e4); };
    const double d = ftsim::AreaOverhead(ftsim::SchemeConfig::Dmr());
    const double r = ftsim::AreaOverhead(ftsim::SchemeConfig::Rsmt(10));
    const double p = ftsim::AreaOverhead(ftsim::SchemeConfig::ParDet());
    c.Expect(exact4(d, 1.00), "DMR area " + Fmt(d, 6));
    c.Expect(exact4(r, 0.0604), "R-SMT area " + Fmt(r, 6));
    c.Expect(exact4(p, 0.24), "ParDet area " + Fmt(p, 6));
    for (const auto& row : report.at("summary")) {
      const std::string scheme = row.at("config").at("scheme");
      const double want = scheme == "dmr" ? 1.0 : scheme == "rsmt" ? 0.0604 : 0.24;
      c.Expect(exact4(row.at("area_overhead").get<double>(), want), "report area for " + scheme);
    }
    Report(7, "area overheads 1.00 / 0.0604 / 0.24", c, Fmt(d) + "/" + Fmt(r) + "/" + Fmt(p));
  }

  {
    Check c;
    const double m = ftsim::MarginOfError(1000, 0.95, 0.5);
    c.Expect(m >= 0.030 && m <= 0.032, "margin " + Fmt(m, 6) + " outside [0.030, 0.032]");
    c.Expect(m <= 0.04, "margin " + Fmt(m, 6) + " above 0.04");
    c.Expect(std::abs(report.at("margin").get<double>() - m) < 1e-12, "report margin differs");
    Report(8, "margin of error for 1000 faults at 95%", c, Fmt(m, 5));
  }

  {
    Check c;
    const auto t0 = Clock::now();
    std::vector<unsigned> regs(32);
    for (unsigned r = 0; r < 32; ++r) regs[r] = r;
    std::uint64_t runs = 0;
    for (const auto& micro : refsim::kMicroPrograms) {
      const ftsim::Program p = ftsim::Assemble(micro.source, std::string(micro.name));
      const refsim::SweepResult s = refsim::SweepAgreement(p, regs);
      runs += s.runs;
      c.Expect(s.agreements == s.runs, std::string(micro.name) + ": " + std::to_string(s.runs - s.agreements) +
                                           " of " + std::to_string(s.runs) + " disagree");
      for (const auto& m : s.mismatches) c.Expect(false, m);
    }
    const double secs = Seconds(t0);
    c.Expect(secs < 60.0, "sweep took " + Fmt(secs, 1) + " s");
    Report(9, "exhaustive micro-program sweep agrees with the reference interpreter", c,
           std::to_string(runs) + " injections in " + Fmt(secs, 1) + " s");
  }

  {
    Check c;
    std::set<std::string> a, b;
    for (const auto& e : fs::directory_iterator(work / "w1")) a.insert(e.path().filename().string());
    for (const auto& e : fs::directory_iterator(work / "w8")) b.insert(e.path().filename().string());
    c.Expect(a == b, "workers=1 and workers=8 wrote different file sets");
    c.Expect(a.contains("report.json"), "report.json missing");
    for (const auto& f : a) {
      if (!b.contains(f)) continue;
      c.Expect(ReadFile(work / "w1" / f) == ReadFile(work / "w8" / f), f + " differs between worker counts");
    }
    Report(10, "workers=1 and workers=8 produce byte-identical reports", c, std::to_string(a.size()) + " files");
  }

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
