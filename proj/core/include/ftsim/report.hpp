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


// Campaign reports: one JSON document holding everything, and the CSV and
// markdown views derived from it.

#ifndef FTSIM_REPORT_HPP_
#define FTSIM_REPORT_HPP_

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "ftsim/experiment.hpp"

namespace ftsim {

nlohmann::ordered_json BuildReport(const CampaignResult& result);

struct ReportFormats {
  bool json = true;
  bool csv = true;
  bool markdown = true;
};

// Writes report.json, efficiency_transient.csv, efficiency_permanent.csv,
// latency_hist.csv, latency_summary.csv, slack_hist.csv, ipc.csv, area.csv,
// power.csv, outcomes.csv and tradeoffs.md (subject to `formats`). Creates
// `dir` if needed; throws std::runtime_error when it cannot write.
void WriteReport(const nlohmann::ordered_json& report, const std::filesystem::path& dir,
                 const ReportFormats& formats = {});

// One row per swept scheme configuration: knob value and headline metrics.
std::string SweepCsv(const nlohmann::ordered_json& report, SweepKnob knob);

// Per-scheme detection rates with margins, for the terminal.
std::string FormatSummary(const nlohmann::ordered_json& report);

// Reads a report.json. Throws std::runtime_error.
nlohmann::ordered_json LoadReport(const std::filesystem::path& path);

}  // namespace ftsim

#endif  // FTSIM_REPORT_HPP_
