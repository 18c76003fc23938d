// Copyright 2026 The CoopNav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Scenario suite, discount sweep and plot-data export.

#ifndef COOPNAV_REPORT_H_
#define COOPNAV_REPORT_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coopnav/sim.h"

namespace coopnav {

// The four corridor/policy combinations, in report order.
const std::vector<std::string>& SuiteScenarioNames();

struct SuiteOptions {
  std::string scenario_dir;
  std::string out_dir;
  std::optional<double> tau;
  std::optional<double> tau_h;
  std::optional<double> gamma;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> overrides;
};

struct SuiteRow {
  std::string scenario;
  std::string corridor;  // "open" or "narrow"
  std::string policy;
  double final_cm = 0.0;
  bool is_contributing = false;
  bool timed_out = false;
  bool collision_free = true;
  double min_distance = 0.0;
  std::vector<CueEvent> events;
};

struct SweepTable {
  std::vector<std::string> scenarios;
  std::vector<double> gammas;
  std::vector<std::vector<double>> cm;  // cm[gamma][scenario]

  // The discounted average is only defined for gamma < 1.
  static bool InDomain(double gamma) { return gamma > 0.0 && gamma < 1.0; }
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  SweepTable sweep;
  double tau_cm = 0.4;
  double gamma = 0.98;

  bool AnyTimeout() const;
};

// Applies the suite-level overrides to one loaded scenario.
void ApplySuiteOptions(const SuiteOptions& opts, ScenarioConfig& cfg);

// Runs every suite scenario in parallel, writes per-scenario outputs to
// out_dir/<name>/ and suite_report.json plus table.txt to out_dir.
SuiteReport RunSuite(const SuiteOptions& opts);

std::string SuiteReportToJson(const SuiteReport& report);
// Rows Open/Narrow, columns minimal/facilitating, CM rounded for reading.
std::string SuiteTable(const SuiteReport& report);

// Discount grid used by the suite report.
const std::vector<double>& DefaultSweepGammas();

// CM of every CA series at every gamma. Gammas must lie in (0, 1.05].
SweepTable SweepSeries(const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& series,
                       const std::vector<double>& gammas);

// Reads out_dir/<name>/ca.csv for each suite scenario, with no
// re-simulation. Throws kIo naming the missing file.
SweepTable GammaSweep(const std::string& suite_dir,
                      const std::vector<double>& gammas);

// Columns: gamma,in_domain,<scenario>...
std::string SweepToCsv(const SweepTable& table);

// trajectories.csv, ca.csv and markers.csv from a trace, plus
// trajectories.svg when requested.
void WritePlotData(const RunTrace& trace, const std::string& out_dir,
                   bool svg);

std::string TrajectorySvg(const RunTrace& trace);

}  // namespace coopnav

#endif  // COOPNAV_REPORT_H_
