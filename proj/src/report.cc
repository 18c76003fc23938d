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

#include "coopnav/report.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>

#include "coopnav/assessor.h"
#include "coopnav/config.h"
#include "coopnav/error.h"
#include "coopnav/trace.h"
#include "json.hpp"

namespace coopnav {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

double SeriesCm(const std::vector<double>& ca, double gamma) {
  return ca.empty() ? 0.0 : DiscountedAverage(ca, gamma);
}

json EventSummary(const CueEvent& e) {
  json j = {{"time", e.time},
            {"checkpoint", ToString(e.checkpoint)},
            {"kind", ToString(e.kind)}};
  j["dir"] = e.dir ? json(ToString(*e.dir)) : json(nullptr);
  json rationale = json::object();
  for (const RationaleItem& r : e.rationale) rationale[r.name] = r.value;
  j["rationale"] = rationale;
  return j;
}

}  // namespace

const std::vector<std::string>& SuiteScenarioNames() {
  static const std::vector<std::string> names = {
      "open_minimal", "open_facilitating", "narrow_minimal",
      "narrow_facilitating"};
  return names;
}

const std::vector<double>& DefaultSweepGammas() {
  static const std::vector<double> gammas = {
      0.5,  0.6,  0.7,  0.8,  0.9,  0.91, 0.92, 0.93, 0.94, 0.95,
      0.96, 0.97, 0.98, 0.99, 1.0,  1.01, 1.02, 1.03, 1.04, 1.05};
  return gammas;
}

bool SuiteReport::AnyTimeout() const {
  for (const SuiteRow& r : rows) {
    if (r.timed_out) return true;
  }
  return false;
}

void ApplySuiteOptions(const SuiteOptions& opts, ScenarioConfig& cfg) {
  for (const auto& [key, value] : opts.overrides) {
    ApplyOverride(cfg, key, value);
  }
  if (opts.tau) cfg.thresholds.tau_cm = *opts.tau;
  if (opts.tau_h) cfg.thresholds.tau_h = *opts.tau_h;
  if (opts.gamma) cfg.thresholds.gamma = *opts.gamma;
  if (opts.seed) cfg.seed = *opts.seed;
}

SuiteReport RunSuite(const SuiteOptions& opts) {
  std::vector<ScenarioConfig> configs;
  for (const std::string& name : SuiteScenarioNames()) {
    ScenarioConfig cfg =
        LoadScenario((fs::path(opts.scenario_dir) / (name + ".conf")).string());
    ApplySuiteOptions(opts, cfg);
    cfg.Validate();
    configs.push_back(std::move(cfg));
  }

  // Each worker owns its config and output directory.
  std::vector<std::future<RunTrace>> jobs;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const std::string dir =
        (fs::path(opts.out_dir) / SuiteScenarioNames()[i]).string();
    jobs.push_back(std::async(std::launch::async, [&cfg = configs[i], dir] {
      RunTrace trace = RunScenario(cfg);
      WriteRunOutputs(trace, dir);
      return trace;
    }));
  }
  std::vector<RunTrace> traces;
  for (auto& job : jobs) traces.push_back(job.get());

  SuiteReport report;
  report.tau_cm = configs.front().thresholds.tau_cm;
  report.gamma = configs.front().thresholds.gamma;
  std::vector<std::vector<double>> series;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const RunTrace& t = traces[i];
    const ScenarioConfig& cfg = configs[i];
    SuiteRow row;
    row.scenario = SuiteScenarioNames()[i];
    row.corridor = cfg.world.Build().IsOpen() ? "open" : "narrow";
    row.policy = std::string(ToString(cfg.human_policy));
    row.final_cm = t.final_cm;
    row.is_contributing = t.is_contributing;
    row.timed_out = t.timed_out;
    row.min_distance = t.min_distance;
    row.collision_free = t.min_distance >= cfg.robot.radius + cfg.human.radius;
    row.events = t.events;
    report.rows.push_back(std::move(row));
    series.push_back(t.ca_full);
  }
  report.sweep =
      SweepSeries(SuiteScenarioNames(), series, DefaultSweepGammas());

  WriteFile((fs::path(opts.out_dir) / "suite_report.json").string(),
            SuiteReportToJson(report));
  WriteFile((fs::path(opts.out_dir) / "table.txt").string(),
            SuiteTable(report));
  return report;
}

std::string SuiteReportToJson(const SuiteReport& report) {
  json rows = json::array();
  for (const SuiteRow& r : report.rows) {
    json events = json::array();
    for (const CueEvent& e : r.events) events.push_back(EventSummary(e));
    rows.push_back({{"scenario", r.scenario},
                    {"corridor", r.corridor},
                    {"policy", r.policy},
                    {"final_cm", r.final_cm},
                    {"is_contributing", r.is_contributing},
                    {"timed_out", r.timed_out},
                    {"collision_free", r.collision_free},
                    {"min_distance", r.min_distance},
                    {"events", events}});
  }
  json sweep = json::array();
  for (std::size_t g = 0; g < report.sweep.gammas.size(); ++g) {
    json cms = json::object();
    for (std::size_t s = 0; s < report.sweep.scenarios.size(); ++s) {
      cms[report.sweep.scenarios[s]] = report.sweep.cm[g][s];
    }
    sweep.push_back({{"gamma", report.sweep.gammas[g]},
                     {"in_domain", SweepTable::InDomain(report.sweep.gammas[g])},
                     {"cm", cms}});
  }
  json j = {{"gamma", report.gamma},
            {"tau_cm", report.tau_cm},
            {"rows", rows},
            {"gamma_sweep", sweep}};
  return j.dump(2) + "\n";
}

std::string SuiteTable(const SuiteReport& report) {
  auto cell = [&](const std::string& corridor, const std::string& policy) {
    for (const SuiteRow& r : report.rows) {
      if (r.corridor != corridor || r.policy != policy) continue;
      std::string s = Fixed(r.final_cm, 2);
      s += r.is_contributing ? " (contributing)" : " (not contributing)";
      if (r.timed_out) s += " TIMEOUT";
      return s;
    }
    return std::string("-");
  };
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  std::string out = "CM by scenario (gamma = " + Fixed(report.gamma, 2) +
                    ", tau = " + Fixed(report.tau_cm, 2) + ")\n\n";
  out += pad("", 8) + pad("Minimally Contributing", 30) + "Facilitating\n";
  out += pad("Open", 8) + pad(cell("open", "minimal"), 30) +
         cell("open", "facilitating") + "\n";
  out += pad("Narrow", 8) + pad(cell("narrow", "minimal"), 30) +
         cell("narrow", "facilitating") + "\n";
  return out;
}

SweepTable SweepSeries(const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& series,
                       const std::vector<double>& gammas) {
  if (gammas.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no gamma values");
  }
  SweepTable table;
  table.scenarios = names;
  for (double g : gammas) {
    if (!(g > 0.0 && g <= 1.05)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "gamma " + FormatDouble(g) + " outside (0, 1.05]");
    }
    std::vector<double> row;
    for (const auto& ca : series) row.push_back(SeriesCm(ca, g));
    table.gammas.push_back(g);
    table.cm.push_back(std::move(row));
  }
  return table;
}

SweepTable GammaSweep(const std::string& suite_dir,
                      const std::vector<double>& gammas) {
  std::vector<std::vector<double>> series;
  for (const std::string& name : SuiteScenarioNames()) {
    const fs::path csv = fs::path(suite_dir) / name / "ca.csv";
    if (!fs::exists(csv)) {
      throw Error(ErrorCode::kIo, "missing CA series " + csv.string() +
                                      "; run the suite first");
    }
    series.push_back(ReadCaCsv(csv.string()));
  }
  return SweepSeries(SuiteScenarioNames(), series, gammas);
}

std::string SweepToCsv(const SweepTable& table) {
  std::string out = "gamma,in_domain";
  for (const std::string& s : table.scenarios) out += "," + s;
  out += "\n";
  for (std::size_t g = 0; g < table.gammas.size(); ++g) {
    out += FormatDouble(table.gammas[g]);
    out += SweepTable::InDomain(table.gammas[g]) ? ",1" : ",0";
    for (double v : table.cm[g]) out += "," + FormatDouble(v);
    out += "\n";
  }
  return out;
}

void WritePlotData(const RunTrace& trace, const std::string& out_dir,
                   bool svg) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir);

  std::string traj = "index,time,robot_x,robot_y,human_x,human_y\n";
  std::string ca = "time,ca,cm\n";
  for (const TickRecord& t : trace.ticks) {
    traj += std::to_string(t.index) + "," + FormatDouble(t.time) + "," +
            FormatDouble(t.robot.pose.x) + "," + FormatDouble(t.robot.pose.y) +
            "," + FormatDouble(t.human.pose.x) + "," +
            FormatDouble(t.human.pose.y) + "\n";
    if (t.ca) {
      ca += FormatDouble(t.time) + "," + FormatDouble(*t.ca) + "," +
            FormatDouble(t.cm.value_or(0.0)) + "\n";
    }
  }
  std::string markers =
      "time,checkpoint,kind,dir,robot_x,robot_y,human_x,human_y\n";
  for (const CueEvent& e : trace.events) {
    // Position at the tick the cue was emitted on.
    const TickRecord* at = nullptr;
    for (const TickRecord& t : trace.ticks) {
      if (t.time <= e.time) at = &t;
    }
    markers += FormatDouble(e.time) + "," +
               std::string(ToString(e.checkpoint)) + "," +
               std::string(ToString(e.kind)) + "," +
               (e.dir ? std::string(ToString(*e.dir)) : std::string()) + ",";
    if (at != nullptr) {
      markers += FormatDouble(at->robot.pose.x) + "," +
                 FormatDouble(at->robot.pose.y) + "," +
                 FormatDouble(at->human.pose.x) + "," +
                 FormatDouble(at->human.pose.y);
    } else {
      markers += ",,,";
    }
    markers += "\n";
  }
  const fs::path d(out_dir);
  WriteFile((d / "trajectories.csv").string(), traj);
  WriteFile((d / "ca.csv").string(), ca);
  WriteFile((d / "markers.csv").string(), markers);
  if (svg) WriteFile((d / "trajectories.svg").string(), TrajectorySvg(trace));
}

std::string TrajectorySvg(const RunTrace& trace) {
  const CorridorWorld world = FromKeyValues(trace.metadata).world.Build();
  constexpr double kScale = 50.0;
  const Rect& b = world.bounds;
  auto sx = [&](double x) { return Fixed((x - b.min_x) * kScale, 2); };
  auto sy = [&](double y) { return Fixed((b.max_y - y) * kScale, 2); };
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    Fixed((b.max_x - b.min_x) * kScale, 0) + "\" height=\"" +
                    Fixed((b.max_y - b.min_y) * kScale, 0) + "\">\n";
  for (const Rect& w : world.walls) {
    out += "<rect x=\"" + sx(w.min_x) + "\" y=\"" + sy(w.max_y) +
           "\" width=\"" + Fixed((w.max_x - w.min_x) * kScale, 2) +
           "\" height=\"" + Fixed((w.max_y - w.min_y) * kScale, 2) +
           "\" fill=\"#888\"/>\n";
  }
  auto polyline = [&](bool robot, const char* color) {
    std::string pts;
    for (const TickRecord& t : trace.ticks) {
      const Pose& p = robot ? t.robot.pose : t.human.pose;
      pts += sx(p.x) + "," + sy(p.y) + " ";
    }
    return "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
           color + "\" stroke-width=\"2\"/>\n";
  };
  out += polyline(true, "#1f77b4");
  out += polyline(false, "#d62728");
  for (const CueEvent& e : trace.events) {
    for (const TickRecord& t : trace.ticks) {
      if (t.time != e.time) continue;
      out += "<circle cx=\"" + sx(t.robot.pose.x) + "\" cy=\"" +
             sy(t.robot.pose.y) + "\" r=\"4\" fill=\"black\"><title>" +
             std::string(ToString(e.kind)) + "</title></circle>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace coopnav
