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


// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coopnav/coopnav.h"

#ifndef COOPNAV_SCENARIO_DIR
#define COOPNAV_SCENARIO_DIR "scenarios"
#endif

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kValidation = 2, kTimeout = 3, kIo = 4 };

int ExitFor(coopnav_status status) {
  switch (status) {
    case COOPNAV_OK:
      return kOk;
    case COOPNAV_ERR_VALIDATION:
    case COOPNAV_ERR_INVALID_ARGUMENT:
      return kValidation;
    case COOPNAV_ERR_TIMEOUT:
      return kTimeout;
    case COOPNAV_ERR_IO:
      return kIo;
    default:
      return kFailure;
  }
}

int Report(coopnav_status status) {
  std::fprintf(stderr, "error: %s\n", coopnav_last_error());
  return ExitFor(status);
}

std::string DefaultOut() {
  const char* env = std::getenv("COOPNAV_OUT");
  return env != nullptr && *env != '\0' ? env : "out";
}

std::string Join(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir.back() == '/') return dir + name;
  return dir + "/" + name;
}

struct Common {
  std::optional<double> gamma;
  std::optional<double> tau;
  std::optional<double> tau_h;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

void AddCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("--gamma", c.gamma, "discount factor");
  cmd->add_option("--tau", c.tau, "contribution threshold on CM (m)");
  cmd->add_option("--tau-h", c.tau_h, "needs-to-contribute threshold (m)");
  cmd->add_option("--seed", c.seed, "seed for optional position noise");
  cmd->add_option("--override", c.overrides, "key=value, repeatable");
}

// Flag values first, then --override entries in order.
std::vector<std::pair<std::string, std::string>> Settings(const Common& c) {
  std::vector<std::pair<std::string, std::string>> out;
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  if (c.gamma) out.emplace_back("thresholds.gamma", num(*c.gamma));
  if (c.tau) out.emplace_back("thresholds.tau_cm", num(*c.tau));
  if (c.tau_h) out.emplace_back("thresholds.tau_h", num(*c.tau_h));
  if (c.seed) out.emplace_back("sim.seed", std::to_string(*c.seed));
  for (const std::string& kv : c.overrides) {
    const auto eq = kv.find('=');
    out.emplace_back(kv.substr(0, eq),
                     eq == std::string::npos ? "" : kv.substr(eq + 1));
  }
  return out;
}

int CmdRun(const std::string& config, std::string out, const Common& common) {
  coopnav_scenario* scenario = nullptr;
  coopnav_status st = coopnav_scenario_load(config.c_str(), &scenario);
  if (st != COOPNAV_OK) return Report(st);
  for (const auto& [key, value] : Settings(common)) {
    st = coopnav_scenario_set(scenario, key.c_str(), value.c_str());
    if (st != COOPNAV_OK) {
      coopnav_scenario_free(scenario);
      return Report(st);
    }
  }
  st = coopnav_scenario_validate(scenario);
  if (st != COOPNAV_OK) {
    coopnav_scenario_free(scenario);
    return Report(st);
  }
  if (out.empty()) {
    char name[256];
    std::size_t needed = 0;
    coopnav_scenario_get(scenario, "scenario.name", name, sizeof(name),
                         &needed);
    out = Join(DefaultOut(), name);
  }
  coopnav_trace* trace = nullptr;
  const coopnav_status run = coopnav_run(scenario, &trace);
  coopnav_scenario_free(scenario);
  if (trace == nullptr) return Report(run);
  const std::string run_error = run != COOPNAV_OK ? coopnav_last_error() : "";

  st = coopnav_trace_write(trace, out.c_str());
  if (st != COOPNAV_OK) {
    coopnav_trace_free(trace);
    return Report(st);
  }
  coopnav_trace_summary summary{};
  coopnav_trace_summary_get(trace, &summary);
  std::printf("final CM %.6f (%s)\n", summary.final_cm,
              summary.is_contributing ? "contributing" : "not contributing");
  for (std::size_t i = 0; i < summary.n_events; ++i) {
    coopnav_event ev{};
    coopnav_trace_event(trace, i, &ev);
    std::printf("  t=%6.2f  %-10s %s%s%s\n", ev.time, ev.checkpoint, ev.kind,
                ev.dir[0] != '\0' ? " " : "", ev.dir);
  }
  std::printf("outputs in %s\n", out.c_str());
  coopnav_trace_free(trace);
  if (run != COOPNAV_OK) {
    std::fprintf(stderr, "error: %s\n", run_error.c_str());
    return ExitFor(run);
  }
  return kOk;
}

int CmdSuite(const std::string& scenarios, std::string out,
             const Common& common) {
  if (out.empty()) out = Join(DefaultOut(), "suite");
  std::vector<std::string> pairs;
  for (const auto& [key, value] : Settings(common)) {
    pairs.push_back(key + "=" + value);
  }
  std::vector<const char*> ptrs;
  for (const std::string& p : pairs) ptrs.push_back(p.c_str());

  coopnav_suite_options opts{};
  opts.scenario_dir = scenarios.c_str();
  opts.out_dir = out.c_str();
  opts.overrides = ptrs.data();
  opts.n_overrides = ptrs.size();
  coopnav_suite_report* report = nullptr;
  const coopnav_status st = coopnav_suite_run(&opts, &report);
  if (report == nullptr) return Report(st);
  std::size_t needed = 0;
  coopnav_suite_report_table(report, nullptr, 0, &needed);
  std::string table(needed, '\0');
  coopnav_suite_report_table(report, table.data(), table.size(), &needed);
  std::fputs(table.c_str(), stdout);
  std::printf("\nreport in %s\n", Join(out, "suite_report.json").c_str());
  coopnav_suite_report_free(report);
  if (st != COOPNAV_OK) return Report(st);
  return kOk;
}

int CmdGammaSweep(std::string suite_dir, std::vector<double> gammas,
                  std::string out) {
  if (suite_dir.empty()) suite_dir = Join(DefaultOut(), "suite");
  if (gammas.empty()) {
    gammas = {0.5,  0.6,  0.7,  0.8,  0.9,  0.91, 0.92, 0.93, 0.94, 0.95,
              0.96, 0.97, 0.98, 0.99, 1.0,  1.01, 1.02, 1.03, 1.04, 1.05};
  }
  if (out.empty()) out = Join(suite_dir, "gamma_sweep.csv");
  const coopnav_status st = coopnav_gamma_sweep(
      suite_dir.c_str(), gammas.data(), gammas.size(), out.c_str());
  if (st != COOPNAV_OK) return Report(st);
  std::printf("sweep written to %s\n", out.c_str());
  return kOk;
}

int CmdPlotData(const std::string& trace, std::string out, bool svg) {
  if (out.empty()) out = Join(DefaultOut(), "plot");
  const coopnav_status st = coopnav_plotdata(trace.c_str(), out.c_str(), svg);
  if (st != COOPNAV_OK) return Report(st);
  std::printf("plot data in %s\n", out.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative corridor navigation with verbal cues"};
  app.require_subcommand(1);

  Common run_common;
  std::string run_config;
  std::string run_out;
  CLI::App* run = app.add_subcommand("run", "run one scenario");
  run->add_option("--config", run_config, "scenario file")->required();
  run->add_option("--out", run_out, "output directory");
  AddCommon(run, run_common);

  Common suite_common;
  std::string suite_scenarios = COOPNAV_SCENARIO_DIR;
  std::string suite_out;
  CLI::App* suite = app.add_subcommand("suite", "run the four-scenario suite");
  suite->add_option("--scenarios", suite_scenarios, "scenario directory");
  suite->add_option("--out", suite_out, "output directory");
  AddCommon(suite, suite_common);

  std::string sweep_suite;
  std::vector<double> sweep_gammas;
  std::string sweep_out;
  CLI::App* sweep =
      app.add_subcommand("gamma-sweep", "recompute CM over discount values");
  sweep->add_option("--suite", sweep_suite, "suite output directory");
  sweep->add_option("--gamma", sweep_gammas, "discount values")
      ->delimiter(',');
  sweep->add_option("--out", sweep_out, "CSV path");

  std::string plot_trace;
  std::string plot_out;
  bool plot_svg = false;
  CLI::App* plot = app.add_subcommand("plotdata", "export plot-ready tables");
  plot->add_option("--trace", plot_trace, "trace.jsonl from a run")
      ->required();
  plot->add_option("--out", plot_out, "output directory");
  plot->add_flag("--svg", plot_svg, "also draw trajectories.svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  if (*run) return CmdRun(run_config, run_out, run_common);
  if (*suite) return CmdSuite(suite_scenarios, suite_out, suite_common);
  if (*sweep) return CmdGammaSweep(sweep_suite, sweep_gammas, sweep_out);
  return CmdPlotData(plot_trace, plot_out, plot_svg);
}
