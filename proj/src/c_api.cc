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

#include "coopnav/coopnav.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <new>
#include <string>

#include "coopnav/assessor.h"
#include "coopnav/config.h"
#include "coopnav/error.h"
#include "coopnav/report.h"
#include "coopnav/sim.h"
#include "coopnav/trace.h"

struct coopnav_scenario {
  coopnav::ScenarioConfig cfg;
};

struct coopnav_trace {
  coopnav::RunTrace trace;
};

struct coopnav_recorder {
  coopnav::ContributionRecord rec;
};

struct coopnav_suite_report {
  coopnav::SuiteReport report;
};

namespace {

thread_local std::string last_error;

coopnav_status StatusOf(coopnav::ErrorCode code) {
  using coopnav::ErrorCode;
  switch (code) {
    case ErrorCode::kValidation:
    case ErrorCode::kParse:
      return COOPNAV_ERR_VALIDATION;
    case ErrorCode::kIo:
      return COOPNAV_ERR_IO;
    case ErrorCode::kPlanningFailed:
      return COOPNAV_ERR_PLANNING;
    case ErrorCode::kNoObservations:
    case ErrorCode::kPipelineOrder:
      return COOPNAV_ERR_STATE;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kOutOfBounds:
    case ErrorCode::kUnreachable:
    case ErrorCode::kUnsynchronizedBands:
      return COOPNAV_ERR_INVALID_ARGUMENT;
  }
  return COOPNAV_ERR_INTERNAL;
}

coopnav_status Fail(coopnav_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, turning exceptions into status codes.
template <typename F>
coopnav_status Guard(F&& body) {
  try {
    return body();
  } catch (const coopnav::Error& e) {
    return Fail(StatusOf(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(COOPNAV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(COOPNAV_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(COOPNAV_ERR_INTERNAL, "unknown error");
  }
}

coopnav_status NullArg(const char* what) {
  return Fail(COOPNAV_ERR_INVALID_ARGUMENT, std::string(what) + " is null");
}

template <std::size_t N>
void CopyField(char (&dst)[N], std::string_view src) {
  const std::size_t n = std::min(src.size(), N - 1);
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

coopnav_status CopyOut(const std::string& s, char* buf, std::size_t cap,
                       std::size_t* needed) {
  if (needed != nullptr) *needed = s.size() + 1;
  if (buf == nullptr || cap < s.size() + 1) {
    return Fail(COOPNAV_ERR_INVALID_ARGUMENT, "buffer too small");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return COOPNAV_OK;
}

}  // namespace

extern "C" {

const char* coopnav_last_error(void) { return last_error.c_str(); }

const char* coopnav_version(void) { return "1.0.0"; }

coopnav_status coopnav_scenario_load(const char* path,
                                     coopnav_scenario** out) {
  if (path == nullptr) return NullArg("path");
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    *out = new coopnav_scenario{coopnav::LoadScenario(path)};
    return COOPNAV_OK;
  });
}

coopnav_status coopnav_scenario_parse(const char* text,
                                      coopnav_scenario** out) {
  if (text == nullptr) return NullArg("text");
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    *out = new coopnav_scenario{coopnav::ParseScenario(text)};
    return COOPNAV_OK;
  });
}

coopnav_status coopnav_scenario_set(coopnav_scenario* scenario,
                                    const char* key, const char* value) {
  if (scenario == nullptr) return NullArg("scenario");
  if (key == nullptr || value == nullptr) return NullArg("key or value");
  return Guard([&] {
    // Apply to a copy so a rejected value leaves the scenario untouched.
    coopnav::ScenarioConfig next = scenario->cfg;
    coopnav::ApplyOverride(next, key, value);
    scenario->cfg = std::move(next);
    return COOPNAV_OK;
  });
}

coopnav_status coopnav_scenario_get(const coopnav_scenario* scenario,
                                    const char* key, char* buf,
                                    std::size_t cap, std::size_t* needed) {
  if (scenario == nullptr) return NullArg("scenario");
  if (key == nullptr) return NullArg("key");
  return Guard([&] {
    const auto kv = coopnav::ToKeyValues(scenario->cfg);
    const auto it = kv.find(key);
    if (it == kv.end()) {
      return Fail(COOPNAV_ERR_INVALID_ARGUMENT,
                  "unknown key '" + std::string(key) + "'");
    }
    return CopyOut(it->second, buf, cap, needed);
  });
}

coopnav_status coopnav_scenario_validate(const coopnav_scenario* scenario) {
  if (scenario == nullptr) return NullArg("scenario");
  return Guard([&] {
    scenario->cfg.Validate();
    return COOPNAV_OK;
  });
}

void coopnav_scenario_free(coopnav_scenario* scenario) { delete scenario; }

coopnav_status coopnav_run(const coopnav_scenario* scenario,
                           coopnav_trace** out) {
  if (scenario == nullptr) return NullArg("scenario");
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    *out = new coopnav_trace{coopnav::RunScenario(scenario->cfg)};
    if ((*out)->trace.timed_out) {
      return Fail(COOPNAV_ERR_TIMEOUT, "timed out before crossing");
    }
    return COOPNAV_OK;
  });
}

coopnav_status coopnav_trace_load(const char* path, coopnav_trace** out) {
  if (path == nullptr) return NullArg("path");
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    *out = new coopnav_trace{coopnav::ReadTrace(path)};
    return COOPNAV_OK;
  });
}

coopnav_status coopnav_trace_write(const coopnav_trace* trace,
                                   const char* dir) {
  if (trace == nullptr) return NullArg("trace");
  if (dir == nullptr) return NullArg("dir");
  return Guard([&] {
    coopnav::WriteRunOutputs(trace->trace, dir);
    return COOPNAV_OK;
  });
}

coopnav_status coopnav_trace_summary_get(const coopnav_trace* trace,
                                         coopnav_trace_summary* out) {
  if (trace == nullptr) return NullArg("trace");
  if (out == nullptr) return NullArg("out");
  const coopnav::RunTrace& t = trace->trace;
  out->final_cm = t.final_cm;
  out->is_contributing = t.is_contributing;
  out->crossed = t.crossed;
  out->timed_out = t.timed_out;
  out->goals_reached = t.goals_reached;
  out->min_distance = t.min_distance;
  out->n_ticks = t.ticks.size();
  out->n_events = t.events.size();
  out->n_ca = t.ca_full.size();
  return COOPNAV_OK;
}

coopnav_status coopnav_trace_event(const coopnav_trace* trace,
                                   std::size_t index, coopnav_event* out) {
  if (trace == nullptr) return NullArg("trace");
  if (out == nullptr) return NullArg("out");
  const auto& events = trace->trace.events;
  if (index >= events.size()) {
    return Fail(COOPNAV_ERR_INVALID_ARGUMENT, "event index out of range");
  }
  const coopnav::CueEvent& e = events[index];
  out->time = e.time;
  CopyField(out->checkpoint, coopnav::ToString(e.checkpoint));
  CopyField(out->kind, coopnav::ToString(e.kind));
  CopyField(out->dir, e.dir ? coopnav::ToString(*e.dir) : "");
  return COOPNAV_OK;
}

coopnav_status coopnav_trace_ca(const coopnav_trace* trace, double* buf,
                                std::size_t cap, std::size_t* count) {
  if (trace == nullptr) return NullArg("trace");
  const auto& ca = trace->trace.ca_full;
  if (count != nullptr) *count = ca.size();
  if (buf == nullptr || cap < ca.size()) {
    return Fail(COOPNAV_ERR_INVALID_ARGUMENT, "buffer too small");
  }
  std::copy(ca.begin(), ca.end(), buf);
  return COOPNAV_OK;
}

void coopnav_trace_free(coopnav_trace* trace) { delete trace; }

coopnav_status coopnav_plotdata(const char* trace_path, const char* out_dir,
                                int svg) {
  if (trace_path == nullptr) return NullArg("trace_path");
  if (out_dir == nullptr) return NullArg("out_dir");
  return Guard([&] {
    coopnav::WritePlotData(coopnav::ReadTrace(trace_path), out_dir, svg != 0);
    return COOPNAV_OK;
  });
}

coopnav_status coopnav_contribution_metric(const double* ca, std::size_t n,
                                           double gamma, double* out) {
  if (ca == nullptr && n > 0) return NullArg("ca");
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    *out = coopnav::ContributionMetric(std::span<const double>(ca, n), gamma);
    return COOPNAV_OK;
  });
}

coopnav_status coopnav_recorder_new(double gamma, coopnav_recorder** out) {
  if (out == nullptr) return NullArg("out");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    return Fail(COOPNAV_ERR_INVALID_ARGUMENT, "gamma must lie in (0, 1)");
  }
  return Guard([&] {
    auto* r = new coopnav_recorder;
    r->rec.gamma = gamma;
    *out = r;
    return COOPNAV_OK;
  });
}

coopnav_status coopnav_recorder_push(coopnav_recorder* rec, double value) {
  if (rec == nullptr) return NullArg("rec");
  return Guard([&] {
    rec->rec.ca.push_back(value);
    return COOPNAV_OK;
  });
}

coopnav_status coopnav_recorder_reset(coopnav_recorder* rec) {
  if (rec == nullptr) return NullArg("rec");
  return Guard([&] {
    rec->rec = coopnav::ResetRecorder(std::move(rec->rec));
    return COOPNAV_OK;
  });
}

coopnav_status coopnav_recorder_size(const coopnav_recorder* rec,
                                     std::size_t* out) {
  if (rec == nullptr) return NullArg("rec");
  if (out == nullptr) return NullArg("out");
  *out = rec->rec.ca.size();
  return COOPNAV_OK;
}

coopnav_status coopnav_recorder_cm(const coopnav_recorder* rec, double* out) {
  if (rec == nullptr) return NullArg("rec");
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    *out = coopnav::ContributionMetric(rec->rec);
    return COOPNAV_OK;
  });
}

void coopnav_recorder_free(coopnav_recorder* rec) { delete rec; }

coopnav_status coopnav_suite_run(const coopnav_suite_options* options,
                                 coopnav_suite_report** out) {
  if (options == nullptr) return NullArg("options");
  if (options->scenario_dir == nullptr || options->out_dir == nullptr) {
    return NullArg("scenario_dir or out_dir");
  }
  if (out == nullptr) return NullArg("out");
  if (options->n_overrides > 0 && options->overrides == nullptr) {
    return NullArg("overrides");
  }
  return Guard([&] {
    coopnav::SuiteOptions opts;
    opts.scenario_dir = options->scenario_dir;
    opts.out_dir = options->out_dir;
    if (options->has_tau) opts.tau = options->tau;
    if (options->has_tau_h) opts.tau_h = options->tau_h;
    if (options->has_gamma) opts.gamma = options->gamma;
    if (options->has_seed) opts.seed = options->seed;
    for (std::size_t i = 0; i < options->n_overrides; ++i) {
      const std::string kv = options->overrides[i];
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        return Fail(COOPNAV_ERR_VALIDATION,
                    "override '" + kv + "' is not key=value");
      }
      opts.overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
    }
    *out = new coopnav_suite_report{coopnav::RunSuite(opts)};
    if ((*out)->report.AnyTimeout()) {
      return Fail(COOPNAV_ERR_TIMEOUT, "a suite run timed out");
    }
    return COOPNAV_OK;
  });
}

std::size_t coopnav_suite_report_rows(const coopnav_suite_report* report) {
  return report == nullptr ? 0 : report->report.rows.size();
}

coopnav_status coopnav_suite_report_row(const coopnav_suite_report* report,
                                        std::size_t index,
                                        coopnav_suite_row* out) {
  if (report == nullptr) return NullArg("report");
  if (out == nullptr) return NullArg("out");
  if (index >= report->report.rows.size()) {
    return Fail(COOPNAV_ERR_INVALID_ARGUMENT, "row index out of range");
  }
  const coopnav::SuiteRow& r = report->report.rows[index];
  CopyField(out->scenario, r.scenario);
  CopyField(out->corridor, r.corridor);
  CopyField(out->policy, r.policy);
  out->final_cm = r.final_cm;
  out->is_contributing = r.is_contributing;
  out->timed_out = r.timed_out;
  out->collision_free = r.collision_free;
  out->min_distance = r.min_distance;
  out->n_events = r.events.size();
  return COOPNAV_OK;
}

coopnav_status coopnav_suite_report_table(const coopnav_suite_report* report,
                                          char* buf, std::size_t cap,
                                          std::size_t* needed) {
  if (report == nullptr) return NullArg("report");
  return Guard(
      [&] { return CopyOut(coopnav::SuiteTable(report->report), buf, cap,
                           needed); });
}

void coopnav_suite_report_free(coopnav_suite_report* report) {
  delete report;
}

coopnav_status coopnav_gamma_sweep(const char* suite_dir,
                                   const double* gammas, std::size_t n_gammas,
                                   const char* out_csv) {
  if (suite_dir == nullptr) return NullArg("suite_dir");
  if (out_csv == nullptr) return NullArg("out_csv");
  if (gammas == nullptr && n_gammas > 0) return NullArg("gammas");
  return Guard([&] {
    const std::vector<double> g(gammas, gammas + n_gammas);
    const coopnav::SweepTable table = coopnav::GammaSweep(suite_dir, g);
    const std::filesystem::path parent =
        std::filesystem::path(out_csv).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    coopnav::WriteFile(out_csv, coopnav::SweepToCsv(table));
    return COOPNAV_OK;
  });
}

}  // extern "C"
