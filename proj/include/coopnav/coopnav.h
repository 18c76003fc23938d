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


/* C interface to the coopnav library. Every handle is opaque and owned by
 * the caller once returned; release it with the matching _free function.
 * Functions return a coopnav_status; on failure coopnav_last_error() holds a
 * message for the calling thread until its next failing call. */

#ifndef COOPNAV_COOPNAV_H_
#define COOPNAV_COOPNAV_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define COOPNAV_API __declspec(dllexport)
#else
#define COOPNAV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum coopnav_status {
  COOPNAV_OK = 0,
  COOPNAV_ERR_INTERNAL = 1,
  COOPNAV_ERR_VALIDATION = 2,
  COOPNAV_ERR_TIMEOUT = 3,
  COOPNAV_ERR_IO = 4,
  COOPNAV_ERR_INVALID_ARGUMENT = 5,
  COOPNAV_ERR_STATE = 6,
  COOPNAV_ERR_PLANNING = 7
} coopnav_status;

typedef struct coopnav_scenario coopnav_scenario;
typedef struct coopnav_trace coopnav_trace;
typedef struct coopnav_recorder coopnav_recorder;
typedef struct coopnav_suite_report coopnav_suite_report;

typedef struct coopnav_trace_summary {
  double final_cm;
  int is_contributing;
  int crossed;
  int timed_out;
  int goals_reached;
  double min_distance;
  size_t n_ticks;
  size_t n_events;
  size_t n_ca;
} coopnav_trace_summary;

typedef struct coopnav_event {
  double time;
  char checkpoint[16];
  char kind[40];
  char dir[8]; /* empty when the cue carries no direction */
} coopnav_event;

typedef struct coopnav_suite_options {
  const char* scenario_dir;
  const char* out_dir;
  int has_tau;
  double tau;
  int has_tau_h;
  double tau_h;
  int has_gamma;
  double gamma;
  int has_seed;
  uint64_t seed;
  const char* const* overrides; /* "key=value" strings */
  size_t n_overrides;
} coopnav_suite_options;

typedef struct coopnav_suite_row {
  char scenario[64];
  char corridor[16];
  char policy[16];
  double final_cm;
  int is_contributing;
  int timed_out;
  int collision_free;
  double min_distance;
  size_t n_events;
} coopnav_suite_row;

COOPNAV_API const char* coopnav_last_error(void);
COOPNAV_API const char* coopnav_version(void);

/* Scenarios. Getters copy into buf and report the size needed, terminator
 * included; COOPNAV_ERR_INVALID_ARGUMENT when cap is too small. */
COOPNAV_API coopnav_status coopnav_scenario_load(const char* path,
                                                 coopnav_scenario** out);
COOPNAV_API coopnav_status coopnav_scenario_parse(const char* text,
                                                  coopnav_scenario** out);
COOPNAV_API coopnav_status coopnav_scenario_set(coopnav_scenario* scenario,
                                                const char* key,
                                                const char* value);
COOPNAV_API coopnav_status coopnav_scenario_get(
    const coopnav_scenario* scenario, const char* key, char* buf, size_t cap,
    size_t* needed);
COOPNAV_API coopnav_status coopnav_scenario_validate(
    const coopnav_scenario* scenario);
COOPNAV_API void coopnav_scenario_free(coopnav_scenario* scenario);

/* Runs. A run that hits max_ticks before crossing still yields its trace
 * and returns COOPNAV_ERR_TIMEOUT. */
COOPNAV_API coopnav_status coopnav_run(const coopnav_scenario* scenario,
                                       coopnav_trace** out);
COOPNAV_API coopnav_status coopnav_trace_load(const char* path,
                                              coopnav_trace** out);
COOPNAV_API coopnav_status coopnav_trace_write(const coopnav_trace* trace,
                                               const char* dir);
COOPNAV_API coopnav_status coopnav_trace_summary_get(
    const coopnav_trace* trace, coopnav_trace_summary* out);
COOPNAV_API coopnav_status coopnav_trace_event(const coopnav_trace* trace,
                                               size_t index,
                                               coopnav_event* out);
COOPNAV_API coopnav_status coopnav_trace_ca(const coopnav_trace* trace,
                                            double* buf, size_t cap,
                                            size_t* count);
COOPNAV_API void coopnav_trace_free(coopnav_trace* trace);

COOPNAV_API coopnav_status coopnav_plotdata(const char* trace_path,
                                            const char* out_dir, int svg);

/* Contribution metric over a plain array, gamma in (0, 1). */
COOPNAV_API coopnav_status coopnav_contribution_metric(const double* ca,
                                                       size_t n, double gamma,
                                                       double* out);

/* Incremental contribution recorder. */
COOPNAV_API coopnav_status coopnav_recorder_new(double gamma,
                                                coopnav_recorder** out);
COOPNAV_API coopnav_status coopnav_recorder_push(coopnav_recorder* rec,
                                                 double value);
COOPNAV_API coopnav_status coopnav_recorder_reset(coopnav_recorder* rec);
COOPNAV_API coopnav_status coopnav_recorder_size(const coopnav_recorder* rec,
                                                 size_t* out);
/* COOPNAV_ERR_STATE while empty. */
COOPNAV_API coopnav_status coopnav_recorder_cm(const coopnav_recorder* rec,
                                               double* out);
COOPNAV_API void coopnav_recorder_free(coopnav_recorder* rec);

/* Suite of the four corridor/policy runs. Returns COOPNAV_ERR_TIMEOUT with
 * the report still set when any run timed out. */
COOPNAV_API coopnav_status coopnav_suite_run(
    const coopnav_suite_options* options, coopnav_suite_report** out);
COOPNAV_API size_t coopnav_suite_report_rows(
    const coopnav_suite_report* report);
COOPNAV_API coopnav_status coopnav_suite_report_row(
    const coopnav_suite_report* report, size_t index, coopnav_suite_row* out);
COOPNAV_API coopnav_status coopnav_suite_report_table(
    const coopnav_suite_report* report, char* buf, size_t cap,
    size_t* needed);
COOPNAV_API void coopnav_suite_report_free(coopnav_suite_report* report);

/* Recomputes CM from the CA series a suite run left in suite_dir and writes
 * a gamma-by-scenario CSV. Gammas must lie in (0, 1.05]. */
COOPNAV_API coopnav_status coopnav_gamma_sweep(const char* suite_dir,
                                               const double* gammas,
                                               size_t n_gammas,
                                               const char* out_csv);

#ifdef __cplusplus
}
#endif

#endif  /* COOPNAV_COOPNAV_H_ */
