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


// Line-delimited JSON run traces and the flat files derived from them.

#ifndef COOPNAV_TRACE_H_
#define COOPNAV_TRACE_H_

#include <string>
#include <string_view>
#include <vector>

#include "coopnav/sim.h"

namespace coopnav {

// One record per line: a "meta" line, one "tick" line per tick, one "event"
// line per cue and a closing "summary" line. Doubles keep full precision.
std::string TraceToJsonl(const RunTrace& trace);

// Inverse of TraceToJsonl. Throws kParse with the offending line number.
RunTrace ParseTraceJsonl(std::string_view text);

std::string EventsToJsonl(const std::vector<CueEvent>& events);
// Columns: index,time,ca,cm over the recorded ticks.
std::string CaToCsv(const RunTrace& trace);
std::string SummaryToJson(const RunTrace& trace);

// Reads the ca column back from a CaToCsv file.
std::vector<double> ReadCaCsv(const std::string& path);

// Writes trace.jsonl, events.jsonl, ca.csv and summary.json into `dir`,
// creating it if needed. Throws kIo.
void WriteRunOutputs(const RunTrace& trace, const std::string& dir);
RunTrace ReadTrace(const std::string& path);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view content);

}  // namespace coopnav

#endif  // COOPNAV_TRACE_H_
