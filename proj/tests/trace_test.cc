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

#include "coopnav/trace.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <string>

#include "coopnav/config.h"
#include "coopnav/error.h"
#include "gtest/gtest.h"

namespace coopnav {
namespace {

RunTrace RunNamed(const std::string& name) {
  return RunScenario(LoadScenario(std::string(COOPNAV_SCENARIO_DIR) + "/" +
                                  name + ".conf"));
}

std::string ParseErrorOf(std::string_view text) {
  try {
    ParseTraceJsonl(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    return e.what();
  }
  return "";
}

TEST(TraceTest, JsonlRoundTripIsExact) {
  for (const char* name : {"narrow_minimal", "open_facilitating"}) {
    const RunTrace trace = RunNamed(name);
    const std::string text = TraceToJsonl(trace);
    const RunTrace back = ParseTraceJsonl(text);
    EXPECT_EQ(back, trace) << name;
    EXPECT_EQ(TraceToJsonl(back), text);
  }
}

TEST(TraceTest, NonFiniteValuesSurvive) {
  RunTrace trace = RunNamed("open_minimal");
  trace.min_distance = std::numeric_limits<double>::infinity();
  trace.ticks[0].crossing.d_oh = kNoObstacleDistance;
  trace.ticks[1].crossing.t_cross = -std::numeric_limits<double>::infinity();
  const RunTrace back = ParseTraceJsonl(TraceToJsonl(trace));
  EXPECT_TRUE(std::isinf(back.min_distance));
  EXPECT_EQ(back, trace);
}

TEST(TraceTest, ParseErrorsCarryLineNumbers) {
  const std::string text = TraceToJsonl(RunNamed("open_minimal"));
  const std::size_t second = text.find('\n') + 1;
  std::string broken = text;
  broken.insert(second, "{not json\n");
  EXPECT_EQ(ParseErrorOf(broken).rfind("line 2: ", 0), 0u)
      << ParseErrorOf(broken);

  std::string unknown = text;
  unknown.insert(second, "{\"type\":\"wat\"}\n");
  EXPECT_NE(ParseErrorOf(unknown).find("line 2: unknown record type"),
            std::string::npos);

  const std::string no_summary =
      text.substr(0, text.rfind('\n', text.size() - 2) + 1);
  EXPECT_NE(ParseErrorOf(no_summary).find("missing summary"),
            std::string::npos);
  EXPECT_NE(ParseErrorOf(text.substr(second)).find("line 1: missing meta"),
            std::string::npos);
}

TEST(TraceTest, CaCsvMatchesRecordedTicks) {
  const RunTrace trace = RunNamed("open_minimal");
  const auto dir = std::filesystem::temp_directory_path() / "coopnav_trace_test";
  std::filesystem::remove_all(dir);
  WriteRunOutputs(trace, dir.string());
  for (const char* f : {"trace.jsonl", "events.jsonl", "ca.csv", "summary.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  EXPECT_EQ(ReadCaCsv((dir / "ca.csv").string()), trace.ca_full);
  EXPECT_EQ(ReadTrace((dir / "trace.jsonl").string()), trace);
  std::filesystem::remove_all(dir);
}

TEST(TraceTest, MissingFileIsIo) {
  try {
    ReadFile("/nonexistent/trace.jsonl");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(TraceTest, EventsAreOneLineEach) {
  const RunTrace trace = RunNamed("narrow_facilitating");
  const std::string text = EventsToJsonl(trace.events);
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')),
            trace.events.size());
  EXPECT_NE(text.find("ThankYou"), std::string::npos);
}

}  // namespace
}  // namespace coopnav
