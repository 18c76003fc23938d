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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "coopnav/config.h"
#include "coopnav/error.h"
#include "json.hpp"

namespace coopnav {

namespace {

using nlohmann::json;

// JSON has no infinities; they travel as strings.
json Num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double NumFrom(const json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw Error(ErrorCode::kParse, "bad number '" + s + "'");
}

json PoseJson(const Pose& p) { return {Num(p.x), Num(p.y), Num(p.theta)}; }
Pose PoseFrom(const json& j) {
  return {NumFrom(j.at(0)), NumFrom(j.at(1)), NumFrom(j.at(2))};
}
json PointJson(const Point& p) { return {Num(p.x), Num(p.y)}; }
Point PointFrom(const json& j) { return {NumFrom(j.at(0)), NumFrom(j.at(1))}; }

json AgentJson(const AgentState& a) {
  return {{"pose", PoseJson(a.pose)},
          {"v", Num(a.velocity)},
          {"r", Num(a.radius)}};
}
AgentState AgentFrom(const json& j) {
  return {PoseFrom(j.at("pose")), NumFrom(j.at("v")), NumFrom(j.at("r"))};
}

template <typename T, typename F>
T Enum(const json& j, F from_string) {
  const auto v = from_string(j.get<std::string>());
  if (!v) throw Error(ErrorCode::kParse, "unknown enum value");
  return *v;
}

json EventJson(const CueEvent& e) {
  json rationale = json::array();
  for (const RationaleItem& r : e.rationale) {
    rationale.push_back({{"name", r.name}, {"value", r.value}});
  }
  json out = {{"type", "event"},
              {"time", Num(e.time)},
              {"kind", ToString(e.kind)},
              {"checkpoint", ToString(e.checkpoint)},
              {"rationale", rationale}};
  out["dir"] = e.dir ? json(ToString(*e.dir)) : json(nullptr);
  return out;
}

CueEvent EventFrom(const json& j) {
  CueEvent e;
  e.time = NumFrom(j.at("time"));
  e.kind = Enum<CueKind>(j.at("kind"), CueKindFromString);
  e.checkpoint = Enum<Checkpoint>(j.at("checkpoint"), CheckpointFromString);
  if (!j.at("dir").is_null()) {
    e.dir = Enum<CrossDirection>(j.at("dir"), CrossDirectionFromString);
  }
  for (const json& r : j.at("rationale")) {
    e.rationale.push_back(
        {r.at("name").get<std::string>(), r.at("value").get<bool>()});
  }
  return e;
}

json TickJson(const TickRecord& t) {
  const CrossingInfo& c = t.crossing;
  json crossing = {{"i_star", c.i_star},
                   {"t_cross", Num(c.t_cross)},
                   {"cp_h", PointJson(c.cp_h)},
                   {"cp_r", PointJson(c.cp_r)},
                   {"dir", ToString(c.dir)},
                   {"d_h", Num(c.d_h)},
                   {"d_oh", Num(c.d_oh)},
                   {"d_or", Num(c.d_or)},
                   {"d_hr", Num(c.d_hr)}};
  json preds = {{"hntc", t.predicates.human_needs_to_contribute},
                {"hc", t.predicates.human_is_constrained},
                {"rc", t.predicates.robot_is_constrained}};
  return {{"type", "tick"},
          {"index", t.index},
          {"time", Num(t.time)},
          {"robot", AgentJson(t.robot)},
          {"human", AgentJson(t.human)},
          {"crossing", crossing},
          {"predicates", preds},
          {"ca", t.ca ? Num(*t.ca) : json(nullptr)},
          {"cm", t.cm ? Num(*t.cm) : json(nullptr)},
          {"docking", t.docking},
          {"planning_failed", t.planning_failed},
          {"human_planning_failed", t.human_planning_failed}};
}

TickRecord TickFrom(const json& j) {
  TickRecord t;
  t.index = j.at("index").get<std::size_t>();
  t.time = NumFrom(j.at("time"));
  t.robot = AgentFrom(j.at("robot"));
  t.human = AgentFrom(j.at("human"));
  const json& c = j.at("crossing");
  t.crossing.i_star = c.at("i_star").get<std::size_t>();
  t.crossing.t_cross = NumFrom(c.at("t_cross"));
  t.crossing.cp_h = PointFrom(c.at("cp_h"));
  t.crossing.cp_r = PointFrom(c.at("cp_r"));
  t.crossing.dir =
      Enum<CrossDirection>(c.at("dir"), CrossDirectionFromString);
  t.crossing.d_h = NumFrom(c.at("d_h"));
  t.crossing.d_oh = NumFrom(c.at("d_oh"));
  t.crossing.d_or = NumFrom(c.at("d_or"));
  t.crossing.d_hr = NumFrom(c.at("d_hr"));
  const json& p = j.at("predicates");
  t.predicates.human_needs_to_contribute = p.at("hntc").get<bool>();
  t.predicates.human_is_constrained = p.at("hc").get<bool>();
  t.predicates.robot_is_constrained = p.at("rc").get<bool>();
  if (!j.at("ca").is_null()) t.ca = NumFrom(j.at("ca"));
  if (!j.at("cm").is_null()) t.cm = NumFrom(j.at("cm"));
  t.docking = j.at("docking").get<bool>();
  t.planning_failed = j.at("planning_failed").get<bool>();
  t.human_planning_failed = j.at("human_planning_failed").get<bool>();
  return t;
}

json SummaryJson(const RunTrace& trace) {
  json ca = json::array();
  for (double v : trace.ca_full) ca.push_back(Num(v));
  return {{"type", "summary"},
          {"scenario", trace.scenario},
          {"final_cm", Num(trace.final_cm)},
          {"is_contributing", trace.is_contributing},
          {"crossed", trace.crossed},
          {"timed_out", trace.timed_out},
          {"goals_reached", trace.goals_reached},
          {"min_distance", Num(trace.min_distance)},
          {"ca_full", ca}};
}

}  // namespace

std::string TraceToJsonl(const RunTrace& trace) {
  std::string out;
  json meta = {{"type", "meta"},
               {"scenario", trace.scenario},
               {"config", trace.metadata}};
  out += meta.dump() + "\n";
  for (const TickRecord& t : trace.ticks) out += TickJson(t).dump() + "\n";
  for (const CueEvent& e : trace.events) out += EventJson(e).dump() + "\n";
  out += SummaryJson(trace).dump() + "\n";
  return out;
}

RunTrace ParseTraceJsonl(std::string_view text) {
  RunTrace trace;
  bool have_meta = false;
  bool have_summary = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    try {
      const json j = json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (have_summary) throw Error(ErrorCode::kParse, "record after summary");
      if (type == "meta") {
        if (have_meta) throw Error(ErrorCode::kParse, "duplicate meta record");
        have_meta = true;
        trace.scenario = j.at("scenario").get<std::string>();
        trace.metadata =
            j.at("config").get<std::map<std::string, std::string>>();
      } else if (!have_meta) {
        throw Error(ErrorCode::kParse, "missing meta record");
      } else if (type == "tick") {
        trace.ticks.push_back(TickFrom(j));
      } else if (type == "event") {
        trace.events.push_back(EventFrom(j));
      } else if (type == "summary") {
        have_summary = true;
        trace.final_cm = NumFrom(j.at("final_cm"));
        trace.is_contributing = j.at("is_contributing").get<bool>();
        trace.crossed = j.at("crossed").get<bool>();
        trace.timed_out = j.at("timed_out").get<bool>();
        trace.goals_reached = j.at("goals_reached").get<bool>();
        trace.min_distance = NumFrom(j.at("min_distance"));
        for (const json& v : j.at("ca_full")) {
          trace.ca_full.push_back(NumFrom(v));
        }
      } else {
        throw Error(ErrorCode::kParse, "unknown record type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, where + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse, where + e.what());
    }
  }
  if (!have_summary) {
    throw Error(ErrorCode::kParse,
                "line " + std::to_string(line_no + 1) + ": missing summary");
  }
  return trace;
}

std::string EventsToJsonl(const std::vector<CueEvent>& events) {
  std::string out;
  for (const CueEvent& e : events) out += EventJson(e).dump() + "\n";
  return out;
}

std::string CaToCsv(const RunTrace& trace) {
  std::string out = "index,time,ca,cm\n";
  for (const TickRecord& t : trace.ticks) {
    if (!t.ca) continue;
    out += std::to_string(t.index) + "," + FormatDouble(t.time) + "," +
           FormatDouble(*t.ca) + "," + FormatDouble(t.cm.value_or(0.0)) + "\n";
  }
  return out;
}

std::string SummaryToJson(const RunTrace& trace) {
  json events = json::array();
  for (const CueEvent& e : trace.events) events.push_back(EventJson(e));
  json s = SummaryJson(trace);
  s.erase("type");
  s.erase("ca_full");
  s["events"] = events;
  s["ticks"] = trace.ticks.size();
  return s.dump(2) + "\n";
}

std::vector<double> ReadCaCsv(const std::string& path) {
  const std::string text = ReadFile(path);
  std::istringstream in(text);
  std::string line;
  std::vector<double> out;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string col;
    while (std::getline(ls, col, ',')) cols.push_back(col);
    if (cols.size() != 4) {
      throw Error(ErrorCode::kParse, path + ": line " +
                                         std::to_string(line_no) +
                                         ": expected 4 columns");
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(cols[2], &used);
      if (used != cols[2].size()) throw std::invalid_argument("trailing");
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, path + ": line " +
                                         std::to_string(line_no) +
                                         ": bad ca value");
    }
  }
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path);
}

void WriteRunOutputs(const RunTrace& trace, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir);
  const std::filesystem::path d(dir);
  WriteFile((d / "trace.jsonl").string(), TraceToJsonl(trace));
  WriteFile((d / "events.jsonl").string(), EventsToJsonl(trace.events));
  WriteFile((d / "ca.csv").string(), CaToCsv(trace));
  WriteFile((d / "summary.json").string(), SummaryToJson(trace));
}

RunTrace ReadTrace(const std::string& path) {
  return ParseTraceJsonl(ReadFile(path));
}

}  // namespace coopnav
