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

#include "coopnav/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "coopnav/error.h"

namespace coopnav {

namespace {

struct Field {
  std::string key;
  std::function<std::string(ScenarioConfig&)> get;
  std::function<void(ScenarioConfig&, std::string_view)> set;
};

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void BadValue(std::string_view key, std::string_view value) {
  throw Error(ErrorCode::kValidation, "invalid value '" + std::string(value) +
                                          "' for " + std::string(key));
}

double ParseDouble(std::string_view key, std::string_view text) {
  const std::string_view t = Trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    BadValue(key, text);
  }
  return v;
}

std::uint64_t ParseUnsigned(std::string_view key, std::string_view text) {
  const std::string_view t = Trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) BadValue(key, text);
  return v;
}

std::vector<double> ParseNumbers(std::string_view key, std::string_view text) {
  std::vector<double> out;
  std::string token;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!token.empty()) out.push_back(ParseDouble(key, token));
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  if (!token.empty()) out.push_back(ParseDouble(key, token));
  return out;
}

Pose ParsePose(std::string_view key, std::string_view text) {
  const std::vector<double> v = ParseNumbers(key, text);
  if (v.size() != 2 && v.size() != 3) BadValue(key, text);
  return {v[0], v[1], v.size() == 3 ? WrapAngle(v[2]) : 0.0};
}

std::string FormatPose(const Pose& p) {
  return FormatDouble(p.x) + ", " + FormatDouble(p.y) + ", " +
         FormatDouble(p.theta);
}

std::vector<Rect> ParseBlocks(std::string_view key, std::string_view text) {
  std::vector<Rect> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    const std::string_view item = Trim(text.substr(start, end - start));
    if (!item.empty()) {
      const std::vector<double> v = ParseNumbers(key, item);
      if (v.size() != 4) BadValue(key, item);
      out.push_back({v[0], v[1], v[2], v[3]});
    }
    start = end + 1;
  }
  return out;
}

std::string FormatBlocks(const std::vector<Rect>& blocks) {
  std::string out;
  for (const Rect& r : blocks) {
    if (!out.empty()) out += "; ";
    out += FormatDouble(r.min_x) + " " + FormatDouble(r.min_y) + " " +
           FormatDouble(r.max_x) + " " + FormatDouble(r.max_y);
  }
  return out;
}

template <typename Access>
Field DoubleField(std::string key, Access access) {
  Field f;
  f.key = key;
  f.get = [access](ScenarioConfig& c) { return FormatDouble(access(c)); };
  f.set = [access, key](ScenarioConfig& c, std::string_view v) {
    access(c) = ParseDouble(key, v);
  };
  return f;
}

template <typename Access>
Field CountField(std::string key, Access access) {
  Field f;
  f.key = key;
  f.get = [access](ScenarioConfig& c) { return std::to_string(access(c)); };
  f.set = [access, key](ScenarioConfig& c, std::string_view v) {
    access(c) = static_cast<std::remove_reference_t<decltype(access(c))>>(
        ParseUnsigned(key, v));
  };
  return f;
}

template <typename Access>
Field PoseField(std::string key, Access access) {
  Field f;
  f.key = key;
  f.get = [access](ScenarioConfig& c) { return FormatPose(access(c)); };
  f.set = [access, key](ScenarioConfig& c, std::string_view v) {
    access(c) = ParsePose(key, v);
  };
  return f;
}

#define COOPNAV_REF(expr) [](ScenarioConfig& c) -> auto& { return c.expr; }

const std::vector<Field>& Schema() {
  static const std::vector<Field> fields = [] {
    std::vector<Field> f;
    f.push_back({"scenario.name", [](ScenarioConfig& c) { return c.name; },
                 [](ScenarioConfig& c, std::string_view v) {
                   c.name = std::string(Trim(v));
                 }});
    f.push_back(DoubleField("world.length", COOPNAV_REF(world.length)));
    f.push_back(DoubleField("world.corridor_width",
                            COOPNAV_REF(world.corridor_width)));
    f.push_back(DoubleField("world.wall_thickness",
                            COOPNAV_REF(world.wall_thickness)));
    f.push_back(DoubleField("world.end_margin", COOPNAV_REF(world.end_margin)));
    f.push_back({"world.blocks",
                 [](ScenarioConfig& c) { return FormatBlocks(c.world.blocks); },
                 [](ScenarioConfig& c, std::string_view v) {
                   c.world.blocks = ParseBlocks("world.blocks", v);
                 }});
    f.push_back(PoseField("robot.start", COOPNAV_REF(robot.start)));
    f.push_back(PoseField("robot.goal", COOPNAV_REF(robot.goal)));
    f.push_back(DoubleField("robot.radius", COOPNAV_REF(robot.radius)));
    f.push_back(DoubleField("robot.speed", COOPNAV_REF(robot.speed)));
    f.push_back(PoseField("human.start", COOPNAV_REF(human.start)));
    f.push_back(PoseField("human.goal", COOPNAV_REF(human.goal)));
    f.push_back(DoubleField("human.radius", COOPNAV_REF(human.radius)));
    f.push_back(DoubleField("human.speed", COOPNAV_REF(human.speed)));
    f.push_back({"human.policy",
                 [](ScenarioConfig& c) {
                   return std::string(ToString(c.human_policy));
                 },
                 [](ScenarioConfig& c, std::string_view v) {
                   const std::string_view t = Trim(v);
                   if (t == "facilitating") {
                     c.human_policy = HumanPolicy::kFacilitating;
                   } else if (t == "minimal") {
                     c.human_policy = HumanPolicy::kMinimallyContributing;
                   } else {
                     BadValue("human.policy", v);
                   }
                 }});
    f.push_back(DoubleField("minimal.activation_radius",
                            COOPNAV_REF(minimal.activation_radius)));
    f.push_back(
        DoubleField("minimal.clearance", COOPNAV_REF(minimal.clearance)));
    f.push_back(DoubleField("minimal.static_clearance",
                            COOPNAV_REF(minimal.static_clearance)));
    f.push_back(
        DoubleField("minimal.still_speed", COOPNAV_REF(minimal.still_speed)));
    f.push_back(DoubleField("minimal.lateral_speed",
                            COOPNAV_REF(minimal.lateral_speed)));
    f.push_back(
        DoubleField("minimal.wall_margin", COOPNAV_REF(minimal.wall_margin)));
    f.push_back(DoubleField("facilitating.deviation_weight",
                            COOPNAV_REF(facilitating.deviation_weight)));
    f.push_back(DoubleField("facilitating.min_separation",
                            COOPNAV_REF(facilitating.min_separation)));
    f.push_back(DoubleField("facilitating.lateral_speed",
                            COOPNAV_REF(facilitating.lateral_speed)));
    f.push_back(DoubleField("facilitating.wall_margin",
                            COOPNAV_REF(facilitating.wall_margin)));
    f.push_back(DoubleField("thresholds.tau_h", COOPNAV_REF(thresholds.tau_h)));
    f.push_back(
        DoubleField("thresholds.tau_oh", COOPNAV_REF(thresholds.tau_oh)));
    f.push_back(
        DoubleField("thresholds.tau_or", COOPNAV_REF(thresholds.tau_or)));
    f.push_back(
        DoubleField("thresholds.tau_hr", COOPNAV_REF(thresholds.tau_hr)));
    f.push_back(
        DoubleField("thresholds.gamma", COOPNAV_REF(thresholds.gamma)));
    f.push_back(
        DoubleField("thresholds.tau_cm", COOPNAV_REF(thresholds.tau_cm)));
    f.push_back(
        CountField("planner.n_waypoints", COOPNAV_REF(planner.n_waypoints)));
    f.push_back(DoubleField("planner.dt", COOPNAV_REF(planner.dt)));
    f.push_back(DoubleField("planner.w_length", COOPNAV_REF(planner.w_length)));
    f.push_back(
        DoubleField("planner.w_obstacle", COOPNAV_REF(planner.w_obstacle)));
    f.push_back(
        DoubleField("planner.w_separation", COOPNAV_REF(planner.w_separation)));
    f.push_back(DoubleField("planner.w_human_deviation",
                            COOPNAV_REF(planner.w_human_deviation)));
    f.push_back(DoubleField("planner.w_robot_deviation",
                            COOPNAV_REF(planner.w_robot_deviation)));
    f.push_back(DoubleField("planner.min_separation",
                            COOPNAV_REF(planner.min_separation)));
    f.push_back(DoubleField("planner.obstacle_margin",
                            COOPNAV_REF(planner.obstacle_margin)));
    f.push_back(CountField("planner.max_iterations",
                           COOPNAV_REF(planner.max_iterations)));
    f.push_back(
        DoubleField("planner.step_size", COOPNAV_REF(planner.step_size)));
    f.push_back(DoubleField("planner.convergence_tol",
                            COOPNAV_REF(planner.convergence_tol)));
    f.push_back(DoubleField("checkpoint.first", COOPNAV_REF(first_checkpoint)));
    f.push_back(
        DoubleField("checkpoint.second", COOPNAV_REF(second_checkpoint)));
    f.push_back(DoubleField("sim.tick_dt", COOPNAV_REF(tick_dt)));
    f.push_back(CountField("sim.max_ticks", COOPNAV_REF(max_ticks)));
    f.push_back(CountField("sim.seed", COOPNAV_REF(seed)));
    f.push_back(DoubleField("sim.noise_std", COOPNAV_REF(noise_std)));
    f.push_back(DoubleField("sim.goal_tolerance", COOPNAV_REF(goal_tolerance)));
    return f;
  }();
  return fields;
}

#undef COOPNAV_REF

const Field* FindField(std::string_view key) {
  for (const Field& f : Schema()) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

const Field& ResolveField(std::string_view key) {
  if (const Field* f = FindField(key)) return *f;
  if (key.find('.') == std::string_view::npos) {
    const Field* match = nullptr;
    for (const Field& f : Schema()) {
      const std::string_view leaf =
          std::string_view(f.key).substr(f.key.find('.') + 1);
      if (leaf != key) continue;
      if (match != nullptr) {
        throw Error(ErrorCode::kValidation,
                    "ambiguous key '" + std::string(key) + "'");
      }
      match = &f;
    }
    if (match != nullptr) return *match;
  }
  throw Error(ErrorCode::kValidation, "unknown key '" + std::string(key) + "'");
}

bool FreeFor(const CorridorWorld& world, const Pose& p, double radius) {
  return world.InBounds(p.position()) &&
         world.Clearance(p.position()) >= radius;
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<std::string> SchemaKeys() {
  std::vector<std::string> keys;
  for (const Field& f : Schema()) keys.push_back(f.key);
  return keys;
}

void ApplyOverride(ScenarioConfig& cfg, std::string_view key,
                   std::string_view value) {
  ResolveField(Trim(key)).set(cfg, value);
}

ScenarioConfig ParseScenario(std::string_view text) {
  ScenarioConfig cfg;
  std::vector<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(Trim(line.substr(0, eq)));
    const Field* field = FindField(key);
    if (field == nullptr) {
      throw Error(ErrorCode::kValidation, "line " + std::to_string(line_no) +
                                              ": unknown key '" + key + "'");
    }
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      throw Error(ErrorCode::kValidation, "line " + std::to_string(line_no) +
                                              ": duplicate key '" + key + "'");
    }
    seen.push_back(key);
    field->set(cfg, line.substr(eq + 1));
  }
  return cfg;
}

ScenarioConfig LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseScenario(ss.str());
}

std::map<std::string, std::string> ToKeyValues(const ScenarioConfig& cfg) {
  ScenarioConfig copy = cfg;
  std::map<std::string, std::string> kv;
  for (const Field& f : Schema()) kv[f.key] = f.get(copy);
  return kv;
}

ScenarioConfig FromKeyValues(const std::map<std::string, std::string>& kv) {
  ScenarioConfig cfg;
  for (const auto& [key, value] : kv) {
    const Field* f = FindField(key);
    if (f == nullptr) {
      throw Error(ErrorCode::kValidation, "unknown key '" + key + "'");
    }
    f->set(cfg, value);
  }
  return cfg;
}

std::string SerializeScenario(const ScenarioConfig& cfg) {
  ScenarioConfig copy = cfg;
  std::string out;
  for (const Field& f : Schema()) out += f.key + " = " + f.get(copy) + "\n";
  return out;
}

void ScenarioConfig::Validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::kValidation, what);
  };
  require(world.corridor_width > 0.0,
          "world.corridor_width must be positive");
  require(world.length > 0.0, "world.length must be positive");
  require(world.wall_thickness > 0.0, "world.wall_thickness must be positive");
  require(world.end_margin >= 0.0, "world.end_margin must be non-negative");
  for (const Rect& b : world.blocks) {
    require(b.max_x > b.min_x && b.max_y > b.min_y,
            "world.blocks has an empty rectangle");
  }
  require(robot.radius > 0.0, "robot.radius must be positive");
  require(human.radius > 0.0, "human.radius must be positive");
  require(robot.speed > 0.0, "robot.speed must be positive");
  require(human.speed > 0.0, "human.speed must be positive");
  require(minimal.activation_radius > 0.0,
          "minimal.activation_radius must be positive");
  require(minimal.clearance >= 0.0, "minimal.clearance must be non-negative");
  require(minimal.static_clearance >= 0.0,
          "minimal.static_clearance must be non-negative");
  require(minimal.lateral_speed > 0.0,
          "minimal.lateral_speed must be positive");
  require(facilitating.deviation_weight >= 0.0,
          "facilitating.deviation_weight must be non-negative");
  require(facilitating.min_separation > 0.0,
          "facilitating.min_separation must be positive");
  require(facilitating.lateral_speed > 0.0 &&
              facilitating.lateral_speed <= human.speed,
          "facilitating.lateral_speed must be in (0, human.speed]");
  require(facilitating.wall_margin >= 0.0,
          "facilitating.wall_margin must be non-negative");
  require(minimal.wall_margin >= 0.0, "minimal.wall_margin must be non-negative");
  require(first_checkpoint > second_checkpoint && second_checkpoint > 0.0,
          "checkpoint.first must exceed checkpoint.second > 0");
  require(tick_dt > 0.0, "sim.tick_dt must be positive");
  require(max_ticks > 0, "sim.max_ticks must be positive");
  require(noise_std >= 0.0, "sim.noise_std must be non-negative");
  require(goal_tolerance > 0.0, "sim.goal_tolerance must be positive");
  thresholds.Validate();
  planner.Validate();

  const CorridorWorld w = world.Build();
  require(FreeFor(w, robot.start, robot.radius),
          "robot.start is not in free space");
  require(FreeFor(w, robot.goal, robot.radius),
          "robot.goal is not in free space");
  require(FreeFor(w, human.start, human.radius),
          "human.start is not in free space");
  require(FreeFor(w, human.goal, human.radius),
          "human.goal is not in free space");
  // Each goal lies beyond the other agent's start along the travel axis.
  const Point robot_dir = robot.goal.position() - robot.start.position();
  const Point human_dir = human.goal.position() - human.start.position();
  require(robot_dir.Dot(robot.goal.position() - human.start.position()) >= 0.0,
          "robot.goal must lie beyond human.start");
  require(human_dir.Dot(human.goal.position() - robot.start.position()) >= 0.0,
          "human.goal must lie beyond robot.start");
}

}  // namespace coopnav
