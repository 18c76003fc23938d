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

#ifndef COOPNAV_SIM_H_
#define COOPNAV_SIM_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coopnav/assessor.h"
#include "coopnav/decision.h"
#include "coopnav/geometry.h"
#include "coopnav/planner.h"

namespace coopnav {

enum class HumanPolicy { kFacilitating, kMinimallyContributing };

std::string_view ToString(HumanPolicy policy);

struct AgentSpec {
  Pose start;
  Pose goal;
  double radius = 0.3;
  double speed = 0.5;
};

// Reactive last-moment avoidance.
struct MinimalHumanParams {
  double activation_radius = 1.5;
  // Edge-to-edge gap kept from a moving robot.
  double clearance = 0.6;
  // Edge-to-edge gap kept from a robot standing still.
  double static_clearance = 0.15;
  // Below this speed the robot counts as standing still (m/s).
  double still_speed = 0.05;
  double lateral_speed = 0.5;
  double wall_margin = 0.05;
};

// The facilitating human plans its own dual bands with equal deviation
// weights for itself and the robot, then heads for its planned crossing
// offset right away instead of waiting for the crossing.
struct FacilitatingHumanParams {
  double deviation_weight = 0.1;
  double min_separation = 1.4;
  double lateral_speed = 0.35;
  double wall_margin = 0.05;
};

// Generating parameters of a straight corridor world plus extra blocks.
struct WorldSpec {
  double length = 10.0;
  double corridor_width = 4.0;
  double wall_thickness = 0.5;
  double end_margin = 1.0;
  std::vector<Rect> blocks;

  CorridorWorld Build() const;
};

struct ScenarioConfig {
  std::string name = "scenario";
  WorldSpec world;
  AgentSpec robot{{0.0, 2.0, 0.0}, {10.0, 2.0, 0.0}, 0.2, 0.5};
  AgentSpec human{{10.0, 2.0, M_PI}, {0.0, 2.0, M_PI}, 0.3, 0.5};
  HumanPolicy human_policy = HumanPolicy::kFacilitating;
  Thresholds thresholds;
  PlannerConfig planner;
  MinimalHumanParams minimal;
  FacilitatingHumanParams facilitating;
  double first_checkpoint = 7.0;
  double second_checkpoint = 4.0;
  double tick_dt = 0.25;
  std::size_t max_ticks = 400;
  std::uint64_t seed = 0;
  double noise_std = 0.0;  // human position jitter per tick, off by default
  double goal_tolerance = 0.3;

  // Throws kValidation naming the first offending field.
  void Validate() const;
};

struct TickRecord {
  std::size_t index = 0;
  double time = 0.0;
  AgentState robot;
  AgentState human;
  CrossingInfo crossing;
  SituationPredicates predicates;
  std::optional<double> ca;       // entry appended this tick, if recording
  std::optional<double> cm;       // CM of everything recorded so far
  bool docking = false;
  bool planning_failed = false;
  // The facilitating human could not plan the step that led here and held.
  bool human_planning_failed = false;

  bool operator==(const TickRecord&) const = default;
};

struct RunTrace {
  std::string scenario;
  // Flat key/value dump of the configuration the run used.
  std::map<std::string, std::string> metadata;
  std::vector<TickRecord> ticks;
  std::vector<CueEvent> events;
  std::vector<double> ca_full;
  double final_cm = 0.0;
  bool is_contributing = false;
  bool crossed = false;
  bool timed_out = false;
  bool goals_reached = false;
  double min_distance = 0.0;  // closest center-to-center approach

  const CueEvent* EventAt(Checkpoint checkpoint) const;
  bool operator==(const RunTrace&) const = default;
};

// Facilitating human: one tick toward the lateral offset its own dual-band
// plan assigns it at the crossing, measured from `path`. `warm` carries the
// previous plan between ticks and may be empty. On planning failure the
// human holds position and `failed` is set.
AgentState StepFacilitatingHuman(const AgentState& human, const Pose& goal,
                                 double speed, const AgentState& robot,
                                 const Pose& robot_goal, double robot_speed,
                                 const Band& path, const CorridorWorld& world,
                                 const PlannerConfig& base,
                                 const FacilitatingHumanParams& params,
                                 double dt, DualBands* warm,
                                 bool* failed = nullptr);

// Minimally contributing human: walks `path` (its shortest path) at `speed`
// and sidesteps only while the robot is within the activation radius.
AgentState StepMinimalHuman(const AgentState& human, const AgentState& robot,
                            const Band& path, double speed,
                            const CorridorWorld& world,
                            const MinimalHumanParams& params, double dt);

// True once the robot is no longer ahead of the human along the human's
// shortest-path direction.
bool HaveCrossed(const Point& robot, const Point& human, const Band& path);

// Full fixed-step run; deterministic for a given config.
RunTrace RunScenario(const ScenarioConfig& cfg);

}  // namespace coopnav

#endif  // COOPNAV_SIM_H_
