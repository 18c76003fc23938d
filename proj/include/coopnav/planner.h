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

#ifndef COOPNAV_PLANNER_H_
#define COOPNAV_PLANNER_H_

#include <cstddef>
#include <vector>

#include "coopnav/error.h"
#include "coopnav/geometry.h"

namespace coopnav {

struct PlannerConfig {
  std::size_t n_waypoints = 60;
  double dt = 0.25;
  double w_length = 1.0;
  double w_obstacle = 200.0;
  double w_separation = 10.0;
  double w_human_deviation = 2.0;
  double w_robot_deviation = 0.2;
  double min_separation = 1.2;
  // Extra clearance kept from walls on top of the agent radius.
  double obstacle_margin = 0.05;
  std::size_t max_iterations = 500;
  // Upper bound on any waypoint's displacement within one iteration (m).
  double step_size = 0.05;
  double convergence_tol = 1e-3;

  // Throws kValidation naming the offending field.
  void Validate() const;
};

// An agent as seen by the planner: where it is, where it heads, how fast it
// nominally walks.
struct PlanningAgent {
  AgentState state;
  Pose goal;
  double nominal_speed = 0.5;
};

struct DualBands {
  Band robot;
  Band human;

  bool operator==(const DualBands&) const = default;
};

struct PlannerStats {
  std::size_t iterations = 0;
  bool converged = false;
  // Total cost before the first iteration and after every accepted one.
  std::vector<double> cost_history;
};

class PlanningError : public Error {
 public:
  PlanningError(const std::string& message, DualBands best_effort)
      : Error(ErrorCode::kPlanningFailed, message),
        best_effort_(std::move(best_effort)) {}

  const DualBands& best_effort() const { return best_effort_; }

 private:
  DualBands best_effort_;
};

// Plans the robot band and the anticipated human band jointly. Both start at
// the agents' current poses and follow their shortest paths at nominal speed
// for n_waypoints stamps of dt (ending at the goal, or at the horizon point
// when the goal is farther than the horizon). Waypoints then move laterally
// to minimize
//   w_length     * band lengths
// + w_obstacle   * sum hinge(radius + margin - clearance)^2
// + w_separation * sum_i hinge(min_separation - |R_i - H_i|)^2
// + w_robot_deviation * sum offset_r^2 + w_human_deviation * sum offset_h^2
// with both endpoints of each band held fixed. Throws PlanningError if the
// result still collides with a wall.
DualBands PlanDualBands(const CorridorWorld& world, const PlanningAgent& robot,
                        const PlanningAgent& human, const PlannerConfig& cfg,
                        PlannerStats* stats = nullptr);

// Same contract as PlanDualBands, warm-started from `previous` advanced to
// the agents' current poses.
DualBands Replan(const DualBands& previous, const CorridorWorld& world,
                 const PlanningAgent& robot, const PlanningAgent& human,
                 const PlannerConfig& cfg, PlannerStats* stats = nullptr);

// Total planner cost of `bands`, measured against the agents' current
// shortest paths. Lets callers compare candidate band pairs directly.
double PlanCost(const DualBands& bands, const CorridorWorld& world,
                const PlanningAgent& robot, const PlanningAgent& human,
                const PlannerConfig& cfg);

// Largest distance from any band position to `path`.
double MaxDeviation(const Band& band, const Band& path);

// Smallest wall clearance minus radius along the band.
double MinClearanceMargin(const Band& band, const CorridorWorld& world,
                          double radius);

// The planner's reference path for an agent: its shortest path, resampled to
// the planning horizon.
Band ReferenceBand(const CorridorWorld& world, const PlanningAgent& agent,
                   const PlannerConfig& cfg);

}  // namespace coopnav

#endif  // COOPNAV_PLANNER_H_
