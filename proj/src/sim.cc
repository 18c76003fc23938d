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

#include "coopnav/sim.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "coopnav/config.h"
#include "coopnav/error.h"

namespace coopnav {

namespace {

double SignedOffset(const PathProjection& proj) {
  if (proj.side > 0.0) return proj.distance;
  if (proj.side < 0.0) return -proj.distance;
  return 0.0;
}

Point LeftNormal(const Point& t) { return {-t.y, t.x}; }

AgentState MoveTowards(const AgentState& from, const Point& target,
                       double max_step, double dt) {
  AgentState next = from;
  const Point p = from.pose.position();
  Point step = target - p;
  const double len = step.Norm();
  if (len > max_step) step = step * (max_step / len);
  const double moved = step.Norm();
  next.pose.x = p.x + step.x;
  next.pose.y = p.y + step.y;
  if (moved > 1e-9) next.pose.theta = std::atan2(step.y, step.x);
  next.velocity = moved / dt;
  return next;
}

bool AtGoal(const AgentState& s, const Pose& goal, double tol) {
  return Distance(s.pose.position(), goal.position()) <= tol;
}

// One tick along `path` that moves the lateral offset toward `target` by at
// most `lateral_speed * dt` and spends the rest of the speed budget on
// progress. Walls are kept `wall_margin` beyond the radius.
AgentState LateralStep(const AgentState& human, const Band& path,
                       double target, double speed, double lateral_speed,
                       double wall_margin, const CorridorWorld& world,
                       double dt) {
  const Point h = human.pose.position();
  const PathProjection here = ProjectOntoPath(path, h);
  const double offset = SignedOffset(here);
  const double budget = speed * dt;
  const double max_lateral = std::min(lateral_speed * dt, budget);
  const double wanted =
      offset + std::clamp(target - offset, -max_lateral, max_lateral);
  const double forward = std::sqrt(
      std::max(0.0, budget * budget - (wanted - offset) * (wanted - offset)));
  const double arc =
      std::min(ArcLengthAt(path, here) + forward, PathLength(path));
  PathProjection ahead = PointAtArcLength(path, arc);
  if (ahead.tangent.Norm() == 0.0) ahead.tangent = here.tangent;
  const Point normal = LeftNormal(ahead.tangent);

  // Largest move toward `wanted` that stays off the walls.
  const double keep_out = human.radius + wall_margin;
  auto fits = [&](double o) {
    const Point c = ahead.point + normal * o;
    return world.InBounds(c) && world.Clearance(c) >= keep_out;
  };
  double chosen = wanted;
  if (!fits(wanted)) {
    const double from = fits(offset) ? offset : 0.0;
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 40; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (fits(from + (wanted - from) * mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    chosen = from + (wanted - from) * lo;
  }
  const Point next = ahead.point + normal * chosen;
  AgentState out = human;
  const Point step = next - h;
  out.pose.x = next.x;
  out.pose.y = next.y;
  if (step.Norm() > 1e-9) out.pose.theta = std::atan2(step.y, step.x);
  out.velocity = step.Norm() / dt;
  return out;
}

}  // namespace

std::string_view ToString(HumanPolicy policy) {
  return policy == HumanPolicy::kFacilitating ? "facilitating" : "minimal";
}

CorridorWorld WorldSpec::Build() const {
  CorridorWorld world =
      CorridorWorld::Straight(length, corridor_width, wall_thickness,
                              end_margin);
  world.walls.insert(world.walls.end(), blocks.begin(), blocks.end());
  return world;
}

const CueEvent* RunTrace::EventAt(Checkpoint checkpoint) const {
  for (const CueEvent& ev : events) {
    if (ev.checkpoint == checkpoint) return &ev;
  }
  return nullptr;
}

bool HaveCrossed(const Point& robot, const Point& human, const Band& path) {
  const PathProjection proj = ProjectOntoPath(path, human);
  Point t = proj.tangent;
  if (t.Norm() == 0.0) t = path.PositionAt(path.size() - 1) - path.PositionAt(0);
  return (robot - human).Dot(t) <= 0.0;
}

AgentState StepFacilitatingHuman(const AgentState& human, const Pose& goal,
                                 double speed, const AgentState& robot,
                                 const Pose& robot_goal, double robot_speed,
                                 const Band& path, const CorridorWorld& world,
                                 const PlannerConfig& base,
                                 const FacilitatingHumanParams& params,
                                 double dt, DualBands* warm, bool* failed) {
  PlannerConfig cfg = base;
  cfg.w_robot_deviation = params.deviation_weight;
  cfg.w_human_deviation = params.deviation_weight;
  cfg.min_separation = params.min_separation;
  // Roles swap: the human is the planning agent, the robot the other one.
  const PlanningAgent self{human, goal, speed};
  const PlanningAgent other{robot, robot_goal, robot_speed};
  if (failed != nullptr) *failed = false;
  DualBands plan;
  try {
    plan = (warm != nullptr && !warm->robot.empty())
               ? Replan(*warm, world, self, other, cfg)
               : PlanDualBands(world, self, other, cfg);
  } catch (const PlanningError&) {
    if (failed != nullptr) *failed = true;
    AgentState hold = human;
    hold.velocity = 0.0;
    return hold;
  }
  double target = 0.0;
  if (!HaveCrossed(robot.pose.position(), human.pose.position(), path)) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < plan.robot.size(); ++i) {
      const double d =
          Distance(plan.robot.PositionAt(i), plan.human.PositionAt(i));
      if (d < best_dist) {
        best_dist = d;
        best = i;
      }
    }
    target = SignedOffset(ProjectOntoPath(path, plan.robot.PositionAt(best)));
  }
  if (warm != nullptr) *warm = std::move(plan);
  return LateralStep(human, path, target, speed, params.lateral_speed,
                     params.wall_margin, world, dt);
}

AgentState StepMinimalHuman(const AgentState& human, const AgentState& robot,
                            const Band& path, double speed,
                            const CorridorWorld& world,
                            const MinimalHumanParams& params, double dt) {
  const Point h = human.pose.position();
  const double offset = SignedOffset(ProjectOntoPath(path, h));
  double target = 0.0;
  const Point r = robot.pose.position();
  if (Distance(h, r) < params.activation_radius) {
    const double robot_offset = SignedOffset(ProjectOntoPath(path, r));
    const bool still = robot.velocity < params.still_speed;
    const double need = human.radius + robot.radius +
                        (still ? params.static_clearance : params.clearance);
    const double gap = offset - robot_offset;
    if (std::abs(gap) < need) {
      double side = gap > 0.0 ? 1.0 : -1.0;
      if (gap == 0.0) side = robot_offset > 0.0 ? -1.0 : 1.0;
      target = robot_offset + side * need;
    } else {
      target = offset;
    }
  }
  return LateralStep(human, path, target, speed, params.lateral_speed,
                     params.wall_margin, world, dt);
}

RunTrace RunScenario(const ScenarioConfig& cfg) {
  cfg.Validate();
  const CorridorWorld world = cfg.world.Build();
  const Thresholds& th = cfg.thresholds;
  const double dt = cfg.tick_dt;

  RunTrace trace;
  trace.scenario = cfg.name;
  trace.metadata = ToKeyValues(cfg);

  AgentState robot{cfg.robot.start, 0.0, cfg.robot.radius};
  AgentState human{cfg.human.start, 0.0, cfg.human.radius};
  // Contribution is measured against the human's initial shortest path.
  const Band human_path =
      ShortestPath(world, cfg.human.start, cfg.human.goal,
                   {cfg.human.radius, cfg.human.speed, cfg.planner.dt});

  DualBands bands;
  DualBands human_plan;
  DecisionPipeline pipeline;
  ContributionRecord rec;
  rec.gamma = th.gamma;
  bool docking = false;
  bool human_failed = false;
  Pose dock_pose;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> jitter(0.0, cfg.noise_std);
  trace.min_distance = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0;; ++k) {
    TickRecord tick;
    tick.index = k;
    tick.time = static_cast<double>(k) * dt;
    tick.robot = robot;
    tick.human = human;
    tick.human_planning_failed = human_failed;

    const PlanningAgent pr{robot, cfg.robot.goal, cfg.robot.speed};
    const PlanningAgent ph{human, cfg.human.goal, cfg.human.speed};
    try {
      bands = bands.robot.empty()
                  ? PlanDualBands(world, pr, ph, cfg.planner)
                  : Replan(bands, world, pr, ph, cfg.planner);
    } catch (const PlanningError& e) {
      bands = e.best_effort();
      tick.planning_failed = true;
    }
    tick.crossing = ComputeCrossing(bands, world, human_path);
    tick.predicates = AssessSituation(tick.crossing, th);

    if (!trace.crossed &&
        HaveCrossed(robot.pose.position(), human.pose.position(),
                    human_path)) {
      trace.crossed = true;
      trace.events.push_back(pipeline.PostCross(tick.time, rec, th));
      if (docking) docking = false;
    }
    if (!trace.crossed) {
      const double slack = 0.5 * dt;
      if (!pipeline.first_checkpoint_fired() &&
          tick.crossing.t_cross <= cfg.first_checkpoint + slack) {
        trace.events.push_back(
            pipeline.FirstCheckpoint(tick.time, tick.predicates,
                                     tick.crossing));
      } else if (pipeline.first_checkpoint_fired() &&
                 !pipeline.second_checkpoint_fired() &&
                 tick.crossing.t_cross <= cfg.second_checkpoint + slack) {
        const double cm = rec.ca.empty() ? 0.0 : ContributionMetric(rec);
        auto [ev, next_rec] = pipeline.SecondCheckpoint(
            tick.time, cm, tick.crossing.d_h, tick.predicates, tick.crossing,
            std::move(rec), th);
        rec = std::move(next_rec);
        if (ev.kind == CueKind::kDockToWall) {
          docking = true;
          dock_pose = DockTarget(world, robot, human.pose.position());
        }
        trace.events.push_back(std::move(ev));
      }
    }
    if (pipeline.recording()) {
      const double d = SignedContribution(human.pose.position(), human_path,
                                          robot.pose.position());
      rec.ca.push_back(d);
      trace.ca_full.push_back(d);
      tick.ca = d;
      tick.cm = DiscountedAverage(trace.ca_full, th.gamma);
    }
    tick.docking = docking;
    trace.min_distance =
        std::min(trace.min_distance,
                 Distance(robot.pose.position(), human.pose.position()));
    trace.ticks.push_back(tick);

    const bool robot_done = AtGoal(robot, cfg.robot.goal, cfg.goal_tolerance);
    const bool human_done = AtGoal(human, cfg.human.goal, cfg.goal_tolerance);
    if (robot_done && human_done) {
      trace.goals_reached = true;
      break;
    }
    if (k + 1 >= cfg.max_ticks) {
      trace.timed_out = !trace.crossed;
      break;
    }

    AgentState robot_next;
    if (docking) {
      robot_next = MoveTowards(robot, dock_pose.position(),
                               cfg.robot.speed * dt, dt);
    } else {
      robot_next = MoveTowards(robot, PositionAtTime(bands.robot, dt),
                               cfg.robot.speed * dt, dt);
    }
    AgentState human_next;
    if (cfg.human_policy == HumanPolicy::kFacilitating) {
      human_next = StepFacilitatingHuman(
          human, cfg.human.goal, cfg.human.speed, robot, cfg.robot.goal,
          cfg.robot.speed, human_path, world, cfg.planner, cfg.facilitating,
          dt, &human_plan, &human_failed);
    } else {
      human_next = StepMinimalHuman(human, robot, human_path, cfg.human.speed,
                                    world, cfg.minimal, dt);
    }
    if (cfg.noise_std > 0.0) {
      const Point jittered{human_next.pose.x + jitter(rng),
                           human_next.pose.y + jitter(rng)};
      if (world.InBounds(jittered) &&
          world.Clearance(jittered) >= human_next.radius) {
        human_next.pose.x = jittered.x;
        human_next.pose.y = jittered.y;
      }
    }
    robot = robot_next;
    human = human_next;
  }
  pipeline.Finish();
  trace.final_cm = trace.ca_full.empty()
                       ? 0.0
                       : ContributionMetric(trace.ca_full, th.gamma);
  trace.is_contributing = IsContributing(trace.final_cm, th);
  return trace;
}

}  // namespace coopnav
