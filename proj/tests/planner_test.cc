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

#include "coopnav/planner.h"

#include <cmath>

#include "coopnav/error.h"
#include "gtest/gtest.h"

namespace coopnav {
namespace {

struct HeadOn {
  CorridorWorld world;
  PlanningAgent robot;
  PlanningAgent human;
};

HeadOn MakeHeadOn(double width) {
  const double y = width / 2;
  return {CorridorWorld::Straight(10, width),
          {{{0, y, 0}, 0.0, 0.2}, {10, y, 0}, 0.5},
          {{{10, y, M_PI}, 0.0, 0.3}, {0, y, M_PI}, 0.5}};
}

double MaxLateral(const Band& band, const Band& reference) {
  double worst = 0.0;
  for (std::size_t i = 0; i < band.size(); ++i) {
    worst = std::max(worst, Distance(band.PositionAt(i), reference.PositionAt(i)));
  }
  return worst;
}

std::size_t ClosestIndex(const DualBands& b) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < b.robot.size(); ++i) {
    if (Distance(b.robot.PositionAt(i), b.human.PositionAt(i)) <
        Distance(b.robot.PositionAt(best), b.human.PositionAt(best))) {
      best = i;
    }
  }
  return best;
}

TEST(PlannerConfigTest, DefaultsAreValid) {
  const PlannerConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  // The human is expected to deviate far less than the robot.
  EXPECT_DOUBLE_EQ(cfg.w_human_deviation, 10.0 * cfg.w_robot_deviation);
}

TEST(PlannerConfigTest, RejectsNegativeWeight) {
  PlannerConfig cfg;
  cfg.w_separation = -1.0;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = PlannerConfig{};
  cfg.convergence_tol = 0.0;
  EXPECT_THROW(cfg.Validate(), Error);
}

TEST(PlanDualBandsTest, NoInteractionKeepsShortestPaths) {
  const CorridorWorld world = CorridorWorld::Straight(10, 6);
  const PlanningAgent robot{{{0, 1, 0}, 0.0, 0.2}, {10, 1, 0}, 0.5};
  const PlanningAgent human{{{10, 5, M_PI}, 0.0, 0.3}, {0, 5, M_PI}, 0.5};
  const PlannerConfig cfg;
  const DualBands b = PlanDualBands(world, robot, human, cfg);
  EXPECT_LE(MaxLateral(b.robot, ReferenceBand(world, robot, cfg)),
            cfg.convergence_tol);
  EXPECT_LE(MaxLateral(b.human, ReferenceBand(world, human, cfg)),
            cfg.convergence_tol);
}

TEST(PlanDualBandsTest, BandsShareStampsAndStartAtAgents) {
  const HeadOn s = MakeHeadOn(4);
  const PlannerConfig cfg;
  const DualBands b = PlanDualBands(s.world, s.robot, s.human, cfg);
  EXPECT_TRUE(Synchronized(b.robot, b.human));
  EXPECT_EQ(b.robot.size(), cfg.n_waypoints);
  EXPECT_EQ(b.robot.PositionAt(0), s.robot.state.pose.position());
  EXPECT_EQ(b.human.PositionAt(0), s.human.state.pose.position());
}

TEST(PlanDualBandsTest, ReachableGoalIsLastPose) {
  const HeadOn s = MakeHeadOn(4);
  PlanningAgent robot = s.robot;
  robot.goal = {4, 2, 0};
  const DualBands b = PlanDualBands(s.world, robot, s.human, PlannerConfig{});
  EXPECT_EQ(b.robot.poses.back().position(), (Point{4, 2}));
}

TEST(PlanDualBandsTest, CostNeverIncreases) {
  for (double width : {2.0, 4.0}) {
    const HeadOn s = MakeHeadOn(width);
    PlannerStats stats;
    PlanDualBands(s.world, s.robot, s.human, PlannerConfig{}, &stats);
    ASSERT_GE(stats.cost_history.size(), 2u);
    for (std::size_t i = 1; i < stats.cost_history.size(); ++i) {
      EXPECT_LE(stats.cost_history[i], stats.cost_history[i - 1]);
    }
    EXPECT_TRUE(stats.converged);
  }
}

TEST(PlanDualBandsTest, RobotDeviatesMoreInOpenCorridor) {
  const HeadOn s = MakeHeadOn(4);
  const PlannerConfig cfg;
  const DualBands b = PlanDualBands(s.world, s.robot, s.human, cfg);
  const Band rp = ShortestPath(s.world, s.robot.state.pose, s.robot.goal,
                               {0.2, 0.5, cfg.dt});
  const Band hp = ShortestPath(s.world, s.human.state.pose, s.human.goal,
                               {0.3, 0.5, cfg.dt});
  EXPECT_GT(MaxDeviation(b.robot, rp), MaxDeviation(b.human, hp));

  // Handing part of the robot's offset to the human at equal separation
  // costs more.
  const double base = PlanCost(b, s.world, s.robot, s.human, cfg);
  const Band rref = ReferenceBand(s.world, s.robot, cfg);
  for (double eps : {0.1, 0.3, 0.5}) {
    DualBands moved = b;
    for (std::size_t i = 0; i < b.robot.size(); ++i) {
      const double dr = b.robot.poses[i].y - rref.poses[i].y;
      moved.robot.poses[i].y -= eps * dr;
      moved.human.poses[i].y -= eps * dr;
    }
    EXPECT_GT(PlanCost(moved, s.world, s.robot, s.human, cfg), base)
        << "eps=" << eps;
  }
}

TEST(PlanDualBandsTest, HumanDeviatesAtMostHalfInNarrowCorridor) {
  const HeadOn s = MakeHeadOn(2);
  const PlannerConfig cfg;
  const DualBands b = PlanDualBands(s.world, s.robot, s.human, cfg);
  const Band rp = ShortestPath(s.world, s.robot.state.pose, s.robot.goal,
                               {0.2, 0.5, cfg.dt});
  const Band hp = ShortestPath(s.world, s.human.state.pose, s.human.goal,
                               {0.3, 0.5, cfg.dt});
  EXPECT_LE(MaxDeviation(b.human, hp), 0.5 * MaxDeviation(b.robot, rp));
  EXPECT_GE(MinClearanceMargin(b.robot, s.world, 0.2), 0.0);
  EXPECT_GE(MinClearanceMargin(b.human, s.world, 0.3), 0.0);
}

TEST(PlanDualBandsTest, StiffSeparationReachesMinimum) {
  const HeadOn s = MakeHeadOn(4);
  PlannerConfig cfg;
  cfg.w_separation = 1e4;
  cfg.max_iterations = 2000;
  const DualBands b = PlanDualBands(s.world, s.robot, s.human, cfg);
  const std::size_t i = ClosestIndex(b);
  EXPECT_GE(Distance(b.robot.PositionAt(i), b.human.PositionAt(i)),
            cfg.min_separation - cfg.convergence_tol);
}

TEST(PlanDualBandsTest, Deterministic) {
  const HeadOn s = MakeHeadOn(2);
  const DualBands a = PlanDualBands(s.world, s.robot, s.human, PlannerConfig{});
  const DualBands b = PlanDualBands(s.world, s.robot, s.human, PlannerConfig{});
  EXPECT_EQ(a, b);
}

TEST(PlanDualBandsTest, UnreachableGoalPropagates) {
  HeadOn s = MakeHeadOn(4);
  s.world.walls.push_back({5, 0, 5.5, 4});
  try {
    PlanDualBands(s.world, s.robot, s.human, PlannerConfig{});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnreachable);
  }
}

TEST(PlanDualBandsTest, WallCollisionThrowsWithBestEffort) {
  // 1.1 m of free width cannot hold a 0.2 m and a 0.3 m agent side by side
  // once a stiff separation term pushes them apart.
  const HeadOn s = MakeHeadOn(1.1);
  PlannerConfig cfg;
  cfg.w_separation = 1e5;
  cfg.w_obstacle = 1.0;
  try {
    PlanDualBands(s.world, s.robot, s.human, cfg);
    FAIL() << "expected an error";
  } catch (const PlanningError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPlanningFailed);
    EXPECT_STREQ(e.what(), "planning failed");
    EXPECT_EQ(e.best_effort().robot.size(), cfg.n_waypoints);
  }
}

TEST(ReplanTest, UnmovedAgentsKeepThePlan) {
  const HeadOn s = MakeHeadOn(4);
  const PlannerConfig cfg;
  const DualBands first = PlanDualBands(s.world, s.robot, s.human, cfg);
  const DualBands again = Replan(first, s.world, s.robot, s.human, cfg);
  EXPECT_LE(MaxLateral(again.robot, first.robot), cfg.convergence_tol);
  EXPECT_LE(MaxLateral(again.human, first.human), cfg.convergence_tol);
}

TEST(ReplanTest, FarHumanReturnsToShortestPaths) {
  const HeadOn s = MakeHeadOn(6);
  const PlannerConfig cfg;
  const DualBands first = PlanDualBands(s.world, s.robot, s.human, cfg);
  PlanningAgent robot = s.robot;
  robot.state.pose.y = 1.0;
  robot.goal.y = 1.0;
  PlanningAgent far = s.human;
  far.state.pose.y = 5.0;
  far.goal.y = 5.0;
  const DualBands b = Replan(first, s.world, robot, far, cfg);
  EXPECT_LE(MaxLateral(b.robot, ReferenceBand(s.world, robot, cfg)),
            cfg.convergence_tol);
  EXPECT_LE(MaxLateral(b.human, ReferenceBand(s.world, far, cfg)),
            cfg.convergence_tol);
}

TEST(ReplanTest, NeverWorseThanWarmStart) {
  const HeadOn s = MakeHeadOn(4);
  const PlannerConfig cfg;
  const DualBands first = PlanDualBands(s.world, s.robot, s.human, cfg);
  PlanningAgent robot = s.robot;
  PlanningAgent human = s.human;
  robot.state.pose = first.robot.poses[8];
  human.state.pose = first.human.poses[8];
  PlannerStats stats;
  Replan(first, s.world, robot, human, cfg, &stats);
  ASSERT_FALSE(stats.cost_history.empty());
  EXPECT_LE(stats.cost_history.back(), stats.cost_history.front());
}

TEST(ReplanTest, RejectsUnsynchronizedPrevious) {
  const HeadOn s = MakeHeadOn(4);
  DualBands bad;
  bad.robot.poses.resize(3);
  bad.human.poses.resize(4);
  EXPECT_THROW(Replan(bad, s.world, s.robot, s.human, PlannerConfig{}), Error);
}

}  // namespace
}  // namespace coopnav
