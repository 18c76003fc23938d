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

#include "coopnav/decision.h"

#include <random>
#include <set>

#include "coopnav/error.h"
#include "gtest/gtest.h"

namespace coopnav {
namespace {

SituationPredicates Preds(bool hntc, bool hc, bool rc) {
  SituationPredicates p;
  p.human_needs_to_contribute = hntc;
  p.human_is_constrained = hc;
  p.robot_is_constrained = rc;
  return p;
}

CrossingInfo Info(CrossDirection dir = CrossDirection::kLeft) {
  CrossingInfo info;
  info.dir = dir;
  return info;
}

CueKind Expected(bool hntc, bool hc, bool rc) {
  if (hntc && !rc) return CueKind::kInformDirection;
  if (hntc && rc && !hc) return CueKind::kInformConstrainedSuggestDirection;
  if (hntc && rc && hc) return CueKind::kIndicateWillDockIfNeeded;
  if (!hntc && rc) return CueKind::kInformDirection;
  return CueKind::kSilent;
}

TEST(FirstCheckpointTest, AllEightCombinations) {
  std::set<CueKind> seen;
  for (int bits = 0; bits < 8; ++bits) {
    const bool hntc = bits & 1;
    const bool hc = bits & 2;
    const bool rc = bits & 4;
    DecisionPipeline pipeline;
    const CueEvent ev =
        pipeline.FirstCheckpoint(3.0, Preds(hntc, hc, rc), Info());
    EXPECT_EQ(ev.kind, Expected(hntc, hc, rc)) << "bits=" << bits;
    EXPECT_EQ(ev.checkpoint, Checkpoint::kFirst);
    EXPECT_EQ(ev.Rationale(kHumanNeedsToContribute), hntc);
    EXPECT_EQ(ev.Rationale(kRobotIsConstrained), rc);
    const bool directional = ev.kind == CueKind::kInformDirection ||
                             ev.kind == CueKind::kInformConstrainedSuggestDirection;
    EXPECT_EQ(ev.dir.has_value(), directional);
    seen.insert(ev.kind);
  }
  // Four distinct kinds; InformDirection appears on two branches.
  EXPECT_EQ(seen.size(), 4u);
}

TEST(FirstCheckpointTest, PaperExamples) {
  EXPECT_EQ(FirstCheckpointCue(Preds(true, false, false)),
            CueKind::kInformDirection);
  EXPECT_EQ(FirstCheckpointCue(Preds(true, true, true)),
            CueKind::kIndicateWillDockIfNeeded);
  EXPECT_EQ(FirstCheckpointCue(Preds(false, false, false)), CueKind::kSilent);
}

TEST(FirstCheckpointTest, StartsRecording) {
  DecisionPipeline pipeline;
  EXPECT_FALSE(pipeline.recording());
  pipeline.FirstCheckpoint(3.0, Preds(false, false, false), Info());
  EXPECT_TRUE(pipeline.recording());
  EXPECT_EQ(pipeline.phase(), Phase::kRecording);
}

TEST(FirstCheckpointTest, SecondCallFails) {
  DecisionPipeline pipeline;
  pipeline.FirstCheckpoint(3.0, Preds(true, false, false), Info());
  try {
    pipeline.FirstCheckpoint(3.25, Preds(true, false, false), Info());
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPipelineOrder);
    EXPECT_STREQ(e.what(), "checkpoint already fired");
  }
}

TEST(SecondCheckpointTest, BeforeFirstFails) {
  DecisionPipeline pipeline;
  try {
    pipeline.SecondCheckpoint(6.0, 0.0, 0.4, Preds(true, true, true), Info(),
                              ContributionRecord{}, Thresholds{});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPipelineOrder);
    EXPECT_STREQ(e.what(), "pipeline order violation");
  }
}

TEST(SecondCheckpointTest, TwiceFails) {
  DecisionPipeline pipeline;
  pipeline.FirstCheckpoint(3.0, Preds(true, true, true), Info());
  pipeline.SecondCheckpoint(6.0, 0.9, 0.4, Preds(true, true, true), Info(),
                            ContributionRecord{}, Thresholds{});
  EXPECT_THROW(
      pipeline.SecondCheckpoint(6.25, 0.9, 0.4, Preds(true, true, true),
                                Info(), ContributionRecord{}, Thresholds{}),
      Error);
}

struct SecondCase {
  double cm;
  double d_h;
  bool rc;
  CueKind kind;
  bool reset;
};

TEST(SecondCheckpointTest, Branches) {
  const SecondCase cases[] = {
      {0.05, 0.4, true, CueKind::kDockToWall, true},
      {0.49, 0.6, true, CueKind::kAskMoveMore, true},
      {0.94, 0.5, true, CueKind::kSilent, false},
      {0.1, 0.5, false, CueKind::kInformDirection, false},
  };
  for (const SecondCase& c : cases) {
    DecisionPipeline pipeline;
    pipeline.FirstCheckpoint(3.0, Preds(true, true, true), Info());
    ContributionRecord rec;
    rec.ca = {0.1, 0.2, 0.3};
    auto [ev, next] = pipeline.SecondCheckpoint(
        6.0, c.cm, c.d_h, Preds(true, true, c.rc),
        Info(CrossDirection::kRight), rec, Thresholds{});
    EXPECT_EQ(ev.kind, c.kind) << "cm=" << c.cm;
    EXPECT_EQ(ev.checkpoint, Checkpoint::kSecond);
    EXPECT_EQ(next.ca.empty(), c.reset);
    if (ev.kind == CueKind::kDockToWall) {
      EXPECT_EQ(ev.Rationale(kIsContributing), false);
      EXPECT_EQ(ev.Rationale(kRobotIsConstrained), true);
    }
    if (ev.kind == CueKind::kInformDirection) {
      EXPECT_EQ(ev.dir, CrossDirection::kRight);
    }
    EXPECT_TRUE(pipeline.recording());
  }
}

TEST(SecondCheckpointTest, DockOnlyWhenConstrainedAndNotContributing) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  const Thresholds th;
  for (int i = 0; i < 500; ++i) {
    const double cm = u(rng);
    const double d_h = u(rng);
    const bool rc = i % 2 == 0;
    DecisionPipeline pipeline;
    pipeline.FirstCheckpoint(3.0, Preds(true, true, rc), Info());
    const CueEvent ev =
        pipeline
            .SecondCheckpoint(6.0, cm, d_h, Preds(true, true, rc), Info(),
                              ContributionRecord{}, th)
            .first;
    if (ev.kind == CueKind::kDockToWall) {
      EXPECT_TRUE(rc);
      EXPECT_FALSE(IsContributing(cm, th));
      EXPECT_TRUE(StillNeedsToContribute(cm, d_h));
    }
  }
}

TEST(PostCrossTest, ThanksOnlyContributingHumans) {
  const Thresholds th;
  ContributionRecord high;
  high.ca = {0.94};
  ContributionRecord low;
  low.ca = {0.15};
  DecisionPipeline a;
  EXPECT_EQ(a.PostCross(10.0, high, th).kind, CueKind::kThankYou);
  EXPECT_TRUE(a.thanked());
  EXPECT_EQ(a.phase(), Phase::kCrossed);
  DecisionPipeline b;
  EXPECT_EQ(b.PostCross(10.0, low, th).kind, CueKind::kSilent);
  DecisionPipeline c;
  EXPECT_EQ(c.PostCross(10.0, ContributionRecord{}, th).kind, CueKind::kSilent);
  EXPECT_FALSE(c.recording());
}

TEST(PostCrossTest, FiresOnce) {
  DecisionPipeline pipeline;
  pipeline.PostCross(10.0, ContributionRecord{}, Thresholds{});
  EXPECT_THROW(pipeline.PostCross(10.25, ContributionRecord{}, Thresholds{}),
               Error);
}

TEST(PipelineTest, PhasesMoveForward) {
  DecisionPipeline pipeline;
  EXPECT_EQ(pipeline.phase(), Phase::kIdle);
  pipeline.FirstCheckpoint(3.0, Preds(true, false, false), Info());
  EXPECT_EQ(pipeline.phase(), Phase::kRecording);
  pipeline.SecondCheckpoint(6.0, 0.5, 0.1, Preds(true, false, false), Info(),
                            ContributionRecord{}, Thresholds{});
  EXPECT_EQ(pipeline.phase(), Phase::kSecondWindow);
  ContributionRecord rec;
  rec.ca = {0.5};
  pipeline.PostCross(9.0, rec, Thresholds{});
  EXPECT_EQ(pipeline.phase(), Phase::kCrossed);
  pipeline.Finish();
  EXPECT_EQ(pipeline.phase(), Phase::kDone);
}

TEST(PipelineTest, ReplayIsDeterministic) {
  auto run = [] {
    DecisionPipeline pipeline;
    std::vector<CueEvent> events;
    events.push_back(
        pipeline.FirstCheckpoint(3.0, Preds(true, true, true), Info()));
    ContributionRecord rec;
    rec.ca = {0.0, 0.02};
    auto [ev, next] = pipeline.SecondCheckpoint(
        6.0, 0.02, 0.4, Preds(true, true, true), Info(), rec, Thresholds{});
    events.push_back(ev);
    events.push_back(pipeline.PostCross(12.0, next, Thresholds{}));
    return events;
  };
  EXPECT_EQ(run(), run());
}

TEST(NamesTest, RoundTrip) {
  for (CueKind k :
       {CueKind::kInformDirection, CueKind::kInformConstrainedSuggestDirection,
        CueKind::kIndicateWillDockIfNeeded, CueKind::kAskMoveMore,
        CueKind::kDockToWall, CueKind::kThankYou, CueKind::kSilent}) {
    EXPECT_EQ(CueKindFromString(ToString(k)), k);
  }
  for (Checkpoint c :
       {Checkpoint::kFirst, Checkpoint::kSecond, Checkpoint::kPostCross}) {
    EXPECT_EQ(CheckpointFromString(ToString(c)), c);
  }
  EXPECT_EQ(CrossDirectionFromString("Left"), CrossDirection::kLeft);
  EXPECT_FALSE(CueKindFromString("Wave").has_value());
}

TEST(DockTargetTest, FarWallFromHuman) {
  const CorridorWorld world = CorridorWorld::Straight(10, 3);
  const AgentState robot{{5, 1.0, 0.3}, 0.0, 0.2};
  const Pose dock = DockTarget(world, robot, {7, 2});
  EXPECT_NEAR(dock.x, 5.0, 1e-12);
  EXPECT_NEAR(dock.y, 0.2 + kDockStandoff, 1e-12);
  EXPECT_EQ(dock.theta, 0.3);
}

TEST(DockTargetTest, EquidistantPicksWallAwayFromHuman) {
  const CorridorWorld world = CorridorWorld::Straight(10, 3);
  const AgentState robot{{5, 1.5, 0.0}, 0.0, 0.2};
  EXPECT_LT(DockTarget(world, robot, {6, 2.5}).y, 1.5);
  EXPECT_GT(DockTarget(world, robot, {6, 0.5}).y, 1.5);
}

TEST(DockTargetTest, StandoffFromChosenWall) {
  const CorridorWorld world = CorridorWorld::Straight(10, 3);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ux(0.5, 9.5);
  std::uniform_real_distribution<double> uy(0.3, 2.7);
  for (int i = 0; i < 200; ++i) {
    const AgentState robot{{ux(rng), uy(rng), 0.0}, 0.0, 0.2};
    const Point human{ux(rng), uy(rng)};
    if (Distance(human, robot.pose.position()) < 1e-3) continue;
    const Pose dock = DockTarget(world, robot, human);
    EXPECT_NEAR(world.Clearance(dock.position()), 0.2 + kDockStandoff, 1e-6);
    // The dock lies on the robot's side, away from the human.
    EXPECT_GE((dock.position() - robot.pose.position())
                  .Dot(robot.pose.position() - human),
              -1e-9);
  }
}

TEST(DockTargetTest, NoWallOnThatSide) {
  CorridorWorld world;
  world.corridor_width = 4;
  world.bounds = {-10, -10, 10, 10};
  world.walls = {{-1, -6, 1, -5}};
  const AgentState robot{{0, 0, 0}, 0.0, 0.2};
  try {
    DockTarget(world, robot, {0, -3});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "no dock wall");
  }
}

}  // namespace
}  // namespace coopnav
