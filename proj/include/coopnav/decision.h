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

#ifndef COOPNAV_DECISION_H_
#define COOPNAV_DECISION_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coopnav/assessor.h"
#include "coopnav/geometry.h"

namespace coopnav {

enum class CueKind {
  kInformDirection,
  kInformConstrainedSuggestDirection,
  kIndicateWillDockIfNeeded,
  kAskMoveMore,
  kDockToWall,
  kThankYou,
  kSilent,
};

enum class Checkpoint { kFirst, kSecond, kPostCross };

enum class Phase { kIdle, kRecording, kSecondWindow, kCrossed, kDone };

struct RationaleItem {
  std::string name;
  bool value = false;

  bool operator==(const RationaleItem&) const = default;
};

struct CueEvent {
  double time = 0.0;
  CueKind kind = CueKind::kSilent;
  std::optional<CrossDirection> dir;  // set for the two direction cues
  Checkpoint checkpoint = Checkpoint::kFirst;
  std::vector<RationaleItem> rationale;

  // Value of a rationale entry, if the branch consulted it.
  std::optional<bool> Rationale(std::string_view name) const;
  bool operator==(const CueEvent&) const = default;
};

std::string_view ToString(CueKind kind);
std::string_view ToString(Checkpoint checkpoint);
std::string_view ToString(CrossDirection dir);
std::string_view ToString(Phase phase);
std::optional<CueKind> CueKindFromString(std::string_view s);
std::optional<Checkpoint> CheckpointFromString(std::string_view s);
std::optional<CrossDirection> CrossDirectionFromString(std::string_view s);

// Rationale keys.
inline constexpr std::string_view kHumanNeedsToContribute =
    "HumanNeedsToContribute";
inline constexpr std::string_view kHumanIsConstrained = "HumanIsConstrained";
inline constexpr std::string_view kRobotIsConstrained = "RobotIsConstrained";
inline constexpr std::string_view kStillNeedsToContribute =
    "StillNeedsToContribute";
inline constexpr std::string_view kIsContributing = "IsContributing";

// Branch table of the first checkpoint; pure.
CueKind FirstCheckpointCue(const SituationPredicates& preds);

// Two-checkpoint pipeline plus the post-crossing thanks. One instance per
// scenario run; phases only move forward.
class DecisionPipeline {
 public:
  // Fires once, when the estimated time to cross first drops to the first
  // threshold. Starts contribution recording. Throws kPipelineOrder if it
  // already fired.
  CueEvent FirstCheckpoint(double time, const SituationPredicates& preds,
                           const CrossingInfo& info);

  // Re-assessment at the second threshold. Returns the cue and the recorder,
  // reset when the constrained branch consulted it.
  std::pair<CueEvent, ContributionRecord> SecondCheckpoint(
      double time, double cm, double d_h, const SituationPredicates& preds_now,
      const CrossingInfo& info_now, ContributionRecord rec,
      const Thresholds& th);

  // Stops recording and thanks a contributing human. An empty recorder
  // counts as CM = 0.
  CueEvent PostCross(double time, const ContributionRecord& rec_final,
                     const Thresholds& th);

  void Finish() { phase_ = Phase::kDone; }

  Phase phase() const { return phase_; }
  bool first_checkpoint_fired() const { return first_fired_; }
  bool second_checkpoint_fired() const { return second_fired_; }
  bool thanked() const { return thanked_; }
  bool recording() const {
    return phase_ == Phase::kRecording || phase_ == Phase::kSecondWindow;
  }

 private:
  Phase phase_ = Phase::kIdle;
  bool first_fired_ = false;
  bool second_fired_ = false;
  bool post_cross_fired_ = false;
  bool thanked_ = false;
};

// Dock pose next to the wall nearest the robot on the side away from the
// human: the perpendicular foot point pushed out by radius + 0.05 m, heading
// kept. Throws kInvalidArgument ("no dock wall") if no wall qualifies.
Pose DockTarget(const CorridorWorld& world, const AgentState& robot,
                const Point& human);

inline constexpr double kDockStandoff = 0.05;

}  // namespace coopnav

#endif  // COOPNAV_DECISION_H_
