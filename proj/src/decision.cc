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

#include <algorithm>
#include <array>
#include <limits>

#include "coopnav/error.h"

namespace coopnav {

namespace {

constexpr std::array<std::pair<CueKind, std::string_view>, 7> kCueNames = {{
    {CueKind::kInformDirection, "InformDirection"},
    {CueKind::kInformConstrainedSuggestDirection,
     "InformConstrainedSuggestDirection"},
    {CueKind::kIndicateWillDockIfNeeded, "IndicateWillDockIfNeeded"},
    {CueKind::kAskMoveMore, "AskMoveMore"},
    {CueKind::kDockToWall, "DockToWall"},
    {CueKind::kThankYou, "ThankYou"},
    {CueKind::kSilent, "Silent"},
}};

constexpr std::array<std::pair<Checkpoint, std::string_view>, 3>
    kCheckpointNames = {{{Checkpoint::kFirst, "First"},
                         {Checkpoint::kSecond, "Second"},
                         {Checkpoint::kPostCross, "PostCross"}}};

template <typename E, std::size_t N>
std::optional<E> Lookup(const std::array<std::pair<E, std::string_view>, N>& t,
                        std::string_view s) {
  for (const auto& [value, name] : t) {
    if (name == s) return value;
  }
  return std::nullopt;
}

RationaleItem Item(std::string_view name, bool value) {
  return {std::string(name), value};
}

bool CarriesDirection(CueKind kind) {
  return kind == CueKind::kInformDirection ||
         kind == CueKind::kInformConstrainedSuggestDirection;
}

}  // namespace

std::optional<bool> CueEvent::Rationale(std::string_view name) const {
  for (const RationaleItem& item : rationale) {
    if (item.name == name) return item.value;
  }
  return std::nullopt;
}

std::string_view ToString(CueKind kind) {
  for (const auto& [value, name] : kCueNames) {
    if (value == kind) return name;
  }
  return "Unknown";
}

std::string_view ToString(Checkpoint checkpoint) {
  for (const auto& [value, name] : kCheckpointNames) {
    if (value == checkpoint) return name;
  }
  return "Unknown";
}

std::string_view ToString(CrossDirection dir) {
  return dir == CrossDirection::kLeft ? "Left" : "Right";
}

std::string_view ToString(Phase phase) {
  switch (phase) {
    case Phase::kIdle:
      return "Idle";
    case Phase::kRecording:
      return "Recording";
    case Phase::kSecondWindow:
      return "SecondWindow";
    case Phase::kCrossed:
      return "Crossed";
    case Phase::kDone:
      return "Done";
  }
  return "Unknown";
}

std::optional<CueKind> CueKindFromString(std::string_view s) {
  return Lookup(kCueNames, s);
}

std::optional<Checkpoint> CheckpointFromString(std::string_view s) {
  return Lookup(kCheckpointNames, s);
}

std::optional<CrossDirection> CrossDirectionFromString(std::string_view s) {
  if (s == "Left") return CrossDirection::kLeft;
  if (s == "Right") return CrossDirection::kRight;
  return std::nullopt;
}

CueKind FirstCheckpointCue(const SituationPredicates& preds) {
  if (preds.human_needs_to_contribute) {
    if (!preds.robot_is_constrained) return CueKind::kInformDirection;
    return preds.human_is_constrained
               ? CueKind::kIndicateWillDockIfNeeded
               : CueKind::kInformConstrainedSuggestDirection;
  }
  return preds.robot_is_constrained ? CueKind::kInformDirection
                                    : CueKind::kSilent;
}

CueEvent DecisionPipeline::FirstCheckpoint(double time,
                                           const SituationPredicates& preds,
                                           const CrossingInfo& info) {
  if (first_fired_) {
    throw Error(ErrorCode::kPipelineOrder, "checkpoint already fired");
  }
  if (phase_ != Phase::kIdle) {
    throw Error(ErrorCode::kPipelineOrder, "pipeline order violation");
  }
  CueEvent ev;
  ev.time = time;
  ev.checkpoint = Checkpoint::kFirst;
  ev.kind = FirstCheckpointCue(preds);
  if (CarriesDirection(ev.kind)) ev.dir = info.dir;
  ev.rationale = {Item(kHumanNeedsToContribute, preds.human_needs_to_contribute),
                  Item(kRobotIsConstrained, preds.robot_is_constrained)};
  if (preds.human_needs_to_contribute && preds.robot_is_constrained) {
    ev.rationale.push_back(
        Item(kHumanIsConstrained, preds.human_is_constrained));
  }
  first_fired_ = true;
  phase_ = Phase::kRecording;
  return ev;
}

std::pair<CueEvent, ContributionRecord> DecisionPipeline::SecondCheckpoint(
    double time, double cm, double d_h, const SituationPredicates& preds_now,
    const CrossingInfo& info_now, ContributionRecord rec,
    const Thresholds& th) {
  if (second_fired_) {
    throw Error(ErrorCode::kPipelineOrder, "checkpoint already fired");
  }
  if (!first_fired_ || phase_ != Phase::kRecording) {
    throw Error(ErrorCode::kPipelineOrder, "pipeline order violation");
  }
  CueEvent ev;
  ev.time = time;
  ev.checkpoint = Checkpoint::kSecond;
  const bool still = StillNeedsToContribute(cm, d_h);
  ev.rationale.push_back(Item(kStillNeedsToContribute, still));
  if (!still) {
    ev.kind = CueKind::kSilent;
  } else {
    ev.rationale.push_back(
        Item(kRobotIsConstrained, preds_now.robot_is_constrained));
    if (!preds_now.robot_is_constrained) {
      ev.kind = CueKind::kInformDirection;
      ev.dir = info_now.dir;
    } else {
      const bool contributing = IsContributing(cm, th);
      ev.rationale.push_back(Item(kIsContributing, contributing));
      rec = ResetRecorder(std::move(rec));
      ev.kind = contributing ? CueKind::kAskMoveMore : CueKind::kDockToWall;
    }
  }
  second_fired_ = true;
  phase_ = Phase::kSecondWindow;
  return {std::move(ev), std::move(rec)};
}

CueEvent DecisionPipeline::PostCross(double time,
                                     const ContributionRecord& rec_final,
                                     const Thresholds& th) {
  if (post_cross_fired_) {
    throw Error(ErrorCode::kPipelineOrder, "checkpoint already fired");
  }
  const double cm =
      rec_final.ca.empty() ? 0.0 : DiscountedAverage(rec_final.ca,
                                                     rec_final.gamma);
  const bool contributing = IsContributing(cm, th);
  CueEvent ev;
  ev.time = time;
  ev.checkpoint = Checkpoint::kPostCross;
  ev.kind = contributing ? CueKind::kThankYou : CueKind::kSilent;
  ev.rationale = {Item(kIsContributing, contributing)};
  post_cross_fired_ = true;
  thanked_ = contributing;
  phase_ = Phase::kCrossed;
  return ev;
}

Pose DockTarget(const CorridorWorld& world, const AgentState& robot,
                const Point& human) {
  const Point p = robot.pose.position();
  const Point away = p - human;
  double best = std::numeric_limits<double>::infinity();
  std::optional<Point> foot;
  for (const Rect& w : world.walls) {
    const Point q{std::clamp(p.x, w.min_x, w.max_x),
                  std::clamp(p.y, w.min_y, w.max_y)};
    const double d = Distance(p, q);
    if (d == 0.0 || (q - p).Dot(away) < 0.0) continue;
    if (d < best) {
      best = d;
      foot = q;
    }
  }
  if (!foot) throw Error(ErrorCode::kInvalidArgument, "no dock wall");
  const Point out = (p - *foot) * (1.0 / best);
  const Point target = *foot + out * (robot.radius + kDockStandoff);
  return {target.x, target.y, robot.pose.theta};
}

}  // namespace coopnav
