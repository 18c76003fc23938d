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

#include "coopnav/assessor.h"

#include <cmath>
#include <limits>
#include <string>

#include "coopnav/error.h"

namespace coopnav {

void Thresholds::Validate() const {
  auto require = [](bool ok, const char* field) {
    if (!ok) {
      throw Error(ErrorCode::kValidation,
                  std::string("thresholds.") + field + " is out of range");
    }
  };
  require(tau_h >= 0.0, "tau_h");
  require(tau_oh >= 0.0, "tau_oh");
  require(tau_or >= 0.0, "tau_or");
  require(tau_hr >= 0.0, "tau_hr");
  require(gamma > 0.0 && gamma < 1.0, "gamma");
  require(std::isfinite(tau_cm), "tau_cm");
}

CrossingInfo ComputeCrossing(const DualBands& bands, const CorridorWorld& world,
                             const Band& human_shortest) {
  const Band& r = bands.robot;
  const Band& h = bands.human;
  if (r.empty() || !Synchronized(r, h)) {
    throw Error(ErrorCode::kUnsynchronizedBands, "unsynchronized bands");
  }
  CrossingInfo info;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double d = Distance(r.PositionAt(i), h.PositionAt(i));
    if (d < best) {
      best = d;
      info.i_star = i;
    }
  }
  info.t_cross = r.TimeAt(info.i_star);
  info.cp_h = h.PositionAt(info.i_star);
  info.cp_r = r.PositionAt(info.i_star);
  info.d_hr = Distance(info.cp_r, info.cp_h);

  const PathProjection proj = ProjectOntoPath(human_shortest, info.cp_h);
  info.d_h = proj.distance;
  Point tangent = proj.tangent;
  if (tangent.Norm() == 0.0) {
    const double th = h.poses[info.i_star].theta;
    tangent = {std::cos(th), std::sin(th)};
  }
  info.dir = tangent.Cross(info.cp_r - info.cp_h) > 0.0 ? CrossDirection::kLeft
                                                        : CrossDirection::kRight;
  info.d_oh = DistanceToNearestObstacleOnSide(world, info.cp_h, info.cp_r);
  info.d_or = DistanceToNearestObstacleOnSide(world, info.cp_r, info.cp_h);
  return info;
}

SituationPredicates AssessSituation(const CrossingInfo& info,
                                    const Thresholds& th) {
  SituationPredicates p;
  p.human_needs_to_contribute = info.d_h > th.tau_h;
  p.human_is_constrained = info.d_oh < th.tau_oh;
  p.robot_is_constrained = info.d_hr < th.tau_hr && info.d_or < th.tau_or;
  return p;
}

double SignedContribution(const Point& human, const Band& human_shortest,
                          const Point& robot) {
  const PathProjection ph = ProjectOntoPath(human_shortest, human);
  if (ph.distance == 0.0) return 0.0;
  const PathProjection pr = ProjectOntoPath(human_shortest, robot);
  // A robot sitting on the path line has no side; any move off it opens the
  // gap.
  const bool same_side = (ph.side > 0.0 && pr.side > 0.0) ||
                         (ph.side < 0.0 && pr.side < 0.0);
  return same_side ? -ph.distance : ph.distance;
}

ContributionRecord RecordContribution(ContributionRecord rec,
                                      const Pose& human_pose,
                                      const Band& human_shortest,
                                      const Pose& robot_pose) {
  rec.robot_side_reference = robot_pose.position();
  rec.ca.push_back(SignedContribution(human_pose.position(), human_shortest,
                                      robot_pose.position()));
  return rec;
}

ContributionRecord ResetRecorder(ContributionRecord rec) {
  rec.ca.clear();
  return rec;
}

double DiscountedAverage(std::span<const double> ca, double gamma) {
  if (ca.empty()) throw Error(ErrorCode::kNoObservations, "no observations");
  if (!(gamma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  }
  // Horner form: after the loop num = sum gamma^(N-i) ca_i.
  double num = 0.0;
  double den = 0.0;
  for (double v : ca) {
    num = num * gamma + v;
    den = den * gamma + 1.0;
  }
  return num / den;
}

double ContributionMetric(std::span<const double> ca, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must lie in (0, 1)");
  }
  return DiscountedAverage(ca, gamma);
}

double ContributionMetric(const ContributionRecord& rec) {
  return ContributionMetric(rec.ca, rec.gamma);
}

}  // namespace coopnav
