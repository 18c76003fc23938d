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

#ifndef COOPNAV_ASSESSOR_H_
#define COOPNAV_ASSESSOR_H_

#include <cstddef>
#include <span>
#include <vector>

#include "coopnav/geometry.h"
#include "coopnav/planner.h"

namespace coopnav {

// Side of the human on which the robot passes, in the human's frame.
enum class CrossDirection { kLeft, kRight };

struct CrossingInfo {
  std::size_t i_star = 0;
  double t_cross = 0.0;
  Point cp_h;
  Point cp_r;
  CrossDirection dir = CrossDirection::kLeft;
  double d_h = 0.0;   // deviation of cp_h from the human shortest path
  double d_oh = 0.0;  // obstacle distance at cp_h, away from the robot
  double d_or = 0.0;  // obstacle distance at cp_r, away from the human
  double d_hr = 0.0;  // |cp_r - cp_h|

  bool operator==(const CrossingInfo&) const = default;
};

struct SituationPredicates {
  bool human_needs_to_contribute = false;
  bool human_is_constrained = false;
  bool robot_is_constrained = false;

  bool operator==(const SituationPredicates&) const = default;
};

struct Thresholds {
  double tau_h = 0.15;
  double tau_oh = 1.0;
  double tau_or = 0.3;
  double tau_hr = 1.2;
  double gamma = 0.98;
  double tau_cm = 0.4;

  // Throws kValidation naming the offending field. Gamma must lie in (0, 1).
  void Validate() const;
  bool operator==(const Thresholds&) const = default;
};

// Closest approach of the two bands (earliest index on ties) and the
// distances measured there. Throws kUnsynchronizedBands when the bands do
// not share length, dt and t0.
CrossingInfo ComputeCrossing(const DualBands& bands, const CorridorWorld& world,
                             const Band& human_shortest);

SituationPredicates AssessSituation(const CrossingInfo& info,
                                    const Thresholds& th);

// Append-only series of signed human deviations, reset between assessment
// rounds.
struct ContributionRecord {
  std::vector<double> ca;
  double gamma = 0.98;
  Point robot_side_reference;

  bool operator==(const ContributionRecord&) const = default;
};

// Deviation of `human` from `human_shortest`, positive when the human is on
// the opposite side of the path from `robot` and negative on the same side.
double SignedContribution(const Point& human, const Band& human_shortest,
                          const Point& robot);

ContributionRecord RecordContribution(ContributionRecord rec,
                                      const Pose& human_pose,
                                      const Band& human_shortest,
                                      const Pose& robot_pose);

ContributionRecord ResetRecorder(ContributionRecord rec);

// sum(gamma^(N-i) * ca_i) / sum(gamma^(N-i)) for any gamma > 0. Throws
// kNoObservations on an empty series.
double DiscountedAverage(std::span<const double> ca, double gamma);

// DiscountedAverage restricted to 0 < gamma < 1.
double ContributionMetric(std::span<const double> ca, double gamma);
double ContributionMetric(const ContributionRecord& rec);

inline bool IsContributing(double cm, const Thresholds& th) {
  return cm > th.tau_cm;
}

inline bool StillNeedsToContribute(double cm, double d_h) { return cm < d_h; }

}  // namespace coopnav

#endif  // COOPNAV_ASSESSOR_H_
