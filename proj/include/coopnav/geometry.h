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

#ifndef COOPNAV_GEOMETRY_H_
#define COOPNAV_GEOMETRY_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace coopnav {

struct Point {
  double x = 0.0;
  double y = 0.0;

  Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
  Point operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Point&) const = default;

  double Dot(const Point& o) const { return x * o.x + y * o.y; }
  // z-component of the planar cross product; positive when `o` lies to the
  // left of this vector.
  double Cross(const Point& o) const { return x * o.y - y * o.x; }
  double Norm() const { return std::hypot(x, y); }
};

inline double Distance(const Point& a, const Point& b) { return (a - b).Norm(); }

// Wraps to (-pi, pi].
double WrapAngle(double angle);

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Point position() const { return {x, y}; }
  bool operator==(const Pose&) const = default;
};

// Axis-aligned rectangle, used both for walls and for the world extent.
struct Rect {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool Contains(const Point& p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
  Rect Inflated(double margin) const {
    return {min_x - margin, min_y - margin, max_x + margin, max_y + margin};
  }
  bool operator==(const Rect&) const = default;
};

double DistanceToRect(const Rect& rect, const Point& p);

// A uniformly time-stamped pose sequence. Pose i is reached at t0 + i * dt.
struct Band {
  std::vector<Pose> poses;
  double dt = 0.25;
  double t0 = 0.0;

  std::size_t size() const { return poses.size(); }
  bool empty() const { return poses.empty(); }
  double TimeAt(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
  Point PositionAt(std::size_t i) const { return poses[i].position(); }

  // Throws kInvalidArgument when the band is empty or dt is not positive.
  void Validate() const;
  bool operator==(const Band&) const = default;
};

double PathLength(const Band& band);

// Both bands of a pair must share length, dt and t0.
bool Synchronized(const Band& a, const Band& b);

// Two long walls along the x axis with a free gap of `corridor_width`, plus
// any number of extra blocks.
struct CorridorWorld {
  std::vector<Rect> walls;
  double corridor_width = 0.0;
  Rect bounds;

  static constexpr double kOpenWidthThreshold = 3.0;

  // Long walls occupy y in [-wall_thickness, 0] and
  // [width, width + wall_thickness], spanning x in [-margin, length + margin].
  static CorridorWorld Straight(double length, double width,
                                double wall_thickness = 0.5,
                                double end_margin = 1.0);

  bool IsOpen() const { return corridor_width > kOpenWidthThreshold; }
  bool IsNarrow() const { return corridor_width < kOpenWidthThreshold; }
  bool InBounds(const Point& p) const { return bounds.Contains(p); }

  // Throws kValidation on a non-positive width or an empty extent.
  void Validate() const;

  // Unsided distance to the nearest wall, capped at kNoObstacleDistance.
  double Clearance(const Point& p) const;
};

struct AgentState {
  Pose pose;
  double velocity = 0.0;  // forward speed, m/s
  double radius = 0.3;

  bool operator==(const AgentState&) const = default;
};

// Stand-in for "no obstacle on that side"; keeps every comparison finite.
inline constexpr double kNoObstacleDistance = 1e6;

// Distance from `p` to the nearest wall point on the far side of `p` as seen
// from `away_from`: candidates q satisfy (q - p) . (p - away_from) >= 0.
// Throws kOutOfBounds when `p` lies outside the world extent.
double DistanceToNearestObstacleOnSide(const CorridorWorld& world,
                                       const Point& p, const Point& away_from);

struct PathOptions {
  double radius = 0.0;  // required clearance from every wall
  double speed = 0.5;   // nominal speed used for the time stamps
  double dt = 0.25;
};

// Length-minimal collision-free band from start to goal. Straight segment when
// visible, otherwise a visibility-graph path around the walls inflated by
// `opts.radius`. The band is time-parameterized at `opts.speed`; its last pose
// is the goal. Throws kUnreachable when no free path exists and
// kInvalidArgument when an endpoint is not in free space.
Band ShortestPath(const CorridorWorld& world, const Pose& start,
                  const Pose& goal, const PathOptions& opts = {});

// Resamples a polyline at arc-length steps of `step`, starting at its first
// vertex and ending exactly at its last. The result has at least one pose.
std::vector<Pose> SamplePolyline(std::span<const Point> vertices, double step);

struct PathProjection {
  Point point;          // closest point on the polyline
  Point tangent;        // unit direction of the segment holding `point`
  std::size_t segment = 0;
  double distance = 0.0;
  // Cross product of `tangent` with (p - point): > 0 when p is on the left.
  double side = 0.0;
};

// Closest point on the polyline through the band's positions. A single-pose
// band projects onto that pose with a zero tangent.
PathProjection ProjectOntoPath(const Band& path, const Point& p);

// Unsigned distance from `p` to the polyline through `path`'s positions.
double DeviationFromPath(const Band& path, const Point& p);

// Arc length from the path start to `proj.point`.
double ArcLengthAt(const Band& path, const PathProjection& proj);

// Point and unit tangent at arc length `s`, clamped to the path. `side` and
// `distance` are zero.
PathProjection PointAtArcLength(const Band& path, double s);

// Position at time `t` along the band, linearly interpolated between stamps
// and clamped to its ends.
Point PositionAtTime(const Band& band, double t);

}  // namespace coopnav

#endif  // COOPNAV_GEOMETRY_H_
