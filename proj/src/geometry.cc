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

#include "coopnav/geometry.h"

#include <algorithm>
#include <array>
#include <limits>
#include <queue>
#include <string>

#include "coopnav/error.h"

namespace coopnav {

namespace {

constexpr double kCornerOffset = 1e-6;
constexpr double kInteriorEps = 1e-9;

double PointSegmentDistance(const Point& p, const Point& a, const Point& b,
                            Point* closest) {
  const Point ab = b - a;
  const double len2 = ab.Dot(ab);
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp((p - a).Dot(ab) / len2, 0.0, 1.0);
  const Point q = a + ab * t;
  if (closest != nullptr) *closest = q;
  return Distance(p, q);
}

// Distance from p to a convex polygon given counter-clockwise; zero inside.
double DistanceToConvexPolygon(const std::vector<Point>& poly, const Point& p) {
  if (poly.empty()) return std::numeric_limits<double>::infinity();
  if (poly.size() == 1) return Distance(p, poly[0]);
  bool inside = poly.size() >= 3;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % poly.size()];
    if ((b - a).Cross(p - a) < 0.0) inside = false;
    best = std::min(best, PointSegmentDistance(p, a, b, nullptr));
  }
  return inside ? 0.0 : best;
}

// Keeps the part of `poly` where (q - origin) . normal >= 0.
std::vector<Point> ClipHalfPlane(const std::vector<Point>& poly,
                                 const Point& origin, const Point& normal) {
  std::vector<Point> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& cur = poly[i];
    const Point& nxt = poly[(i + 1) % n];
    const double dc = (cur - origin).Dot(normal);
    const double dn = (nxt - origin).Dot(normal);
    if (dc >= 0.0) out.push_back(cur);
    if ((dc >= 0.0) != (dn >= 0.0)) {
      const double t = dc / (dc - dn);
      out.push_back(cur + (nxt - cur) * t);
    }
  }
  return out;
}

// True when the open segment a-b passes through the interior of `rect`.
bool SegmentCrossesInterior(const Point& a, const Point& b, const Rect& rect) {
  const Rect inner{rect.min_x + kInteriorEps, rect.min_y + kInteriorEps,
                   rect.max_x - kInteriorEps, rect.max_y - kInteriorEps};
  if (inner.min_x >= inner.max_x || inner.min_y >= inner.max_y) return false;
  // Liang-Barsky clip of the segment against the shrunken rectangle.
  const Point d = b - a;
  double t0 = 0.0;
  double t1 = 1.0;
  const std::array<double, 4> p = {-d.x, d.x, -d.y, d.y};
  const std::array<double, 4> q = {a.x - inner.min_x, inner.max_x - a.x,
                                   a.y - inner.min_y, inner.max_y - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, r);
    } else {
      t1 = std::min(t1, r);
    }
    if (t0 > t1) return false;
  }
  return t1 - t0 > 0.0;
}

bool InFreeSpace(const CorridorWorld& world, const Point& p, double radius) {
  return world.InBounds(p) && world.Clearance(p) >= radius - kInteriorEps;
}

bool Visible(const CorridorWorld& world, const std::vector<Rect>& inflated,
             const Point& a, const Point& b) {
  if (!world.InBounds(a) || !world.InBounds(b)) return false;
  return std::none_of(inflated.begin(), inflated.end(), [&](const Rect& r) {
    return SegmentCrossesInterior(a, b, r);
  });
}

double Heading(const Point& from, const Point& to, double fallback) {
  const Point d = to - from;
  if (d.Norm() == 0.0) return fallback;
  return std::atan2(d.y, d.x);
}

}  // namespace

double WrapAngle(double angle) {
  if (!std::isfinite(angle)) return angle;
  double a = std::remainder(angle, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

double DistanceToRect(const Rect& rect, const Point& p) {
  const double dx = std::max({rect.min_x - p.x, 0.0, p.x - rect.max_x});
  const double dy = std::max({rect.min_y - p.y, 0.0, p.y - rect.max_y});
  return std::hypot(dx, dy);
}

void Band::Validate() const {
  if (poses.empty()) throw Error(ErrorCode::kInvalidArgument, "empty band");
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "band dt must be positive");
  }
}

double PathLength(const Band& band) {
  double length = 0.0;
  for (std::size_t i = 1; i < band.size(); ++i) {
    length += Distance(band.PositionAt(i - 1), band.PositionAt(i));
  }
  return length;
}

bool Synchronized(const Band& a, const Band& b) {
  return a.size() == b.size() && a.dt == b.dt && a.t0 == b.t0;
}

CorridorWorld CorridorWorld::Straight(double length, double width,
                                      double wall_thickness,
                                      double end_margin) {
  CorridorWorld world;
  world.corridor_width = width;
  const double x0 = -end_margin;
  const double x1 = length + end_margin;
  world.walls.push_back({x0, -wall_thickness, x1, 0.0});
  world.walls.push_back({x0, width, x1, width + wall_thickness});
  world.bounds = {x0, -wall_thickness, x1, width + wall_thickness};
  return world;
}

void CorridorWorld::Validate() const {
  if (!(corridor_width > 0.0)) {
    throw Error(ErrorCode::kValidation, "corridor_width must be positive");
  }
  if (!(bounds.max_x > bounds.min_x) || !(bounds.max_y > bounds.min_y)) {
    throw Error(ErrorCode::kValidation, "world bounds are empty");
  }
  for (const Rect& w : walls) {
    if (!(w.max_x >= w.min_x) || !(w.max_y >= w.min_y)) {
      throw Error(ErrorCode::kValidation, "wall rectangle is inverted");
    }
  }
}

double CorridorWorld::Clearance(const Point& p) const {
  double best = kNoObstacleDistance;
  for (const Rect& w : walls) best = std::min(best, DistanceToRect(w, p));
  return best;
}

double DistanceToNearestObstacleOnSide(const CorridorWorld& world,
                                       const Point& p, const Point& away_from) {
  if (!world.InBounds(p)) {
    throw Error(ErrorCode::kOutOfBounds, "point outside world");
  }
  const Point dir = p - away_from;
  const double n = dir.Norm();
  if (n == 0.0) return world.Clearance(p);
  const Point u = dir * (1.0 / n);
  double best = kNoObstacleDistance;
  for (const Rect& w : world.walls) {
    const std::vector<Point> poly = {{w.min_x, w.min_y},
                                     {w.max_x, w.min_y},
                                     {w.max_x, w.max_y},
                                     {w.min_x, w.max_y}};
    const std::vector<Point> clipped = ClipHalfPlane(poly, p, u);
    best = std::min(best, DistanceToConvexPolygon(clipped, p));
  }
  return best;
}

std::vector<Pose> SamplePolyline(std::span<const Point> vertices,
                                 double step) {
  std::vector<Pose> out;
  if (vertices.empty()) return out;
  if (vertices.size() == 1 || !(step > 0.0)) {
    out.push_back({vertices.front().x, vertices.front().y, 0.0});
    return out;
  }
  double total = 0.0;
  std::vector<double> cumulative = {0.0};
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    total += Distance(vertices[i - 1], vertices[i]);
    cumulative.push_back(total);
  }
  const auto count = static_cast<std::size_t>(std::ceil(total / step - 1e-9));
  std::size_t seg = 0;
  double last_heading = 0.0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (Distance(vertices[i - 1], vertices[i]) > 0.0) {
      last_heading = Heading(vertices[i - 1], vertices[i], 0.0);
      break;
    }
  }
  for (std::size_t k = 0; k <= count; ++k) {
    const double s = std::min(static_cast<double>(k) * step, total);
    while (seg + 2 < vertices.size() && cumulative[seg + 1] < s) ++seg;
    const double seg_len = cumulative[seg + 1] - cumulative[seg];
    const double t = seg_len > 0.0 ? (s - cumulative[seg]) / seg_len : 0.0;
    const Point q = vertices[seg] + (vertices[seg + 1] - vertices[seg]) * t;
    last_heading = Heading(vertices[seg], vertices[seg + 1], last_heading);
    out.push_back({q.x, q.y, last_heading});
  }
  if (out.size() == 1 && total > 0.0) {
    out.push_back({vertices.back().x, vertices.back().y, last_heading});
  }
  return out;
}

Band ShortestPath(const CorridorWorld& world, const Pose& start,
                  const Pose& goal, const PathOptions& opts) {
  if (!(opts.speed > 0.0) || !(opts.dt > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "speed and dt must be positive");
  }
  const Point s = start.position();
  const Point g = goal.position();
  if (!InFreeSpace(world, s, opts.radius)) {
    throw Error(ErrorCode::kInvalidArgument, "start not in free space");
  }
  if (!InFreeSpace(world, g, opts.radius)) {
    throw Error(ErrorCode::kInvalidArgument, "goal not in free space");
  }
  Band band;
  band.dt = opts.dt;
  if (s == g) {
    band.poses.push_back(start);
    return band;
  }

  std::vector<Rect> inflated;
  inflated.reserve(world.walls.size());
  for (const Rect& w : world.walls) inflated.push_back(w.Inflated(opts.radius));

  std::vector<Point> route;
  if (Visible(world, inflated, s, g)) {
    route = {s, g};
  } else {
    // Visibility graph over the (slightly pushed out) inflated corners.
    std::vector<Point> nodes = {s, g};
    for (const Rect& r : inflated) {
      const Rect c = r.Inflated(kCornerOffset);
      for (const Point& p : {Point{c.min_x, c.min_y}, Point{c.max_x, c.min_y},
                             Point{c.max_x, c.max_y}, Point{c.min_x, c.max_y}}) {
        if (InFreeSpace(world, p, opts.radius)) nodes.push_back(p);
      }
    }
    const std::size_t n = nodes.size();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> prev(n, n);
    std::vector<bool> done(n, false);
    dist[0] = 0.0;
    for (std::size_t iter = 0; iter < n; ++iter) {
      std::size_t u = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (!done[i] && (u == n || dist[i] < dist[u])) u = i;
      }
      if (u == n || !std::isfinite(dist[u])) break;
      done[u] = true;
      if (u == 1) break;
      for (std::size_t v = 0; v < n; ++v) {
        if (done[v]) continue;
        const double cand = dist[u] + Distance(nodes[u], nodes[v]);
        if (cand < dist[v] && Visible(world, inflated, nodes[u], nodes[v])) {
          dist[v] = cand;
          prev[v] = u;
        }
      }
    }
    if (!std::isfinite(dist[1])) {
      throw Error(ErrorCode::kUnreachable, "unreachable goal");
    }
    for (std::size_t v = 1; v != n; v = prev[v]) route.push_back(nodes[v]);
    std::reverse(route.begin(), route.end());
  }

  band.poses = SamplePolyline(route, opts.speed * opts.dt);
  return band;
}

PathProjection ProjectOntoPath(const Band& path, const Point& p) {
  PathProjection best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Point a = path.PositionAt(i - 1);
    const Point b = path.PositionAt(i);
    const double len = Distance(a, b);
    if (len == 0.0) continue;
    Point q;
    const double d = PointSegmentDistance(p, a, b, &q);
    if (d < best.distance) {
      best.distance = d;
      best.point = q;
      best.segment = i - 1;
      best.tangent = (b - a) * (1.0 / len);
    }
  }
  if (!std::isfinite(best.distance)) {
    best.point = path.PositionAt(0);
    best.distance = Distance(p, best.point);
    best.tangent = {};
  }
  best.side = best.tangent.Cross(p - best.point);
  return best;
}

double DeviationFromPath(const Band& path, const Point& p) {
  if (path.empty()) throw Error(ErrorCode::kInvalidArgument, "empty path");
  return ProjectOntoPath(path, p).distance;
}

double ArcLengthAt(const Band& path, const PathProjection& proj) {
  double s = 0.0;
  for (std::size_t i = 1; i <= proj.segment && i < path.size(); ++i) {
    s += Distance(path.PositionAt(i - 1), path.PositionAt(i));
  }
  if (proj.segment < path.size()) {
    s += Distance(path.PositionAt(proj.segment), proj.point);
  }
  return s;
}

PathProjection PointAtArcLength(const Band& path, double s) {
  PathProjection out;
  if (path.empty()) throw Error(ErrorCode::kInvalidArgument, "empty path");
  out.point = path.PositionAt(0);
  double walked = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Point a = path.PositionAt(i - 1);
    const Point b = path.PositionAt(i);
    const double len = Distance(a, b);
    if (len == 0.0) continue;
    out.tangent = (b - a) * (1.0 / len);
    out.segment = i - 1;
    if (walked + len >= s) {
      out.point = a + out.tangent * std::max(0.0, s - walked);
      return out;
    }
    walked += len;
    out.point = b;
  }
  return out;
}

Point PositionAtTime(const Band& band, double t) {
  if (band.empty()) throw Error(ErrorCode::kInvalidArgument, "empty band");
  const double u = (t - band.t0) / band.dt;
  if (u <= 0.0) return band.PositionAt(0);
  const auto i = static_cast<std::size_t>(std::floor(u));
  if (i + 1 >= band.size()) return band.PositionAt(band.size() - 1);
  const double f = u - static_cast<double>(i);
  return band.PositionAt(i) + (band.PositionAt(i + 1) - band.PositionAt(i)) * f;
}

}  // namespace coopnav
