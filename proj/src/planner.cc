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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace coopnav {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinCurvature = 1e-6;
constexpr double kMinStep = 1e-10;
// Farthest an agent may sit from the previous plan for a warm start (m).
constexpr double kWarmStartReach = 0.5;

// One band parameterized by signed lateral offsets from its reference path.
struct Lane {
  std::vector<Point> base;
  std::vector<Point> normal;
  double radius = 0.0;
  double w_deviation = 0.0;
};

struct Problem {
  const CorridorWorld* world = nullptr;
  const PlannerConfig* cfg = nullptr;
  Lane robot;
  Lane human;
};

struct Gradient {
  std::vector<double> robot;
  std::vector<double> human;
  std::vector<double> robot_diag;
  std::vector<double> human_diag;
};

// Clearance to the nearest wall and the unit direction that increases it.
double ClearanceWithGradient(const CorridorWorld& world, const Point& p,
                             Point* grad) {
  double best = kNoObstacleDistance;
  *grad = {};
  for (const Rect& w : world.walls) {
    const Point q{std::clamp(p.x, w.min_x, w.max_x),
                  std::clamp(p.y, w.min_y, w.max_y)};
    const double d = Distance(p, q);
    if (d >= best) continue;
    best = d;
    if (d > 0.0) {
      *grad = (p - q) * (1.0 / d);
    } else {
      // Inside the wall: leave through the closest edge.
      const double exits[4] = {p.x - w.min_x, w.max_x - p.x, p.y - w.min_y,
                               w.max_y - p.y};
      const Point dirs[4] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
      const auto k = std::min_element(exits, exits + 4) - exits;
      *grad = dirs[k];
    }
  }
  return best;
}

Lane MakeLane(const Band& reference, const PlanningAgent& agent,
              double w_deviation) {
  Lane lane;
  lane.radius = agent.state.radius;
  lane.w_deviation = w_deviation;
  const std::size_t n = reference.size();
  lane.base.reserve(n);
  for (const Pose& p : reference.poses) lane.base.push_back(p.position());
  Point fallback{std::cos(agent.state.pose.theta),
                 std::sin(agent.state.pose.theta)};
  for (std::size_t i = 0; i < n; ++i) {
    const Point t = lane.base[std::min(i + 1, n - 1)] -
                    lane.base[i == 0 ? 0 : i - 1];
    if (t.Norm() > 0.0) {
      fallback = t * (1.0 / t.Norm());
      break;
    }
  }
  lane.normal.resize(n);
  Point last = fallback;
  for (std::size_t i = 0; i < n; ++i) {
    const Point t = lane.base[std::min(i + 1, n - 1)] -
                    lane.base[i == 0 ? 0 : i - 1];
    if (t.Norm() > 0.0) last = t * (1.0 / t.Norm());
    lane.normal[i] = {-last.y, last.x};
  }
  return lane;
}

std::vector<Point> Positions(const Lane& lane, const std::vector<double>& s) {
  std::vector<Point> out(lane.base.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = lane.base[i] + lane.normal[i] * s[i];
  }
  return out;
}

// Length, wall and deviation terms of one band. Point-space gradients are
// accumulated into `grad` when non-null.
double LaneCost(const Lane& lane, const std::vector<Point>& p,
                const Problem& prob, std::vector<Point>* grad,
                std::vector<double>* diag) {
  const PlannerConfig& cfg = *prob.cfg;
  const std::size_t n = p.size();
  double cost = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const Point d = p[i] - p[i - 1];
    const double len = d.Norm();
    cost += cfg.w_length * len;
    if (grad == nullptr || len == 0.0) continue;
    const Point u = d * (1.0 / len);
    (*grad)[i] = (*grad)[i] + u * cfg.w_length;
    (*grad)[i - 1] = (*grad)[i - 1] - u * cfg.w_length;
    const double ci = u.Dot(lane.normal[i]);
    const double cj = u.Dot(lane.normal[i - 1]);
    (*diag)[i] += cfg.w_length * (1.0 - ci * ci) / len;
    (*diag)[i - 1] += cfg.w_length * (1.0 - cj * cj) / len;
  }
  const double keep_out = lane.radius + cfg.obstacle_margin;
  for (std::size_t i = 0; i < n; ++i) {
    Point g;
    const double c = ClearanceWithGradient(*prob.world, p[i], &g);
    const double h = keep_out - c;
    if (h > 0.0) {
      cost += cfg.w_obstacle * h * h;
      if (grad != nullptr) {
        (*grad)[i] = (*grad)[i] - g * (2.0 * cfg.w_obstacle * h);
        const double gn = g.Dot(lane.normal[i]);
        (*diag)[i] += 2.0 * cfg.w_obstacle * gn * gn;
      }
    }
    const Point dev = p[i] - lane.base[i];
    cost += lane.w_deviation * dev.Dot(dev);
    if (grad != nullptr) {
      (*grad)[i] = (*grad)[i] + dev * (2.0 * lane.w_deviation);
      (*diag)[i] += 2.0 * lane.w_deviation;
    }
  }
  return cost;
}

double Evaluate(const Problem& prob, const std::vector<Point>& r,
                const std::vector<Point>& h, Gradient* out) {
  const PlannerConfig& cfg = *prob.cfg;
  const std::size_t n = r.size();
  std::vector<Point> gr;
  std::vector<Point> gh;
  if (out != nullptr) {
    gr.assign(n, Point{});
    gh.assign(n, Point{});
    out->robot_diag.assign(n, 0.0);
    out->human_diag.assign(n, 0.0);
  }
  double cost = LaneCost(prob.robot, r, prob, out ? &gr : nullptr,
                         out ? &out->robot_diag : nullptr);
  cost += LaneCost(prob.human, h, prob, out ? &gh : nullptr,
                   out ? &out->human_diag : nullptr);
  for (std::size_t i = 0; i < n; ++i) {
    const Point d = r[i] - h[i];
    const double dist = d.Norm();
    const double gap = cfg.min_separation - dist;
    if (gap <= 0.0) continue;
    cost += cfg.w_separation * gap * gap;
    if (out == nullptr) continue;
    const Point u = dist > 0.0 ? d * (1.0 / dist) : prob.robot.normal[i];
    gr[i] = gr[i] - u * (2.0 * cfg.w_separation * gap);
    gh[i] = gh[i] + u * (2.0 * cfg.w_separation * gap);
    const double ur = u.Dot(prob.robot.normal[i]);
    const double uh = u.Dot(prob.human.normal[i]);
    out->robot_diag[i] += 2.0 * cfg.w_separation * ur * ur;
    out->human_diag[i] += 2.0 * cfg.w_separation * uh * uh;
  }
  if (out != nullptr) {
    out->robot.resize(n);
    out->human.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      out->robot[i] = gr[i].Dot(prob.robot.normal[i]);
      out->human[i] = gh[i].Dot(prob.human.normal[i]);
    }
    // Endpoints stay where the reference put them.
    for (std::size_t i : {std::size_t{0}, n - 1}) {
      out->robot[i] = 0.0;
      out->human[i] = 0.0;
    }
  }
  return cost;
}

Band ToBand(const std::vector<Point>& p, const PlannerConfig& cfg,
            double fallback_heading) {
  Band band;
  band.dt = cfg.dt;
  band.t0 = 0.0;
  band.poses.resize(p.size());
  double heading = fallback_heading;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::size_t j = i + 1 < p.size() ? i + 1 : i;
    const std::size_t k = i + 1 < p.size() ? i : (i == 0 ? 0 : i - 1);
    const Point d = p[j] - p[k];
    if (d.Norm() > 1e-12) heading = std::atan2(d.y, d.x);
    band.poses[i] = {p[i].x, p[i].y, heading};
  }
  return band;
}

Problem MakeProblem(const CorridorWorld& world, const PlanningAgent& robot,
                    const PlanningAgent& human, const PlannerConfig& cfg) {
  Problem prob;
  prob.world = &world;
  prob.cfg = &cfg;
  prob.robot = MakeLane(ReferenceBand(world, robot, cfg), robot,
                        cfg.w_robot_deviation);
  prob.human = MakeLane(ReferenceBand(world, human, cfg), human,
                        cfg.w_human_deviation);
  return prob;
}

DualBands Optimize(const Problem& prob, std::vector<double> sr,
                   std::vector<double> sh, const PlanningAgent& robot,
                   const PlanningAgent& human, PlannerStats* stats) {
  const PlannerConfig& cfg = *prob.cfg;
  const std::size_t n = sr.size();
  sr.front() = sr.back() = 0.0;
  sh.front() = sh.back() = 0.0;

  PlannerStats local;
  PlannerStats& st = stats != nullptr ? *stats : local;
  st = PlannerStats{};

  Gradient g;
  double cost = Evaluate(prob, Positions(prob.robot, sr),
                         Positions(prob.human, sh), &g);
  st.cost_history.push_back(cost);

  std::vector<double> dr(n), dh(n), tr(n), th(n);
  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    double max_move = 0.0;
    double slope = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dr[i] = -g.robot[i] / std::max(g.robot_diag[i], kMinCurvature);
      dh[i] = -g.human[i] / std::max(g.human_diag[i], kMinCurvature);
      max_move = std::max({max_move, std::abs(dr[i]), std::abs(dh[i])});
      slope += g.robot[i] * dr[i] + g.human[i] * dh[i];
    }
    if (max_move == 0.0) {
      st.converged = true;
      break;
    }
    double alpha = std::min(1.0, cfg.step_size / max_move);
    bool accepted = false;
    double trial_cost = cost;
    while (alpha * max_move > kMinStep) {
      for (std::size_t i = 0; i < n; ++i) {
        tr[i] = sr[i] + alpha * dr[i];
        th[i] = sh[i] + alpha * dh[i];
      }
      trial_cost = Evaluate(prob, Positions(prob.robot, tr),
                            Positions(prob.human, th), nullptr);
      if (trial_cost <= cost + kArmijo * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    st.iterations = it + 1;
    if (!accepted) {
      st.converged = true;
      break;
    }
    sr.swap(tr);
    sh.swap(th);
    cost = Evaluate(prob, Positions(prob.robot, sr),
                    Positions(prob.human, sh), &g);
    st.cost_history.push_back(cost);
    if (alpha * max_move < cfg.convergence_tol) {
      st.converged = true;
      break;
    }
  }

  DualBands out;
  out.robot = ToBand(Positions(prob.robot, sr), cfg, robot.state.pose.theta);
  out.human = ToBand(Positions(prob.human, sh), cfg, human.state.pose.theta);
  if (MinClearanceMargin(out.robot, *prob.world, robot.state.radius) < -1e-9 ||
      MinClearanceMargin(out.human, *prob.world, human.state.radius) < -1e-9) {
    throw PlanningError("planning failed", out);
  }
  return out;
}

}  // namespace

void PlannerConfig::Validate() const {
  auto require = [](bool ok, const char* field) {
    if (!ok) {
      throw Error(ErrorCode::kValidation,
                  std::string("planner.") + field + " is out of range");
    }
  };
  require(n_waypoints >= 2, "n_waypoints");
  require(dt > 0.0, "dt");
  require(w_length >= 0.0, "w_length");
  require(w_obstacle >= 0.0, "w_obstacle");
  require(w_separation >= 0.0, "w_separation");
  require(w_human_deviation >= 0.0, "w_human_deviation");
  require(w_robot_deviation >= 0.0, "w_robot_deviation");
  require(min_separation > 0.0, "min_separation");
  require(obstacle_margin >= 0.0, "obstacle_margin");
  require(step_size > 0.0, "step_size");
  require(convergence_tol > 0.0, "convergence_tol");
}

Band ReferenceBand(const CorridorWorld& world, const PlanningAgent& agent,
                   const PlannerConfig& cfg) {
  Band path = ShortestPath(world, agent.state.pose, agent.goal,
                           {agent.state.radius, agent.nominal_speed, cfg.dt});
  path.poses.resize(cfg.n_waypoints, path.poses.back());
  path.t0 = 0.0;
  return path;
}

DualBands PlanDualBands(const CorridorWorld& world, const PlanningAgent& robot,
                        const PlanningAgent& human, const PlannerConfig& cfg,
                        PlannerStats* stats) {
  cfg.Validate();
  const Problem prob = MakeProblem(world, robot, human, cfg);
  const std::vector<double> zeros(cfg.n_waypoints, 0.0);
  return Optimize(prob, zeros, zeros, robot, human, stats);
}

DualBands Replan(const DualBands& previous, const CorridorWorld& world,
                 const PlanningAgent& robot, const PlanningAgent& human,
                 const PlannerConfig& cfg, PlannerStats* stats) {
  cfg.Validate();
  if (previous.robot.empty() || !Synchronized(previous.robot, previous.human)) {
    throw Error(ErrorCode::kUnsynchronizedBands, "unsynchronized bands");
  }
  const Problem prob = MakeProblem(world, robot, human, cfg);
  const std::size_t n = cfg.n_waypoints;
  const std::size_t m = previous.robot.size();

  // How far along the previous plan the agents have advanced.
  const Point here = robot.state.pose.position();
  std::size_t shift = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= m / 2; ++i) {
    const double d = Distance(previous.robot.PositionAt(i), here);
    if (d < best) {
      best = d;
      shift = i;
    }
  }
  std::vector<double> sr(n, 0.0);
  std::vector<double> sh(n, 0.0);
  // A plan the agents have jumped away from is a poor start; it can even
  // put them on swapped sides. Start cold instead.
  const double human_gap = Distance(
      previous.human.PositionAt(shift), human.state.pose.position());
  if (best > kWarmStartReach || human_gap > kWarmStartReach) {
    return Optimize(prob, std::move(sr), std::move(sh), robot, human, stats);
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::size_t j = std::min(i + shift, m - 1);
    sr[i] = (previous.robot.PositionAt(j) - prob.robot.base[i])
                .Dot(prob.robot.normal[i]);
    sh[i] = (previous.human.PositionAt(j) - prob.human.base[i])
                .Dot(prob.human.normal[i]);
  }
  return Optimize(prob, std::move(sr), std::move(sh), robot, human, stats);
}

double PlanCost(const DualBands& bands, const CorridorWorld& world,
                const PlanningAgent& robot, const PlanningAgent& human,
                const PlannerConfig& cfg) {
  if (!Synchronized(bands.robot, bands.human) ||
      bands.robot.size() != cfg.n_waypoints) {
    throw Error(ErrorCode::kUnsynchronizedBands, "unsynchronized bands");
  }
  const Problem prob = MakeProblem(world, robot, human, cfg);
  std::vector<Point> r(bands.robot.size());
  std::vector<Point> h(bands.human.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = bands.robot.PositionAt(i);
    h[i] = bands.human.PositionAt(i);
  }
  return Evaluate(prob, r, h, nullptr);
}

double MaxDeviation(const Band& band, const Band& path) {
  double worst = 0.0;
  for (const Pose& p : band.poses) {
    worst = std::max(worst, DeviationFromPath(path, p.position()));
  }
  return worst;
}

double MinClearanceMargin(const Band& band, const CorridorWorld& world,
                          double radius) {
  double worst = std::numeric_limits<double>::infinity();
  for (const Pose& p : band.poses) {
    worst = std::min(worst, world.Clearance(p.position()) - radius);
  }
  return worst;
}

}  // namespace coopnav
