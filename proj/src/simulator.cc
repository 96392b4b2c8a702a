/*
 * Copyright 2026 The WGPOM Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "wgpom/simulator.h"

#include <cmath>
#include <limits>
#include <numbers>

namespace wgpom {
namespace {

double Cross(const Point2& a, const Point2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

int Orientation(const Point2& a, const Point2& b, const Point2& c) {
  const double v = Cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool OnSegment(const Point2& a, const Point2& b, const Point2& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

}  // namespace

MotionNoise MotionNoise::Diagonal(double sx, double sy, double stheta) {
  if (!(sx >= 0.0 && sy >= 0.0 && stheta >= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "noise deviations must be >= 0");
  }
  MotionNoise noise;
  noise.q.diagonal() << sx * sx, sy * sy, stheta * stheta;
  return noise;
}

MotionNoise MotionNoise::Profile(int index) {
  switch (index) {
    case 1: return Diagonal(0.05, 0.05, 0.25);
    case 2: return Diagonal(0.1, 0.1, 0.5);
    case 3: return Diagonal(0.15, 0.15, 0.75);
    case 4: return Diagonal(0.2, 0.2, 1.0);
    case 5: return Diagonal(0.3, 0.3, 2.0);
  }
  throw Error(ErrorCode::kInvalidInput,
              "noise profile must be 1..5, got " + std::to_string(index));
}

PoseBelief Propagate(const PoseBelief& pose, const Control& control,
                     const MotionNoise& noise, std::mt19937_64* rng) {
  const double theta = pose.mean.heading;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix3 f = Matrix3::Identity();
  f(0, 2) = -control.v * s;
  f(1, 2) = control.v * c;

  PoseBelief next;
  next.mean = {pose.mean.x + control.v * c, pose.mean.y + control.v * s,
               theta + control.omega};
  if (rng != nullptr && !noise.q.isZero(0.0)) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Vector3d z;
    for (int i = 0; i < 3; ++i) z(i) = normal(*rng);
    const Eigen::Vector3d w = CovarianceSqrt(noise.q) * z;
    next.mean.x += w(0);
    next.mean.y += w(1);
    next.mean.heading += w(2);
  }
  next.mean.heading = WrapAngle(next.mean.heading);
  const Matrix3 covariance = f * pose.covariance * f.transpose() + noise.q;
  next.covariance = 0.5 * (covariance + covariance.transpose());
  return next;
}

std::vector<Segment> World::Segments() const {
  std::vector<Segment> segments;
  for (const Polygon& polygon : polygons) {
    const size_t n = polygon.vertices.size();
    for (size_t i = 0; i < n; ++i) {
      segments.push_back({polygon.vertices[i], polygon.vertices[(i + 1) % n]});
    }
  }
  return segments;
}

bool World::IsFree(const Point2& p) const {
  if (!IsFinite(p) || p.x() < lower.x() || p.y() < lower.y() ||
      p.x() > upper.x() || p.y() > upper.y()) {
    return false;
  }
  for (const Polygon& polygon : polygons) {
    const bool inside = PointInPolygon(p, polygon.vertices);
    if ((polygon.kind == PolygonKind::kObstacle) == inside) return false;
  }
  return true;
}

std::vector<Point2> StarVertices(int points, double outer_radius,
                                 double inner_radius, double rotation) {
  std::vector<Point2> vertices;
  for (int i = 0; i < 2 * points; ++i) {
    const double angle = rotation + i * std::numbers::pi / points;
    const double r = i % 2 == 0 ? outer_radius : inner_radius;
    vertices.emplace_back(r * std::cos(angle), r * std::sin(angle));
  }
  return vertices;
}

World BuildWorld(std::string_view profile) {
  World world;
  world.name = std::string(profile);
  world.lower = Point2(-10.0, -10.0);
  world.upper = Point2(10.0, 10.0);
  if (profile == "empty") return world;
  if (profile == "box") {
    world.polygons.push_back(
        {{{-5.0, -5.0}, {5.0, -5.0}, {5.0, 5.0}, {-5.0, 5.0}},
         PolygonKind::kBoundary});
    return world;
  }
  if (profile == "star") {
    world.polygons.push_back(
        {StarVertices(5, 9.5, 6.5, std::numbers::pi / 2), PolygonKind::kBoundary});
    world.polygons.push_back(
        {StarVertices(5, 3.5, 1.8, std::numbers::pi / 2), PolygonKind::kObstacle});
    return world;
  }
  throw Error(ErrorCode::kInvalidInput,
              "unknown world profile '" + std::string(profile) + "'");
}

bool PointInPolygon(const Point2& p, const std::vector<Point2>& vertices) {
  bool inside = false;
  const size_t n = vertices.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = vertices[i];
    const Point2& b = vertices[j];
    if ((a.y() > p.y()) != (b.y() > p.y()) &&
        p.x() < (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x()) {
      inside = !inside;
    }
  }
  return inside;
}

bool SegmentsIntersect(const Segment& s, const Segment& t) {
  const int o1 = Orientation(s.a, s.b, t.a);
  const int o2 = Orientation(s.a, s.b, t.b);
  const int o3 = Orientation(t.a, t.b, s.a);
  const int o4 = Orientation(t.a, t.b, s.b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && OnSegment(s.a, s.b, t.a)) return true;
  if (o2 == 0 && OnSegment(s.a, s.b, t.b)) return true;
  if (o3 == 0 && OnSegment(t.a, t.b, s.a)) return true;
  if (o4 == 0 && OnSegment(t.a, t.b, s.b)) return true;
  return false;
}

bool IsSimplePolygon(const std::vector<Point2>& vertices) {
  const size_t n = vertices.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    const Segment s{vertices[i], vertices[(i + 1) % n]};
    for (size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (SegmentsIntersect(s, {vertices[j], vertices[(j + 1) % n]})) {
        return false;
      }
    }
  }
  return true;
}

double ScanConfig::AngleIncrement() const {
  if (beams < 1) throw Error(ErrorCode::kInvalidInput, "need at least one beam");
  if (field_of_view >= 2.0 * std::numbers::pi - 1e-12) {
    return field_of_view / beams;
  }
  return beams > 1 ? field_of_view / (beams - 1) : 0.0;
}

double ScanConfig::AngleMin() const {
  const double increment = AngleIncrement();
  if (field_of_view >= 2.0 * std::numbers::pi - 1e-12) {
    return -(beams / 2) * increment;
  }
  return -0.5 * (beams - 1) * increment;
}

void Scan::Validate() const {
  if (!(max_range > 0.0) || !std::isfinite(max_range)) {
    throw Error(ErrorCode::kInvalidInput, "scan max_range must be positive");
  }
  if (!std::isfinite(angle_min) || !std::isfinite(angle_increment)) {
    throw Error(ErrorCode::kInvalidInput, "scan angles are not finite");
  }
  for (size_t i = 0; i < ranges.size(); ++i) {
    if (!(ranges[i] > 0.0) || !(ranges[i] <= max_range)) {
      throw Error(ErrorCode::kInvalidInput,
                  "scan range " + std::to_string(i) + " outside (0, max_range]");
    }
  }
}

double RayDistance(const Point2& origin, const Point2& direction,
                   const std::vector<Segment>& segments) {
  double best = std::numeric_limits<double>::infinity();
  for (const Segment& segment : segments) {
    const Point2 e = segment.b - segment.a;
    const double denominator = Cross(direction, e);
    if (denominator == 0.0) continue;
    const Point2 w = segment.a - origin;
    const double t = Cross(w, e) / denominator;
    const double u = Cross(w, direction) / denominator;
    if (t > 1e-12 && u >= 0.0 && u <= 1.0 && t < best) best = t;
  }
  return best;
}

Scan Raycast(const World& world, const Pose2& pose, const ScanConfig& config) {
  if (!(config.max_range > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "max_range must be positive");
  }
  if (!world.IsFree(pose.translation()) || !std::isfinite(pose.heading)) {
    throw Error(ErrorCode::kInvalidPose, "pose is not in free space");
  }
  Scan scan;
  scan.angle_min = config.AngleMin();
  scan.angle_increment = config.AngleIncrement();
  scan.max_range = config.max_range;
  const std::vector<Segment> segments = world.Segments();
  scan.ranges.resize(config.beams);
  for (int i = 0; i < config.beams; ++i) {
    const double angle = pose.heading + scan.Angle(i);
    const Point2 direction(std::cos(angle), std::sin(angle));
    const double t = RayDistance(pose.translation(), direction, segments);
    scan.ranges[i] = t < config.max_range ? t : config.max_range;
  }
  return scan;
}

TrainingSet ScanToTraining(const Scan& scan, double free_spacing) {
  if (!(free_spacing > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "free spacing must be positive");
  }
  scan.Validate();
  std::vector<Point2> inputs;
  std::vector<double> labels;
  for (int i = 0; i < scan.size(); ++i) {
    const double angle = scan.Angle(i);
    const Point2 direction(std::cos(angle), std::sin(angle));
    const double range = scan.ranges[i];
    const bool hit = scan.Hit(i);
    for (int k = 1;; ++k) {
      const double d = k * free_spacing;
      if (hit ? d >= range : d > range) break;
      inputs.push_back(d * direction);
      labels.push_back(-1.0);
    }
    if (hit) {
      inputs.push_back(range * direction);
      labels.push_back(1.0);
    }
  }
  TrainingSet train;
  train.inputs = std::move(inputs);
  train.labels = Eigen::Map<const Eigen::VectorXd>(
      labels.data(), static_cast<Eigen::Index>(labels.size()));
  return train;
}

std::vector<Control> LoopControls(int steps, double radius) {
  if (steps < 1 || !(radius > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "loop needs steps >= 1, radius > 0");
  }
  const double omega = 2.0 * std::numbers::pi / steps;
  const double v = 2.0 * radius * std::sin(std::numbers::pi / steps);
  return std::vector<Control>(steps, Control{v, omega});
}

Pose2 LoopStart(int steps, double radius) {
  return {radius, 0.0, WrapAngle(std::numbers::pi / 2 + std::numbers::pi / steps)};
}

SimulationLog Simulate(const SimulationConfig& config) {
  constexpr int kMaxPoseDraws = 100;
  if (config.steps < 0) {
    throw Error(ErrorCode::kInvalidInput, "simulation needs steps >= 0");
  }
  const World world = BuildWorld(config.world);
  SimulationLog log;
  log.world = world.name;
  if (config.steps == 0) return log;
  const std::vector<Control> controls =
      LoopControls(config.steps, config.loop_radius);
  std::mt19937_64 rng(config.seed);

  PoseBelief belief;
  belief.mean = LoopStart(config.steps, config.loop_radius);
  Pose2 truth = belief.mean;
  for (int t = 0; t < config.steps; ++t) {
    if (t > 0) {
      const Control& u = controls[t - 1];
      if (config.pose_mode == PoseMode::kExactMean) {
        belief = Propagate(belief, u, config.noise);
        truth = belief.mean;
      } else {
        Pose2 next;
        for (int draw = 0; draw < kMaxPoseDraws; ++draw) {
          next = Propagate({truth, Matrix3::Zero()}, u, config.noise, &rng).mean;
          if (world.IsFree(next.translation())) break;
        }
        truth = next;
        belief = Propagate(belief, u, config.noise);
      }
    }
    log.steps.push_back({truth, belief, Raycast(world, truth, config.scan)});
  }
  return log;
}

}  // namespace wgpom
