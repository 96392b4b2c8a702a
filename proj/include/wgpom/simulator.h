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


#ifndef WGPOM_SIMULATOR_H_
#define WGPOM_SIMULATOR_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wgpom/common.h"
#include "wgpom/gp_regression.h"
#include "wgpom/pose.h"

namespace wgpom {

struct MotionNoise {
  Matrix3 q = Matrix3::Zero();

  // Profiles 1..5: diag(0.05, 0.05, 0.25)^2 ... diag(0.3, 0.3, 2.0)^2.
  static MotionNoise Profile(int index);
  static MotionNoise Diagonal(double sx, double sy, double stheta);
  static constexpr int kProfileCount = 5;
};

// Per-step unicycle control.
struct Control {
  double v = 0.0;      // m/step
  double omega = 0.0;  // rad/step
};

// Unicycle step x' = x + v cos(theta), y' = y + v sin(theta),
// theta' = theta + omega. The covariance becomes F S F^T + Q with F the
// Jacobian at the current mean. With `rng` non-null the mean also receives a
// draw of N(0, Q).
PoseBelief Propagate(const PoseBelief& pose, const Control& control,
                     const MotionNoise& noise, std::mt19937_64* rng = nullptr);

enum class PolygonKind {
  kObstacle,  // the interior is occupied
  kBoundary,  // the exterior is occupied
};

struct Polygon {
  std::vector<Point2> vertices;
  PolygonKind kind = PolygonKind::kObstacle;
};

struct Segment {
  Point2 a;
  Point2 b;
};

struct World {
  std::string name;
  Point2 lower;
  Point2 upper;
  std::vector<Polygon> polygons;

  std::vector<Segment> Segments() const;
  // Inside the bounds, inside every boundary and outside every obstacle.
  bool IsFree(const Point2& p) const;
};

// "star": a five-pointed boundary star (radii 9.5 / 6.5) around a
// five-pointed obstacle star (radii 3.5 / 1.8), bounds [-10, 10]^2.
// "box": the boundary square [-5, 5]^2. "empty": no polygons.
World BuildWorld(std::string_view profile);

// Star with `points` tips, the first tip on the +x axis.
std::vector<Point2> StarVertices(int points, double outer_radius,
                                 double inner_radius, double rotation);

bool PointInPolygon(const Point2& p, const std::vector<Point2>& vertices);
bool SegmentsIntersect(const Segment& s, const Segment& t);
// True when no two non-adjacent edges intersect.
bool IsSimplePolygon(const std::vector<Point2>& vertices);

struct ScanConfig {
  int beams = 36;
  double field_of_view = 2.0 * 3.14159265358979323846;
  double max_range = 8.0;

  double AngleMin() const;
  double AngleIncrement() const;
};

struct Scan {
  double angle_min = 0.0;
  double angle_increment = 0.0;
  double max_range = 0.0;
  std::vector<double> ranges;

  int size() const { return static_cast<int>(ranges.size()); }
  double Angle(int beam) const { return angle_min + beam * angle_increment; }
  bool Hit(int beam) const { return ranges[beam] < max_range; }
  // Throws kInvalidInput unless max_range > 0 and all ranges are in
  // (0, max_range].
  void Validate() const;
};

// Distance along the ray to the nearest segment, or infinity.
double RayDistance(const Point2& origin, const Point2& direction,
                   const std::vector<Segment>& segments);

// Throws kInvalidPose when the pose is not in free space.
Scan Raycast(const World& world, const Pose2& pose, const ScanConfig& config);

// Robot-frame training points: +1 at every hit endpoint and -1 at
// k * spacing (k >= 1) strictly before a hit, or up to max_range for a miss.
TrainingSet ScanToTraining(const Scan& scan, double free_spacing);

// Closed loop of `steps` chords on a circle of `radius`, counterclockwise.
std::vector<Control> LoopControls(int steps, double radius);
Pose2 LoopStart(int steps, double radius);

enum class PoseMode {
  // The believed mean equals the true pose; only the covariance grows.
  kExactMean,
  // The true pose receives sampled motion noise; the mean is dead-reckoned.
  // A draw that leaves free space is redrawn, up to 100 times.
  kDeadReckoning,
};

struct SimulationConfig {
  std::string world = "star";
  int steps = 40;
  double loop_radius = 5.0;
  ScanConfig scan;
  MotionNoise noise;
  PoseMode pose_mode = PoseMode::kExactMean;
  uint64_t seed = 1;
};

struct SimStep {
  Pose2 true_pose;
  PoseBelief belief;
  Scan scan;
};

struct SimulationLog {
  std::string world;
  std::vector<SimStep> steps;
};

// `steps` poses: the loop start with zero covariance, then one pose per
// loop control.
SimulationLog Simulate(const SimulationConfig& config);

}  // namespace wgpom

#endif  // WGPOM_SIMULATOR_H_
