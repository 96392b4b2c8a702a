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
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "gtest/gtest.h"

namespace wgpom {
namespace {

constexpr double kPi = std::numbers::pi;

// Steps along the ray until the world stops being free.
double MarchRay(const World& world, const Point2& origin, double angle, double max_range) {
  const Point2 dir(std::cos(angle), std::sin(angle));
  for (double d = 0.0; d < max_range; d += 1e-3) {
    if (!world.IsFree(origin + d * dir)) return d;
  }
  return max_range;
}

TEST(PropagateTest, ZeroControlAddsNoiseOnly) {
  PoseBelief pose;
  pose.mean = {1.0, 2.0, 0.3};
  pose.covariance = 0.01 * Matrix3::Identity();
  const MotionNoise noise = MotionNoise::Profile(2);
  const PoseBelief next = Propagate(pose, {}, noise);
  EXPECT_EQ(next.mean.x, 1.0);
  EXPECT_EQ(next.mean.y, 2.0);
  EXPECT_EQ(next.mean.heading, 0.3);
  EXPECT_LT((next.covariance - (pose.covariance + noise.q)).norm(), 1e-15);
}

TEST(PropagateTest, UnitForwardStep) {
  const PoseBelief next = Propagate({}, {1.0, 0.0}, MotionNoise{});
  EXPECT_EQ(next.mean.x, 1.0);
  EXPECT_EQ(next.mean.y, 0.0);
  EXPECT_EQ(next.covariance, Matrix3::Zero());
  PoseBelief turned;
  turned.mean.heading = kPi / 2;
  const PoseBelief up = Propagate(turned, {2.0, 0.5}, MotionNoise{});
  EXPECT_NEAR(up.mean.x, 0.0, 1e-15);
  EXPECT_NEAR(up.mean.y, 2.0, 1e-15);
  EXPECT_NEAR(up.mean.heading, kPi / 2 + 0.5, 1e-15);
}

TEST(PropagateTest, CovarianceStaysPsdAndGrows) {
  const std::vector<Control> controls = LoopControls(40, 5.0);
  for (int profile = 1; profile <= MotionNoise::kProfileCount; ++profile) {
    const MotionNoise noise = MotionNoise::Profile(profile);
    PoseBelief pose;
    pose.mean = LoopStart(40, 5.0);
    double trace = 0.0;
    for (const Control& c : controls) {
      pose = Propagate(pose, c, noise);
      EXPECT_EQ(pose.covariance, pose.covariance.transpose());
      const Eigen::SelfAdjointEigenSolver<Matrix3> eig(pose.covariance);
      EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-12);
      EXPECT_GE(pose.covariance.trace(), trace);
      trace = pose.covariance.trace();
    }
  }
  EXPECT_THROW(MotionNoise::Profile(0), Error);
  EXPECT_THROW(MotionNoise::Profile(6), Error);
}

TEST(PropagateTest, NoisyStepIsSampled) {
  std::mt19937_64 rng(1);
  const MotionNoise noise = MotionNoise::Profile(1);
  const PoseBelief a = Propagate({}, {1.0, 0.0}, noise, &rng);
  EXPECT_NE(a.mean.x, 1.0);
  EXPECT_EQ(a.covariance, Propagate({}, {1.0, 0.0}, noise).covariance);
}

TEST(LoopTest, ClosesOnItself) {
  Pose2 pose = LoopStart(36, 4.0);
  const Pose2 start = pose;
  for (const Control& c : LoopControls(36, 4.0)) {
    pose = Propagate({pose, Matrix3::Zero()}, c, MotionNoise{}).mean;
    EXPECT_NEAR(pose.translation().norm(), 4.0, 1e-9);
  }
  EXPECT_NEAR((pose.translation() - start.translation()).norm(), 0.0, 1e-9);
  EXPECT_NEAR(WrapAngle(pose.heading - start.heading), 0.0, 1e-9);
  EXPECT_THROW(LoopControls(0, 1.0), Error);
}

TEST(RaycastTest, PerpendicularWall) {
  World world = BuildWorld("empty");
  world.polygons.push_back({{{3.0, -1.0}, {4.0, -1.0}, {4.0, 1.0}, {3.0, 1.0}},
                            PolygonKind::kObstacle});
  ScanConfig config;
  config.beams = 1;
  config.field_of_view = 0.0;
  const Scan scan = Raycast(world, {0.0, 0.0, 0.0}, config);
  ASSERT_EQ(scan.size(), 1);
  EXPECT_NEAR(scan.ranges[0], 3.0, 1e-12);
  EXPECT_TRUE(scan.Hit(0));
}

TEST(RaycastTest, EmptyWorldMissesEverything) {
  const Scan scan = Raycast(BuildWorld("empty"), {}, ScanConfig{});
  EXPECT_EQ(scan.size(), 36);
  for (int i = 0; i < scan.size(); ++i) {
    EXPECT_EQ(scan.ranges[i], scan.max_range);
    EXPECT_FALSE(scan.Hit(i));
  }
}

TEST(RaycastTest, BoxHitsEveryWall) {
  ScanConfig config;
  config.beams = 4;
  const Scan scan = Raycast(BuildWorld("box"), {}, config);
  ASSERT_EQ(scan.size(), 4);
  EXPECT_NEAR(scan.Angle(0), -kPi, 1e-15);
  for (double r : scan.ranges) EXPECT_NEAR(r, 5.0, 1e-12);
}

TEST(RaycastTest, MatchesRayMarching) {
  const World world = BuildWorld("star");
  ScanConfig config;
  config.beams = 90;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  int poses = 0;
  while (poses < 10) {
    const Pose2 pose{u(rng), u(rng), u(rng)};
    if (!world.IsFree(pose.translation())) continue;
    ++poses;
    const Scan scan = Raycast(world, pose, config);
    for (int i = 0; i < scan.size(); ++i) {
      EXPECT_NEAR(scan.ranges[i],
                  MarchRay(world, pose.translation(), pose.heading + scan.Angle(i),
                           config.max_range),
                  0.01);
    }
  }
}

TEST(RaycastTest, RejectsPosesInsideObstacles) {
  try {
    Raycast(BuildWorld("star"), {0.0, 0.0, 0.0}, ScanConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidPose);
  }
  EXPECT_THROW(Raycast(BuildWorld("box"), {7.0, 0.0, 0.0}, ScanConfig{}), Error);
}

TEST(ScanToTrainingTest, CountsMatchSpacing) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> range(0.05, 8.0);
  Scan scan;
  scan.angle_min = -kPi;
  scan.angle_increment = 2 * kPi / 50;
  scan.max_range = 8.0;
  for (int i = 0; i < 50; ++i) scan.ranges.push_back(i % 5 ? range(rng) : 8.0);
  const double spacing = 0.3;
  const TrainingSet train = ScanToTraining(scan, spacing);
  int expected = 0;
  int hits = 0;
  for (int i = 0; i < 50; ++i) {
    const double r = scan.ranges[i];
    expected += scan.Hit(i) ? static_cast<int>(std::ceil(r / spacing)) - 1 + 1
                            : static_cast<int>(std::floor(r / spacing + 1e-9));
    hits += scan.Hit(i);
  }
  ASSERT_EQ(static_cast<int>(train.inputs.size()), expected);
  EXPECT_EQ((train.labels.array() > 0).count(), hits);
  for (size_t i = 0; i < train.inputs.size(); ++i) {
    EXPECT_LE(train.inputs[i].norm(), 8.0 + 1e-12);
  }
}

TEST(ScanToTrainingTest, Edges) {
  Scan scan;
  scan.angle_min = 0.0;
  scan.max_range = 2.0;
  scan.ranges = {1.0};
  const TrainingSet hit = ScanToTraining(scan, 0.5);
  ASSERT_EQ(hit.inputs.size(), 2u);
  EXPECT_NEAR((hit.inputs[0] - Point2(0.5, 0.0)).norm(), 0.0, 1e-15);
  EXPECT_EQ(hit.labels(0), -1.0);
  EXPECT_EQ(hit.labels(1), 1.0);

  scan.ranges = {2.0};
  const TrainingSet miss = ScanToTraining(scan, 0.5);
  ASSERT_EQ(miss.inputs.size(), 4u);
  EXPECT_EQ((miss.labels.array() == -1.0).count(), 4);

  EXPECT_THROW(ScanToTraining(scan, 0.0), Error);
  scan.ranges = {-1.0};
  EXPECT_THROW(ScanToTraining(scan, 0.5), Error);
}

TEST(WorldTest, StarIsWellFormed) {
  const World world = BuildWorld("star");
  ASSERT_EQ(world.polygons.size(), 2u);
  for (const Polygon& polygon : world.polygons) {
    EXPECT_EQ(polygon.vertices.size(), 10u);
    EXPECT_TRUE(IsSimplePolygon(polygon.vertices));
    for (const Point2& v : polygon.vertices) {
      EXPECT_GE(v.x(), world.lower.x());
      EXPECT_LE(v.x(), world.upper.x());
      EXPECT_GE(v.y(), world.lower.y());
      EXPECT_LE(v.y(), world.upper.y());
    }
  }
  EXPECT_FALSE(world.IsFree(Point2::Zero()));
  EXPECT_TRUE(world.IsFree(Point2(0.0, 5.0)));
  EXPECT_FALSE(world.IsFree(Point2(9.0, 9.0)));
  EXPECT_FALSE(IsSimplePolygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
  EXPECT_THROW(BuildWorld("maze"), Error);
}

TEST(SimulateTest, IsReproducible) {
  SimulationConfig config;
  config.steps = 8;
  config.noise = MotionNoise::Profile(3);
  config.pose_mode = PoseMode::kDeadReckoning;
  config.seed = 5;
  const SimulationLog a = Simulate(config);
  const SimulationLog b = Simulate(config);
  ASSERT_EQ(a.steps.size(), 8u);
  for (size_t i = 0; i < a.steps.size(); ++i) {
    EXPECT_EQ(a.steps[i].true_pose.x, b.steps[i].true_pose.x);
    EXPECT_EQ(a.steps[i].belief.covariance, b.steps[i].belief.covariance);
    EXPECT_EQ(a.steps[i].scan.ranges, b.steps[i].scan.ranges);
  }
  EXPECT_EQ(a.steps[0].belief.covariance, Matrix3::Zero());
}

TEST(SimulateTest, ExactMeanTracksTheTruePose) {
  SimulationConfig config;
  config.steps = 5;
  config.noise = MotionNoise::Profile(5);
  const SimulationLog log = Simulate(config);
  for (const SimStep& s : log.steps) {
    EXPECT_EQ(s.true_pose.x, s.belief.mean.x);
    EXPECT_EQ(s.true_pose.y, s.belief.mean.y);
  }
  EXPECT_GT(log.steps.back().belief.covariance.trace(), 0.0);
}

}  // namespace
}  // namespace wgpom
