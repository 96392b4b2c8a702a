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

#ifndef WGPOM_POSE_H_
#define WGPOM_POSE_H_

#include <random>

#include "wgpom/common.h"

namespace wgpom {

// Wraps to (-pi, pi].
double WrapAngle(double angle);

struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;

  Point2 translation() const { return {x, y}; }
  // Robot frame -> world frame.
  Point2 Transform(const Point2& local) const;
  // World frame -> robot frame.
  Point2 InverseTransform(const Point2& global) const;
};

// Pose mean with a 3x3 covariance over (x, y, heading).
struct PoseBelief {
  Pose2 mean;
  Matrix3 covariance = Matrix3::Zero();
};

// Square root S with S S^T = cov for a symmetric PSD matrix, from the
// eigendecomposition (handles rank-deficient covariances). Eigenvalues below
// -tolerance * max(1, |largest|) throw kInvalidInput; smaller negatives are
// clipped to zero.
Matrix2 CovarianceSqrt(const Matrix2& covariance, double tolerance = 1e-12);
Matrix3 CovarianceSqrt(const Matrix3& covariance, double tolerance = 1e-12);

// Draws a pose from the belief. A zero covariance returns the mean exactly.
Pose2 SamplePose(const PoseBelief& belief, std::mt19937_64& rng);

}  // namespace wgpom

#endif  // WGPOM_POSE_H_
