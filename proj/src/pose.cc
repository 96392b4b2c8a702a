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

#include "wgpom/pose.h"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace wgpom {
namespace {

template <int N>
Eigen::Matrix<double, N, N> SymmetricSqrt(
    const Eigen::Matrix<double, N, N>& covariance, double tolerance) {
  using Mat = Eigen::Matrix<double, N, N>;
  if (!covariance.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "non-finite covariance");
  }
  if (covariance.isZero(0.0)) return Mat::Zero();
  const Mat symmetric = 0.5 * (covariance + covariance.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> solver;
  if constexpr (N == 2 || N == 3) {
    solver.computeDirect(symmetric);
  } else {
    solver.compute(symmetric);
  }
  const auto& values = solver.eigenvalues();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  if (values.minCoeff() < -tolerance * scale) {
    throw Error(ErrorCode::kInvalidInput, "covariance is not PSD");
  }
  return solver.eigenvectors() * values.cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

}  // namespace

double WrapAngle(double angle) {
  double wrapped = std::remainder(angle, 2.0 * std::numbers::pi);
  if (wrapped <= -std::numbers::pi) wrapped += 2.0 * std::numbers::pi;
  return wrapped;
}

Point2 Pose2::Transform(const Point2& local) const {
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  return {c * local.x() - s * local.y() + x, s * local.x() + c * local.y() + y};
}

Point2 Pose2::InverseTransform(const Point2& global) const {
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  const double dx = global.x() - x;
  const double dy = global.y() - y;
  return {c * dx + s * dy, -s * dx + c * dy};
}

Matrix2 CovarianceSqrt(const Matrix2& covariance, double tolerance) {
  return SymmetricSqrt<2>(covariance, tolerance);
}

Matrix3 CovarianceSqrt(const Matrix3& covariance, double tolerance) {
  return SymmetricSqrt<3>(covariance, tolerance);
}

Pose2 SamplePose(const PoseBelief& belief, std::mt19937_64& rng) {
  if (belief.covariance.isZero(0.0)) return belief.mean;
  std::normal_distribution<double> normal(0.0, 1.0);
  const Matrix3 root = CovarianceSqrt(belief.covariance);
  Eigen::Vector3d z;
  for (int i = 0; i < 3; ++i) z(i) = normal(rng);
  const Eigen::Vector3d d = root * z;
  return {belief.mean.x + d(0), belief.mean.y + d(1),
          WrapAngle(belief.mean.heading + d(2))};
}

}  // namespace wgpom
