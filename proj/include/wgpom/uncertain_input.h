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

#ifndef WGPOM_UNCERTAIN_INPUT_H_
#define WGPOM_UNCERTAIN_INPUT_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "wgpom/common.h"
#include "wgpom/kernels.h"
#include "wgpom/pose.h"
#include "wgpom/quadrature.h"

namespace wgpom {

// x = mean + e with e ~ N(0, covariance).
struct UncertainPoint {
  Point2 mean;
  Matrix2 covariance = Matrix2::Zero();

  // Throws kInvalidInput unless the covariance is symmetric (1e-12) with
  // eigenvalues >= -1e-12.
  void Validate() const;
};

// Monte-Carlo expected kernel, averaging k over `n_samples` draws of the
// uncertain endpoint(s). Deterministic given `seed`.
double ExpectedKernelMonteCarlo(const KernelSpec& spec, const UncertainPoint& p,
                                const Point2& q, int n_samples, uint64_t seed);
// Both endpoints uncertain and independently sampled.
double ExpectedKernelMonteCarlo(const KernelSpec& spec, const UncertainPoint& p,
                                const UncertainPoint& q, int n_samples,
                                uint64_t seed);

// Tensor-product Gauss-Hermite expected kernel. With S S^T = 2 Sigma the
// nodes are x = S u + mean and
//
//   E[k] ~= pi^-1 sum_i sum_j w_i w_j k(S [u_i, u_j]^T + mean, q).
//
// The pi^-1 constant is the one that makes Sigma -> 0 reproduce k exactly.
double ExpectedKernelGaussHermite(const KernelSpec& spec,
                                  const UncertainPoint& p, const Point2& q,
                                  const GaussHermiteRule& rule);

// How training-training entries integrate their two uncertain endpoints.
enum class TwoEndpointRule {
  // Integrates the difference of the endpoints, N(mp - mq, Sp + Sq), with the
  // 2-D rule. Exact reduction for stationary kernels.
  kSummedCovariance,
  // Full tensor-product rule over the 4-D joint (order^4 evaluations).
  kProduct,
};

double ExpectedKernelGaussHermite(const KernelSpec& spec,
                                  const UncertainPoint& p,
                                  const UncertainPoint& q,
                                  const GaussHermiteRule& rule,
                                  TwoEndpointRule two_endpoint);

struct ExpectationMethod {
  enum class Kind { kMonteCarlo, kGaussHermite };

  static ExpectationMethod MonteCarlo(int samples, uint64_t seed) {
    return {Kind::kMonteCarlo, samples, seed, 0, TwoEndpointRule::kSummedCovariance};
  }
  static ExpectationMethod GaussHermite(
      int order,
      TwoEndpointRule two_endpoint = TwoEndpointRule::kSummedCovariance) {
    return {Kind::kGaussHermite, 0, 0, order, two_endpoint};
  }

  Kind kind;
  int samples;
  uint64_t seed;
  int order;
  TwoEndpointRule two_endpoint;
};

struct ExpectedGram {
  Eigen::MatrixXd train_train;
  // Training rows by query columns; the query endpoint is deterministic.
  Eigen::MatrixXd train_query;
  // 1 when the training block needed eigenvalue clipping.
  int psd_clips = 0;
  double min_eigenvalue = 0.0;
};

// Expected training covariance and training-query cross covariance. The
// diagonal keeps k(x, x) (stationary kernels). The training block is
// symmetrized and, if its smallest eigenvalue is below -1e-8, clipped to PSD.
// Monte-Carlo entries use per-entry seeds derived from (seed, row, col).
ExpectedGram ComputeExpectedGram(const KernelSpec& spec,
                                 std::span<const UncertainPoint> train,
                                 std::span<const Point2> queries,
                                 const ExpectationMethod& method);

// Sigma-point parameters. alpha = 1, beta = 0, kappa = 0 is the original
// unscented transform with n + kappa = 3 for the 3-D pose.
struct UnscentedParams {
  double alpha = 1.0;
  double beta = 0.0;
  double kappa = 0.0;
};

// Maps robot-frame points into the world frame under pose uncertainty using
// the 7 sigma points of the pose belief.
std::vector<UncertainPoint> UnscentedTransform(
    std::span<const Point2> local_points, const PoseBelief& pose,
    const UnscentedParams& params = {});

}  // namespace wgpom

#endif  // WGPOM_UNCERTAIN_INPUT_H_
