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

#ifndef WGPOM_GP_REGRESSION_H_
#define WGPOM_GP_REGRESSION_H_

#include <span>
#include <vector>

#include <Eigen/Core>

#include "wgpom/common.h"
#include "wgpom/kernels.h"

namespace wgpom {

// Labeled points y in {-1, +1} (possibly noise perturbed) at possibly
// uncertain locations.
struct TrainingSet {
  std::vector<Point2> inputs;
  Eigen::VectorXd labels;
  // Per-point input covariance; empty when the inputs are exact.
  std::vector<Matrix2> input_covariances;
  double noise_variance = 0.1;

  bool HasInputCovariances() const { return !input_covariances.empty(); }
  // Throws kInvalidInput when sizes disagree, labels are non-finite, or a
  // covariance is not symmetric PSD.
  void Validate() const;
};

struct Prediction {
  double mean;
  // Latent (noise-free) posterior variance.
  double variance;
};

// Exact GP posterior given a factorized training covariance. Immutable.
class GpModel {
 public:
  // Factorizes `covariance + noise_variance * I`. On failure the diagonal
  // receives one jitter of 1e-8 * signal variance; a second failure throws
  // kIllConditioned naming the smallest LDLT pivot.
  static GpModel FromCovariance(std::vector<Point2> inputs,
                                const Eigen::MatrixXd& covariance,
                                Eigen::VectorXd targets, KernelSpec kernel,
                                double noise_variance);

  const std::vector<Point2>& inputs() const { return inputs_; }
  const Eigen::VectorXd& targets() const { return targets_; }
  const KernelSpec& kernel() const { return kernel_; }
  double noise_variance() const { return noise_variance_; }
  // Lower-triangular factor L with L L^T = K + noise I (+ jitter).
  const Eigen::MatrixXd& cholesky_factor() const { return cholesky_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  double jitter() const { return jitter_; }
  int size() const { return static_cast<int>(targets_.size()); }

  // Posterior from an explicit training-by-query cross covariance and the
  // prior variance at each query. Used by both exact and expected kernels.
  std::vector<Prediction> PredictFromCross(
      const Eigen::MatrixXd& cross,
      const Eigen::VectorXd& prior_variance) const;

  double Nlml() const;

 private:
  GpModel(std::vector<Point2> inputs, Eigen::VectorXd targets,
          KernelSpec kernel, double noise_variance)
      : inputs_(std::move(inputs)),
        targets_(std::move(targets)),
        kernel_(std::move(kernel)),
        noise_variance_(noise_variance) {}

  std::vector<Point2> inputs_;
  Eigen::VectorXd targets_;
  KernelSpec kernel_;
  double noise_variance_;
  double jitter_ = 0.0;
  Eigen::MatrixXd cholesky_;
  Eigen::VectorXd alpha_;
};

// Fits on train.labels with the exact (deterministic-input) gram matrix.
GpModel Fit(const TrainingSet& train, const KernelSpec& kernel);
// Fits arbitrary targets at deterministic inputs.
GpModel FitTargets(std::span<const Point2> inputs,
                   const Eigen::VectorXd& targets, const KernelSpec& kernel,
                   double noise_variance);

std::vector<Prediction> Predict(const GpModel& model,
                                std::span<const Point2> queries);

// 1/2 t^T (K + s I)^-1 t + 1/2 log|K + s I| + n/2 log(2 pi).
double Nlml(const GpModel& model);

}  // namespace wgpom

#endif  // WGPOM_GP_REGRESSION_H_
