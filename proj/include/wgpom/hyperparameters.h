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

#ifndef WGPOM_HYPERPARAMETERS_H_
#define WGPOM_HYPERPARAMETERS_H_

#include <optional>

#include "wgpom/gp_regression.h"
#include "wgpom/kernels.h"
#include "wgpom/uncertain_input.h"
#include "wgpom/warping.h"

namespace wgpom {

struct HyperparameterOptions {
  // Objective evaluations; 1 returns the initial hyperparameters.
  int budget = 200;
  bool optimize_noise = false;
  double initial_step = 0.5;
  // Box on every log-hyperparameter (and on raw tanh offsets).
  double log_lower = -8.0;
  double log_upper = 5.0;
  // Used for the NLML when the training set carries input covariances.
  ExpectationMethod expectation = ExpectationMethod::GaussHermite(9);
};

struct HyperparameterFit {
  KernelSpec kernel = KernelSpec::SquaredExponential(1.0, 1.0);
  std::optional<WarpSpec> warp;
  double noise_variance = 0.0;
  double nlml = 0.0;
  int evaluations = 0;
};

// NLML of the (optionally warped) GP. Uses the expected kernel when the
// training set carries input covariances.
double TrainingNlml(const TrainingSet& train, const KernelSpec& kernel,
                    const std::optional<WarpSpec>& warp,
                    const ExpectationMethod& expectation);

class OptimizationFailedError : public Error {
 public:
  OptimizationFailedError(const std::string& message, HyperparameterFit best)
      : Error(ErrorCode::kOptimizationFailed, message), best_(std::move(best)) {}
  const HyperparameterFit& best() const { return best_; }

 private:
  HyperparameterFit best_;
};

// Nelder-Mead over log-hyperparameters minimizing the NLML. The returned NLML
// never exceeds the initial one. Throws OptimizationFailedError (carrying the
// initial spec) when every evaluation fails.
HyperparameterFit OptimizeHyperparameters(
    const TrainingSet& train, const KernelSpec& kernel_init,
    const std::optional<WarpSpec>& warp_init,
    const HyperparameterOptions& options);

}  // namespace wgpom

#endif  // WGPOM_HYPERPARAMETERS_H_
