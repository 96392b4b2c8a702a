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

#include "wgpom/hyperparameters.h"

#include <cmath>
#include <limits>

#include "wgpom/nelder_mead.h"

namespace wgpom {
namespace {

struct Layout {
  size_t kernel_count;
  size_t warp_count;
  bool noise;
};

}  // namespace

double TrainingNlml(const TrainingSet& train, const KernelSpec& kernel,
                    const std::optional<WarpSpec>& warp,
                    const ExpectationMethod& expectation) {
  if (!train.HasInputCovariances()) {
    return warp ? WgpNlml(train, kernel, *warp) : Nlml(Fit(train, kernel));
  }
  train.Validate();
  std::vector<UncertainPoint> points(train.inputs.size());
  for (size_t i = 0; i < points.size(); ++i) {
    points[i] = {train.inputs[i], train.input_covariances[i]};
  }
  const ExpectedGram gram = ComputeExpectedGram(kernel, points, {}, expectation);
  Eigen::VectorXd targets = train.labels;
  double log_jacobian = 0.0;
  if (warp) {
    for (Eigen::Index i = 0; i < targets.size(); ++i) {
      targets(i) = warp->Warp(train.labels(i));
      log_jacobian += std::log(warp->Derivative(train.labels(i)));
    }
  }
  const GpModel model = GpModel::FromCovariance(
      train.inputs, gram.train_train, targets, kernel, train.noise_variance);
  return model.Nlml() - log_jacobian;
}

HyperparameterFit OptimizeHyperparameters(
    const TrainingSet& train, const KernelSpec& kernel_init,
    const std::optional<WarpSpec>& warp_init,
    const HyperparameterOptions& options) {
  if (options.budget < 1) {
    throw Error(ErrorCode::kInvalidInput, "optimization budget must be >= 1");
  }
  train.Validate();

  const std::vector<double> kernel_params = kernel_init.LogParameters();
  const std::vector<double> warp_params =
      warp_init ? warp_init->Parameters() : std::vector<double>{};
  const Layout layout{kernel_params.size(), warp_params.size(),
                      options.optimize_noise};
  const Eigen::Index dim = static_cast<Eigen::Index>(
      layout.kernel_count + layout.warp_count + (layout.noise ? 1 : 0));

  Eigen::VectorXd start(dim);
  for (size_t i = 0; i < kernel_params.size(); ++i) start(i) = kernel_params[i];
  for (size_t i = 0; i < warp_params.size(); ++i) {
    start(layout.kernel_count + i) = warp_params[i];
  }
  if (layout.noise) {
    start(dim - 1) = std::log(std::max(train.noise_variance, 1e-12));
  }

  struct Candidate {
    KernelSpec kernel;
    std::optional<WarpSpec> warp;
    double noise;
  };
  auto unpack = [&](const Eigen::VectorXd& x) {
    const std::span<const double> values(x.data(), x.size());
    Candidate c{KernelSpec::FromLogParameters(
                    kernel_init.family(), values.subspan(0, layout.kernel_count)),
                std::nullopt,
                layout.noise ? std::exp(x(dim - 1)) : train.noise_variance};
    if (warp_init) {
      c.warp = warp_init->WithParameters(
          values.subspan(layout.kernel_count, layout.warp_count));
    }
    return c;
  };

  TrainingSet scratch = train;
  auto objective = [&](const Eigen::VectorXd& x) -> double {
    try {
      const Candidate c = unpack(x);
      scratch.noise_variance = c.noise;
      return TrainingNlml(scratch, c.kernel, c.warp, options.expectation);
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  // The initial point is evaluated as given so budget 1 reproduces it exactly.
  double initial_nlml = std::numeric_limits<double>::infinity();
  try {
    initial_nlml = TrainingNlml(train, kernel_init, warp_init, options.expectation);
  } catch (const Error&) {
  }
  HyperparameterFit best{kernel_init, warp_init, train.noise_variance,
                         initial_nlml, 1};
  if (options.budget > 1 && dim > 0) {
    NelderMeadOptions nm;
    nm.budget = options.budget - 1;
    nm.initial_step = options.initial_step;
    nm.lower = Eigen::VectorXd::Constant(dim, options.log_lower);
    nm.upper = Eigen::VectorXd::Constant(dim, options.log_upper);
    // The box must contain the start so the first simplex vertex is the
    // initial point; floor-valued zero coefficients sit below log_lower.
    nm.lower = nm.lower.cwiseMin(start);
    nm.upper = nm.upper.cwiseMax(start);
    const NelderMeadResult result = MinimizeNelderMead(objective, start, nm);
    best.evaluations += result.evaluations;
    if (result.best_value < best.nlml) {
      const Candidate c = unpack(result.best_point);
      best.kernel = c.kernel;
      best.warp = c.warp;
      best.noise_variance = c.noise;
      best.nlml = result.best_value;
    }
  }
  if (!std::isfinite(best.nlml)) {
    throw OptimizationFailedError(
        "every NLML evaluation failed (ill-conditioned)", best);
  }
  return best;
}

}  // namespace wgpom
