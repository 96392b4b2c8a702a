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


#ifndef WGPOM_TOY_REGRESSION_H_
#define WGPOM_TOY_REGRESSION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wgpom/hyperparameters.h"
#include "wgpom/warping.h"

namespace wgpom {

// f(x) = cos(x^2) exp(-x) / 5 + 3 sin(x) / 20.
double UncertainInputTruth(double x);
// Smooth step tanh(3 (x - 3)).
double StepTruth(double x);

struct UncertainInputDemoOptions {
  uint64_t seed = 1;
  int train_points = 40;
  double x_min = 0.0;
  double x_max = 5.0;
  double input_noise_std = 0.6;
  double output_noise_std = 0.05;
  int grid_points = 100;
  int budget = 200;
  int quadrature_order = 9;
};

// Both curves share the hyperparameters fitted with the expected-kernel
// likelihood; the standard GP ignores the input noise.
struct UncertainInputDemo {
  std::vector<double> train_x;  // observed (noisy) inputs
  std::vector<double> train_y;
  std::vector<double> x;
  std::vector<double> truth;
  std::vector<double> gp_mean;
  std::vector<double> gp_std;
  std::vector<double> gpek_mean;
  std::vector<double> gpek_std;
  HyperparameterFit fit;

  // Header "x,truth,gp_mean,gp_std,gpek_mean,gpek_std".
  std::string ToCsv() const;
  // Fraction of grid points with |truth - mean| <= 2 std.
  double GpCoverage() const;
  double GpekCoverage() const;
};

UncertainInputDemo RunUncertainInputDemo(const UncertainInputDemoOptions& options);

struct WarpDemoOptions {
  uint64_t seed = 1;
  int train_points = 30;
  double x_min = 0.0;
  double x_max = 6.0;
  double output_noise_std = 0.05;
  int grid_points = 100;
  int budget = 400;
  double initial_step = 0.25;
  int tanh_steps = 2;
  int polynomial_degree = 5;
  int quadrature_order = 20;
};

struct WarpDemoCurve {
  std::string name;
  std::vector<double> mean;
  // Inverse-warped latent mean -/+ 2 latent std.
  std::vector<double> lower;
  std::vector<double> upper;
  HyperparameterFit fit;
  // Against the truth on the grid.
  double rmse = 0.0;
  double mean_band_width = 0.0;
};

struct WarpDemo {
  std::vector<double> train_x;
  std::vector<double> train_y;
  std::vector<double> x;
  std::vector<double> truth;
  std::vector<WarpDemoCurve> curves;

  // Header "x,truth" then "<name>_mean,<name>_lower,<name>_upper" per curve.
  std::string ToCsv() const;
};

// One curve per warp; std::nullopt is the standard GP. The starting
// hyperparameters (kernel and warp) and the budget are shared.
WarpDemo RunWarpDemo(const WarpDemoOptions& options,
                     const std::vector<std::optional<WarpSpec>>& warps);

// Standard GP, tanh WGP and polynomial WGP.
WarpDemo RunWarpDemo(const WarpDemoOptions& options);

}  // namespace wgpom

#endif  // WGPOM_TOY_REGRESSION_H_
