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


#include "wgpom/toy_regression.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "wgpom/gp_regression.h"
#include "wgpom/quadrature.h"
#include "wgpom/uncertain_input.h"

namespace wgpom {
namespace {

std::string Format(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::vector<double> Grid(double lo, double hi, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  }
  return x;
}

std::vector<Point2> Embed(const std::vector<double>& x) {
  std::vector<Point2> points;
  points.reserve(x.size());
  for (double v : x) points.emplace_back(v, 0.0);
  return points;
}

double Coverage(const std::vector<double>& truth, const std::vector<double>& mean,
                const std::vector<double>& sd) {
  int inside = 0;
  for (size_t i = 0; i < truth.size(); ++i) {
    if (std::abs(truth[i] - mean[i]) <= 2.0 * sd[i]) ++inside;
  }
  return truth.empty() ? 0.0 : static_cast<double>(inside) / truth.size();
}

}  // namespace

double UncertainInputTruth(double x) {
  return 0.2 * std::cos(x * x) * std::exp(-x) + 0.15 * std::sin(x);
}

double StepTruth(double x) { return std::tanh(3.0 * (x - 3.0)); }

std::string UncertainInputDemo::ToCsv() const {
  std::string out = "x,truth,gp_mean,gp_std,gpek_mean,gpek_std\n";
  for (size_t i = 0; i < x.size(); ++i) {
    out += Format(x[i]) + "," + Format(truth[i]) + "," + Format(gp_mean[i]) + "," +
           Format(gp_std[i]) + "," + Format(gpek_mean[i]) + "," +
           Format(gpek_std[i]) + "\n";
  }
  return out;
}

double UncertainInputDemo::GpCoverage() const {
  return Coverage(truth, gp_mean, gp_std);
}

double UncertainInputDemo::GpekCoverage() const {
  return Coverage(truth, gpek_mean, gpek_std);
}

UncertainInputDemo RunUncertainInputDemo(const UncertainInputDemoOptions& options) {
  if (options.train_points < 2 || options.grid_points < 1 ||
      !(options.x_max > options.x_min) || !(options.input_noise_std >= 0.0) ||
      !(options.output_noise_std >= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "bad uncertain-input demo options");
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(options.x_min, options.x_max);
  std::normal_distribution<double> normal(0.0, 1.0);

  UncertainInputDemo demo;
  std::vector<double> true_x(options.train_points);
  for (double& x : true_x) x = uniform(rng);
  std::sort(true_x.begin(), true_x.end());
  for (double x : true_x) {
    demo.train_x.push_back(x + options.input_noise_std * normal(rng));
    demo.train_y.push_back(UncertainInputTruth(x) +
                           options.output_noise_std * normal(rng));
  }

  const double input_variance = options.input_noise_std * options.input_noise_std;
  Matrix2 input_covariance = Matrix2::Zero();
  input_covariance(0, 0) = input_variance;
  TrainingSet train;
  train.inputs = Embed(demo.train_x);
  train.labels = Eigen::Map<const Eigen::VectorXd>(demo.train_y.data(),
                                                   options.train_points);
  train.input_covariances.assign(options.train_points, input_covariance);
  train.noise_variance = 0.01;

  HyperparameterOptions hyper;
  hyper.budget = options.budget;
  hyper.optimize_noise = true;
  hyper.expectation = ExpectationMethod::GaussHermite(options.quadrature_order);
  demo.fit = OptimizeHyperparameters(
      train, KernelSpec::SquaredExponential(0.05, 1.0), std::nullopt, hyper);
  const KernelSpec& kernel = demo.fit.kernel;
  const double noise = demo.fit.noise_variance;

  demo.x = Grid(options.x_min, options.x_max, options.grid_points);
  for (double x : demo.x) demo.truth.push_back(UncertainInputTruth(x));
  const std::vector<Point2> queries = Embed(demo.x);

  const GpModel gp = FitTargets(train.inputs, train.labels, kernel, noise);
  for (const Prediction& p : Predict(gp, queries)) {
    demo.gp_mean.push_back(p.mean);
    demo.gp_std.push_back(std::sqrt(p.variance + noise));
  }

  std::vector<UncertainPoint> uncertain(options.train_points);
  for (int i = 0; i < options.train_points; ++i) {
    uncertain[i] = {train.inputs[i], input_covariance};
  }
  const ExpectedGram gram =
      ComputeExpectedGram(kernel, uncertain, queries, hyper.expectation);
  const GpModel ek = GpModel::FromCovariance(train.inputs, gram.train_train,
                                             train.labels, kernel, noise);
  const Eigen::VectorXd prior =
      Eigen::VectorXd::Constant(queries.size(), kernel.signal_variance());
  for (const Prediction& p : ek.PredictFromCross(gram.train_query, prior)) {
    demo.gpek_mean.push_back(p.mean);
    demo.gpek_std.push_back(std::sqrt(p.variance + noise));
  }
  return demo;
}

std::string WarpDemo::ToCsv() const {
  std::string out = "x,truth";
  for (const WarpDemoCurve& c : curves) {
    out += "," + c.name + "_mean," + c.name + "_lower," + c.name + "_upper";
  }
  out += "\n";
  for (size_t i = 0; i < x.size(); ++i) {
    out += Format(x[i]) + "," + Format(truth[i]);
    for (const WarpDemoCurve& c : curves) {
      out += "," + Format(c.mean[i]) + "," + Format(c.lower[i]) + "," +
             Format(c.upper[i]);
    }
    out += "\n";
  }
  return out;
}

WarpDemo RunWarpDemo(const WarpDemoOptions& options,
                     const std::vector<std::optional<WarpSpec>>& warps) {
  if (options.train_points < 2 || options.grid_points < 1 ||
      !(options.x_max > options.x_min) || !(options.output_noise_std >= 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "bad warp demo options");
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(options.x_min, options.x_max);
  std::normal_distribution<double> normal(0.0, 1.0);

  WarpDemo demo;
  demo.train_x.resize(options.train_points);
  for (double& x : demo.train_x) x = uniform(rng);
  std::sort(demo.train_x.begin(), demo.train_x.end());
  for (double x : demo.train_x) {
    demo.train_y.push_back(StepTruth(x) + options.output_noise_std * normal(rng));
  }
  TrainingSet train;
  train.inputs = Embed(demo.train_x);
  train.labels = Eigen::Map<const Eigen::VectorXd>(demo.train_y.data(),
                                                   options.train_points);
  train.noise_variance = 0.01;

  demo.x = Grid(options.x_min, options.x_max, options.grid_points);
  for (double x : demo.x) demo.truth.push_back(StepTruth(x));
  const std::vector<Point2> queries = Embed(demo.x);
  const GaussHermiteRule rule(options.quadrature_order);

  HyperparameterOptions hyper;
  hyper.budget = options.budget;
  hyper.optimize_noise = true;
  hyper.initial_step = options.initial_step;
  for (const std::optional<WarpSpec>& warp_init : warps) {
    WarpDemoCurve curve;
    curve.name = warp_init ? WarpFamilyName(warp_init->family()) : "gp";
    curve.fit = OptimizeHyperparameters(
        train, KernelSpec::SquaredExponential(1.0, 1.0), warp_init, hyper);
    TrainingSet fitted = train;
    fitted.noise_variance = curve.fit.noise_variance;
    const WarpSpec warp = curve.fit.warp ? *curve.fit.warp : WarpSpec::Identity();
    const GpModel model = curve.fit.warp ? FitWarped(fitted, curve.fit.kernel, warp)
                                         : Fit(fitted, curve.fit.kernel);
    double squared = 0.0;
    double width = 0.0;
    const std::vector<Prediction> latent = Predict(model, queries);
    for (size_t i = 0; i < latent.size(); ++i) {
      const double mean = WarpPrediction(latent[i], warp, rule).mean;
      const double sd = std::sqrt(latent[i].variance);
      curve.mean.push_back(mean);
      curve.lower.push_back(warp.Inverse(latent[i].mean - 2.0 * sd));
      curve.upper.push_back(warp.Inverse(latent[i].mean + 2.0 * sd));
      squared += (mean - demo.truth[i]) * (mean - demo.truth[i]);
      width += curve.upper.back() - curve.lower.back();
    }
    curve.rmse = std::sqrt(squared / latent.size());
    curve.mean_band_width = width / latent.size();
    demo.curves.push_back(std::move(curve));
  }
  return demo;
}

WarpDemo RunWarpDemo(const WarpDemoOptions& options) {
  return RunWarpDemo(options, {std::nullopt, InitialTanhWarp(options.tanh_steps),
                               InitialPolynomialWarp(options.polynomial_degree)});
}

}  // namespace wgpom
