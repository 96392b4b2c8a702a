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

#include "wgpom/gp_regression.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace wgpom {

void TrainingSet::Validate() const {
  if (inputs.size() != static_cast<size_t>(labels.size())) {
    throw Error(ErrorCode::kInvalidInput,
                "training inputs and labels differ in length");
  }
  if (inputs.empty()) {
    throw Error(ErrorCode::kInvalidInput, "empty training set");
  }
  if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance)) {
    throw Error(ErrorCode::kInvalidInput, "noise variance must be >= 0");
  }
  for (const auto& p : inputs) {
    if (!IsFinite(p)) throw Error(ErrorCode::kInvalidInput, "non-finite input");
  }
  if (!labels.allFinite()) {
    throw Error(ErrorCode::kInvalidInput, "non-finite label");
  }
  if (!input_covariances.empty()) {
    if (input_covariances.size() != inputs.size()) {
      throw Error(ErrorCode::kInvalidInput,
                  "input covariance count differs from input count");
    }
    for (const auto& c : input_covariances) {
      if (!c.allFinite() || std::abs(c(0, 1) - c(1, 0)) > 1e-12 ||
          Eigen::SelfAdjointEigenSolver<Matrix2>(c, Eigen::EigenvaluesOnly)
                  .eigenvalues()
                  .minCoeff() < -1e-12) {
        throw Error(ErrorCode::kInvalidInput,
                    "input covariance is not symmetric PSD");
      }
    }
  }
}

GpModel GpModel::FromCovariance(std::vector<Point2> inputs,
                                const Eigen::MatrixXd& covariance,
                                Eigen::VectorXd targets, KernelSpec kernel,
                                double noise_variance) {
  const Eigen::Index n = targets.size();
  if (n == 0 || covariance.rows() != n || covariance.cols() != n) {
    throw Error(ErrorCode::kInvalidInput,
                "covariance/target dimensions disagree or are empty");
  }
  GpModel model(std::move(inputs), std::move(targets), std::move(kernel),
                noise_variance);
  Eigen::MatrixXd system = covariance;
  system.diagonal().array() += noise_variance;

  Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() != Eigen::Success) {
    model.jitter_ = 1e-8 * model.kernel_.signal_variance();
    system.diagonal().array() += model.jitter_;
    llt.compute(system);
    if (llt.info() != Eigen::Success) {
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(system);
      std::ostringstream msg;
      msg << "factorization of the " << n << "x" << n
          << " training covariance failed after jitter; minimum pivot "
          << ldlt.vectorD().minCoeff();
      throw Error(ErrorCode::kIllConditioned, msg.str());
    }
  }
  model.cholesky_ = llt.matrixL();
  model.alpha_ = llt.solve(model.targets_);
  return model;
}

std::vector<Prediction> GpModel::PredictFromCross(
    const Eigen::MatrixXd& cross, const Eigen::VectorXd& prior_variance) const {
  if (cross.rows() != size() || cross.cols() != prior_variance.size()) {
    throw Error(ErrorCode::kInvalidInput, "cross covariance has wrong shape");
  }
  const Eigen::VectorXd mean = cross.transpose() * alpha_;
  const Eigen::MatrixXd v =
      cholesky_.triangularView<Eigen::Lower>().solve(cross);
  const Eigen::VectorXd explained = v.colwise().squaredNorm().transpose();

  std::vector<Prediction> out(cross.cols());
  for (Eigen::Index j = 0; j < cross.cols(); ++j) {
    // Cancellation can push the variance to or below zero at training points
    // with tiny noise; keep it strictly positive.
    const double floor = 1e-15 * prior_variance(j);
    out[j] = {mean(j), std::max(prior_variance(j) - explained(j), floor)};
  }
  return out;
}

double GpModel::Nlml() const {
  const double n = static_cast<double>(targets_.size());
  const double data_fit = 0.5 * targets_.dot(alpha_);
  const double half_log_det = cholesky_.diagonal().array().log().sum();
  return data_fit + half_log_det + 0.5 * n * std::log(2.0 * std::numbers::pi);
}

GpModel FitTargets(std::span<const Point2> inputs,
                   const Eigen::VectorXd& targets, const KernelSpec& kernel,
                   double noise_variance) {
  if (inputs.size() != static_cast<size_t>(targets.size())) {
    throw Error(ErrorCode::kInvalidInput, "inputs and targets differ in size");
  }
  return GpModel::FromCovariance(
      std::vector<Point2>(inputs.begin(), inputs.end()),
      Gram(kernel, inputs, inputs), targets, kernel, noise_variance);
}

GpModel Fit(const TrainingSet& train, const KernelSpec& kernel) {
  train.Validate();
  return FitTargets(train.inputs, train.labels, kernel, train.noise_variance);
}

std::vector<Prediction> Predict(const GpModel& model,
                                std::span<const Point2> queries) {
  if (queries.empty()) return {};
  const Eigen::MatrixXd cross = Gram(model.kernel(), model.inputs(), queries);
  Eigen::VectorXd prior(queries.size());
  for (size_t j = 0; j < queries.size(); ++j) {
    prior(j) = model.kernel().EvalUnchecked(queries[j], queries[j]);
  }
  return model.PredictFromCross(cross, prior);
}

double Nlml(const GpModel& model) { return model.Nlml(); }

}  // namespace wgpom
