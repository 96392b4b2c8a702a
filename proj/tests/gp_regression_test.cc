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
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

namespace wgpom {
namespace {

TrainingSet RandomTraining(std::mt19937_64& rng, int n, double noise) {
  TrainingSet train;
  train.inputs = testing::RandomPoints(rng, n, 3.0);
  train.labels = testing::RandomLabels(rng, n);
  train.noise_variance = noise;
  return train;
}

TEST(GpRegressionTest, SinglePointFactor) {
  TrainingSet train;
  train.inputs = {Point2(0.2, 0.1)};
  train.labels = Eigen::VectorXd::Constant(1, 1.0);
  train.noise_variance = 0.0;
  const GpModel model = Fit(train, KernelSpec::SquaredExponential(1.0, 1.0));
  ASSERT_EQ(model.cholesky_factor().rows(), 1);
  EXPECT_EQ(model.cholesky_factor()(0, 0), 1.0);
  EXPECT_EQ(model.jitter(), 0.0);
}

TEST(GpRegressionTest, FactorReconstructsSystem) {
  std::mt19937_64 rng(1);
  const KernelSpec k = KernelSpec::Matern52(1.4, 0.8);
  for (int trial = 0; trial < 10; ++trial) {
    const TrainingSet train = RandomTraining(rng, 15, 0.05);
    const GpModel model = Fit(train, k);
    const Eigen::MatrixXd system =
        Gram(k, train.inputs, train.inputs) +
        train.noise_variance * Eigen::MatrixXd::Identity(15, 15);
    const Eigen::MatrixXd& l = model.cholesky_factor();
    EXPECT_LT((l * l.transpose() - system).norm() / system.norm(), 1e-10);
    EXPECT_GT(l.diagonal().minCoeff(), 0.0);
    const Eigen::VectorXd residual = system * model.alpha() - train.labels;
    EXPECT_LT(residual.norm() / train.labels.norm(), 1e-8);
  }
}

TEST(GpRegressionTest, AlphaMatchesDenseSolve) {
  std::mt19937_64 rng(2);
  const KernelSpec k = KernelSpec::SquaredExponential(0.9, 1.2);
  const TrainingSet train = RandomTraining(rng, 10, 0.1);
  const GpModel model = Fit(train, k);
  const testing::DenseGp oracle = testing::DenseGpOracle(
      Gram(k, train.inputs, train.inputs), train.noise_variance, train.labels);
  EXPECT_LT((model.alpha() - oracle.weights).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(GpRegressionTest, PredictionMatchesDenseFormulas) {
  std::mt19937_64 rng(3);
  const KernelSpec k = KernelSpec::SquaredExponentialArd(1.3, {0.7, 1.5});
  const TrainingSet train = RandomTraining(rng, 5, 0.02);
  const GpModel model = Fit(train, k);
  const auto queries = testing::RandomPoints(rng, 20, 4.0);
  const std::vector<Prediction> got = Predict(model, queries);
  const testing::DenseGp oracle = testing::DenseGpOracle(
      Gram(k, train.inputs, train.inputs), train.noise_variance, train.labels);
  for (size_t j = 0; j < queries.size(); ++j) {
    Eigen::VectorXd ks(5);
    for (int i = 0; i < 5; ++i) ks(i) = k.Eval(train.inputs[i], queries[j]);
    EXPECT_NEAR(got[j].mean, ks.dot(oracle.weights), 1e-8);
    EXPECT_NEAR(got[j].variance,
                k.Eval(queries[j], queries[j]) - ks.dot(oracle.inverse * ks), 1e-8);
  }
}

TEST(GpRegressionTest, InterpolatesWithTinyNoise) {
  std::mt19937_64 rng(4);
  TrainingSet train = RandomTraining(rng, 6, 1e-12);
  const GpModel model = Fit(train, KernelSpec::SquaredExponential(1.0, 0.5));
  const std::vector<Prediction> p = Predict(model, train.inputs);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(p[i].mean, train.labels(i), 1e-4);
}

TEST(GpRegressionTest, RevertsToPriorFarAway) {
  std::mt19937_64 rng(5);
  const TrainingSet train = RandomTraining(rng, 8, 0.1);
  const double l = 0.5;
  const GpModel model = Fit(train, KernelSpec::SquaredExponential(2.0, l));
  const std::vector<Point2> far = {Point2(60 * l + 10.0, 0.0)};
  const Prediction p = Predict(model, far)[0];
  EXPECT_LT(std::abs(p.mean), 1e-6);
  EXPECT_NEAR(p.variance, 2.0, 1e-12);
}

TEST(GpRegressionTest, NlmlZeroDataTerm) {
  TrainingSet train;
  train.inputs = {Point2::Zero()};
  train.labels = Eigen::VectorXd::Zero(1);
  train.noise_variance = 0.0;
  const GpModel model = Fit(train, KernelSpec::SquaredExponential(1.0, 1.0));
  EXPECT_NEAR(Nlml(model), 0.5 * std::log(2.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(Nlml(model), 0.918939, 1e-6);
}

TEST(GpRegressionTest, NlmlMatchesDenseDeterminant) {
  std::mt19937_64 rng(6);
  const KernelSpec k = KernelSpec::Matern52(0.7, 1.3);
  for (int trial = 0; trial < 5; ++trial) {
    const TrainingSet train = RandomTraining(rng, 5, 0.2);
    const testing::DenseGp oracle = testing::DenseGpOracle(
        Gram(k, train.inputs, train.inputs), train.noise_variance, train.labels);
    EXPECT_NEAR(Nlml(Fit(train, k)), oracle.nlml, 1e-8);
  }
}

TEST(GpRegressionTest, NlmlInvariantToLabelSign) {
  std::mt19937_64 rng(7);
  TrainingSet train = RandomTraining(rng, 12, 0.1);
  const KernelSpec k = KernelSpec::SquaredExponential(1.0, 1.0);
  const double before = Nlml(Fit(train, k));
  train.labels = -train.labels;
  EXPECT_NEAR(Nlml(Fit(train, k)), before, 1e-12);
}

TEST(GpRegressionTest, PosteriorVarianceBounds) {
  std::mt19937_64 rng(8);
  const KernelSpec k = KernelSpec::SquaredExponential(1.5, 0.8);
  for (int trial = 0; trial < 10; ++trial) {
    const TrainingSet train = RandomTraining(rng, 12, 0.05);
    const GpModel model = Fit(train, k);
    for (const Prediction& p : Predict(model, testing::RandomPoints(rng, 30, 4.0))) {
      EXPECT_GT(p.variance, 0.0);
      EXPECT_LE(p.variance, k.signal_variance() + 1e-10);
    }
  }
}

TEST(GpRegressionTest, AddingDataNeverIncreasesVariance) {
  std::mt19937_64 rng(9);
  const KernelSpec k = KernelSpec::Matern52(1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    TrainingSet train = RandomTraining(rng, 8, 0.1);
    const auto queries = testing::RandomPoints(rng, 10, 3.0);
    const std::vector<Prediction> before = Predict(Fit(train, k), queries);
    train.inputs.push_back(testing::RandomPoints(rng, 1, 3.0)[0]);
    train.labels.conservativeResize(9);
    train.labels(8) = 1.0;
    const std::vector<Prediction> after = Predict(Fit(train, k), queries);
    for (size_t j = 0; j < queries.size(); ++j) {
      EXPECT_LE(after[j].variance, before[j].variance + 1e-8);
    }
  }
}

TEST(GpRegressionTest, DuplicateInputsReceiveJitter) {
  TrainingSet train;
  train.inputs = {Point2(1.0, 1.0), Point2(1.0, 1.0)};
  train.labels = Eigen::Vector2d(1.0, 1.0);
  train.noise_variance = 0.0;
  // Exactly singular: the second Cholesky pivot is 4 - 2 * 2 = 0.
  const GpModel model = Fit(train, KernelSpec::SquaredExponential(4.0, 1.0));
  EXPECT_DOUBLE_EQ(model.jitter(), 4e-8);
}

TEST(GpRegressionTest, IndefiniteCovarianceIsIllConditioned) {
  Eigen::Matrix2d c;
  c << 1.0, 2.0, 2.0, 1.0;
  try {
    GpModel::FromCovariance({Point2::Zero(), Point2::Ones()}, c,
                            Eigen::Vector2d(1.0, -1.0),
                            KernelSpec::SquaredExponential(1.0, 1.0), 0.0);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIllConditioned);
    EXPECT_NE(std::string(e.what()).find("minimum pivot"), std::string::npos);
  }
}

TEST(GpRegressionTest, ValidateRejectsBadTrainingSets) {
  TrainingSet train;
  EXPECT_THROW(train.Validate(), Error);
  train.inputs = {Point2::Zero()};
  train.labels = Eigen::Vector2d(1.0, 1.0);
  EXPECT_THROW(train.Validate(), Error);
  train.labels = Eigen::VectorXd::Constant(1, std::nan(""));
  EXPECT_THROW(train.Validate(), Error);
  train.labels = Eigen::VectorXd::Constant(1, 1.0);
  Matrix2 asym;
  asym << 1.0, 0.5, 0.0, 1.0;
  train.input_covariances = {asym};
  EXPECT_THROW(train.Validate(), Error);
  train.input_covariances = {-Matrix2::Identity()};
  EXPECT_THROW(train.Validate(), Error);
  train.input_covariances = {Matrix2::Identity()};
  EXPECT_NO_THROW(train.Validate());
}

}  // namespace
}  // namespace wgpom
