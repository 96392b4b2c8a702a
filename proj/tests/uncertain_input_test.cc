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


#include "wgpom/uncertain_input.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "test_util.h"

namespace wgpom {
namespace {

TEST(UncertainInputTest, ZeroCovarianceReducesToTheKernel) {
  const KernelSpec k = KernelSpec::Matern52(1.3, 0.8);
  const UncertainPoint p{Point2(0.5, -0.2), Matrix2::Zero()};
  const Point2 q(1.0, 1.0);
  EXPECT_EQ(ExpectedKernelMonteCarlo(k, p, q, 1, 9), k.Eval(p.mean, q));
  EXPECT_EQ(ExpectedKernelMonteCarlo(k, p, q, 1000, 9), k.Eval(p.mean, q));
  EXPECT_EQ(ExpectedKernelGaussHermite(k, p, q, GaussHermiteRule(9)), k.Eval(p.mean, q));
}

TEST(UncertainInputTest, TinyCovarianceIsContinuous) {
  const KernelSpec k = KernelSpec::SquaredExponential(1.0, 0.7);
  const UncertainPoint p{Point2(0.1, 0.2), 1e-12 * Matrix2::Identity()};
  const Point2 q(0.9, -0.4);
  EXPECT_NEAR(ExpectedKernelGaussHermite(k, p, q, GaussHermiteRule(9)),
              k.Eval(p.mean, q), 1e-8);
}

TEST(UncertainInputTest, MonteCarloIsBoundedAndDeterministic) {
  std::mt19937_64 rng(1);
  const KernelSpec k = KernelSpec::SparseCompact(2.0, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    const UncertainPoint p{testing::RandomPoints(rng, 1, 2.0)[0],
                           testing::RandomCovariance(rng, 0.01, 0.5)};
    const Point2 q = testing::RandomPoints(rng, 1, 2.0)[0];
    const double a = ExpectedKernelMonteCarlo(k, p, q, 500, trial);
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 2.0);
    EXPECT_EQ(a, ExpectedKernelMonteCarlo(k, p, q, 500, trial));
  }
}

TEST(UncertainInputTest, MonteCarloConvergesToClosedForm) {
  const KernelSpec k = KernelSpec::SquaredExponential(1.2, 0.8);
  const UncertainPoint p{Point2(0.2, 0.1), 0.09 * Matrix2::Identity()};
  const Point2 q(0.7, -0.3);
  const int n = 100000;
  // Standard error from the sample variance of the same draws.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 0.3);
  double sum = 0.0;
  double sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = k.Eval(p.mean + Point2(normal(rng), normal(rng)), q);
    sum += v;
    sum2 += v * v;
  }
  const double se = std::sqrt((sum2 / n - std::pow(sum / n, 2)) / n);
  const double oracle =
      testing::ExpectedSeOracle(1.2, Eigen::Vector2d(0.8, 0.8), p.mean, p.covariance, q);
  EXPECT_NEAR(ExpectedKernelMonteCarlo(k, p, q, n, 17), oracle, 3.0 * se);
}

TEST(UncertainInputTest, GaussHermiteMatchesClosedForm) {
  std::mt19937_64 rng(2);
  const GaussHermiteRule rule(9);
  for (int trial = 0; trial < 100; ++trial) {
    const double sf2 = 0.5 + trial % 3;
    const Eigen::Vector2d l(0.6 + 0.01 * trial, 0.9);
    const KernelSpec k = KernelSpec::SquaredExponentialArd(sf2, {l(0), l(1)});
    const UncertainPoint p{testing::RandomPoints(rng, 1, 2.0)[0],
                           testing::RandomCovariance(rng, 0.0, 0.1)};
    const Point2 q = testing::RandomPoints(rng, 1, 2.0)[0];
    EXPECT_NEAR(ExpectedKernelGaussHermite(k, p, q, rule),
                testing::ExpectedSeOracle(sf2, l, p.mean, p.covariance, q), 1e-6);
  }
}

TEST(UncertainInputTest, GaussHermiteIsRotationInvariant) {
  std::mt19937_64 rng(3);
  const GaussHermiteRule rule(9);
  for (const KernelSpec& k : {KernelSpec::SquaredExponential(1.0, 0.7),
                              KernelSpec::Matern52(1.5, 1.0)}) {
    for (int trial = 0; trial < 20; ++trial) {
      const UncertainPoint p{testing::RandomPoints(rng, 1, 2.0)[0],
                             testing::RandomCovariance(rng, 0.01, 0.3)};
      const Point2 q = testing::RandomPoints(rng, 1, 2.0)[0];
      const double a = 0.1 + trial;
      Matrix2 r;
      r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
      const UncertainPoint rotated{r * p.mean, r * p.covariance * r.transpose()};
      EXPECT_NEAR(ExpectedKernelGaussHermite(k, p, q, rule),
                  ExpectedKernelGaussHermite(k, rotated, r * q, rule), 1e-10);
    }
  }
}

TEST(UncertainInputTest, MonteCarloUnbiasedAgainstGaussHermite) {
  const KernelSpec k = KernelSpec::Matern52(1.0, 0.6);
  const UncertainPoint p{Point2(0.0, 0.0),
                         (Matrix2() << 0.2, 0.05, 0.05, 0.1).finished()};
  const Point2 q(0.4, 0.3);
  const double reference = ExpectedKernelGaussHermite(k, p, q, GaussHermiteRule(15));
  const int runs = 200;
  std::vector<double> estimates(runs);
  for (int r = 0; r < runs; ++r) {
    estimates[r] = ExpectedKernelMonteCarlo(k, p, q, 100, 1000 + r);
  }
  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= runs;
  double var = 0.0;
  for (double e : estimates) var += (e - mean) * (e - mean);
  const double sigma = std::sqrt(var / (runs - 1));
  EXPECT_LT(std::abs(mean - reference), 4.0 * sigma / std::sqrt(runs));
}

TEST(UncertainInputTest, TwoEndpointRulesAgreeForSe) {
  const KernelSpec k = KernelSpec::SquaredExponential(1.0, 0.9);
  const GaussHermiteRule rule(9);
  const UncertainPoint p{Point2(0.0, 0.0),
                         (Matrix2() << 0.05, 0.01, 0.01, 0.08).finished()};
  const UncertainPoint q{Point2(0.5, -0.4), 0.03 * Matrix2::Identity()};
  const double oracle = testing::ExpectedSeOracle(
      1.0, Eigen::Vector2d(0.9, 0.9), p.mean, Matrix2(p.covariance + q.covariance), q.mean);
  EXPECT_NEAR(ExpectedKernelGaussHermite(k, p, q, rule, TwoEndpointRule::kSummedCovariance),
              oracle, 1e-8);
  EXPECT_NEAR(ExpectedKernelGaussHermite(k, p, q, rule, TwoEndpointRule::kProduct), oracle,
              1e-8);
}

TEST(UncertainInputTest, RejectsInvalidCovariances) {
  const KernelSpec k = KernelSpec::SquaredExponential(1.0, 1.0);
  const UncertainPoint bad{Point2::Zero(), -0.1 * Matrix2::Identity()};
  EXPECT_THROW(ExpectedKernelMonteCarlo(k, bad, Point2::Zero(), 10, 1), Error);
  EXPECT_THROW(ExpectedKernelGaussHermite(k, bad, Point2::Zero(), GaussHermiteRule(5)),
               Error);
  Matrix2 asym;
  asym << 1.0, 0.2, 0.1, 1.0;
  EXPECT_THROW((UncertainPoint{Point2::Zero(), asym}).Validate(), Error);
  const UncertainPoint ok{Point2::Zero(), Matrix2::Identity()};
  EXPECT_THROW(ExpectedKernelMonteCarlo(k, ok, Point2::Zero(), 0, 1), Error);
}

TEST(UncertainInputTest, ExpectedGramWithExactInputsIsTheGram) {
  std::mt19937_64 rng(4);
  const KernelSpec k = KernelSpec::Matern52(1.4, 0.7);
  const auto x = testing::RandomPoints(rng, 8, 2.0);
  const auto q = testing::RandomPoints(rng, 5, 2.0);
  std::vector<UncertainPoint> u;
  for (const Point2& p : x) u.push_back({p, Matrix2::Zero()});
  for (const ExpectationMethod& m :
       {ExpectationMethod::GaussHermite(9), ExpectationMethod::MonteCarlo(10, 3)}) {
    const ExpectedGram g = ComputeExpectedGram(k, u, q, m);
    EXPECT_EQ(g.train_train, Gram(k, x, x));
    EXPECT_EQ(g.train_query, Gram(k, x, q));
    EXPECT_EQ(g.psd_clips, 0);
  }
}

TEST(UncertainInputTest, ExpectedGramMethodsAgree) {
  std::mt19937_64 rng(5);
  const KernelSpec k = KernelSpec::SquaredExponential(1.0, 0.8);
  std::vector<UncertainPoint> u;
  for (const Point2& p : testing::RandomPoints(rng, 4, 1.5)) {
    u.push_back({p, testing::RandomCovariance(rng, 0.01, 0.2)});
  }
  const auto q = testing::RandomPoints(rng, 3, 1.5);
  const ExpectedGram gh = ComputeExpectedGram(k, u, q, ExpectationMethod::GaussHermite(9));
  const ExpectedGram mc =
      ComputeExpectedGram(k, u, q, ExpectationMethod::MonteCarlo(100000, 21));
  EXPECT_LT((gh.train_train - mc.train_train).cwiseAbs().maxCoeff(), 1e-2);
  EXPECT_LT((gh.train_query - mc.train_query).cwiseAbs().maxCoeff(), 1e-2);
  EXPECT_EQ((gh.train_train - gh.train_train.transpose()).cwiseAbs().maxCoeff(), 0.0);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(gh.train_train(i, i), 1.0);
}

TEST(UncertainInputTest, ExpectedGramIsBoundedAndSymmetric) {
  std::mt19937_64 rng(6);
  const KernelSpec k = KernelSpec::Matern52(2.0, 0.5);
  std::vector<UncertainPoint> u;
  for (const Point2& p : testing::RandomPoints(rng, 12, 2.0)) {
    u.push_back({p, testing::RandomCovariance(rng, 0.0, 0.3)});
  }
  const ExpectedGram g =
      ComputeExpectedGram(k, u, testing::RandomPoints(rng, 4, 2.0),
                          ExpectationMethod::MonteCarlo(50, 8));
  EXPECT_LE((g.train_train - g.train_train.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_GE(g.train_query.minCoeff(), 0.0);
  EXPECT_LE(g.train_query.maxCoeff(), 2.0);
  EXPECT_THROW(ComputeExpectedGram(k, {}, {}, ExpectationMethod::GaussHermite(3)), Error);
}

TEST(UnscentedTransformTest, ZeroCovarianceIsExact) {
  PoseBelief pose;
  pose.mean = {1.0, 2.0, 0.5};
  const std::vector<Point2> local = {Point2(1.0, 0.0), Point2(-0.5, 2.0)};
  const auto out = UnscentedTransform(local, pose);
  for (size_t i = 0; i < local.size(); ++i) {
    EXPECT_EQ(out[i].mean, pose.mean.Transform(local[i]));
    EXPECT_EQ(out[i].covariance, Matrix2::Zero());
  }
}

TEST(UnscentedTransformTest, TranslationCovarianceIsExact) {
  PoseBelief pose;
  pose.covariance.topLeftCorner<2, 2>() << 0.3, 0.1, 0.1, 0.2;
  const std::vector<Point2> local = {Point2(1.0, 2.0), Point2(-3.0, 0.5)};
  const auto out = UnscentedTransform(local, pose);
  for (size_t i = 0; i < local.size(); ++i) {
    EXPECT_LT((out[i].covariance - pose.covariance.topLeftCorner<2, 2>()).cwiseAbs().maxCoeff(),
              1e-12);
    EXPECT_LT((out[i].mean - local[i]).norm(), 1e-12);
  }
}

TEST(UnscentedTransformTest, MatchesMonteCarloPushForward) {
  PoseBelief pose;
  pose.mean = {0.5, -0.3, 0.4};
  pose.covariance = Eigen::Vector3d(0.01, 0.02, 0.1 * 0.1).asDiagonal();
  const Point2 local(3.0, 1.0);
  const UncertainPoint ut = UnscentedTransform(std::vector<Point2>{local}, pose)[0];

  std::mt19937_64 rng(7);
  const int n = 1000000;
  std::vector<Point2> samples(n);
  Point2 mean = Point2::Zero();
  for (int i = 0; i < n; ++i) {
    samples[i] = SamplePose(pose, rng).Transform(local);
    mean += samples[i];
  }
  mean /= n;
  Matrix2 cov = Matrix2::Zero();
  for (const Point2& s : samples) cov += (s - mean) * (s - mean).transpose();
  cov /= n - 1;
  // Standard errors: mean sqrt(C_ii / n); covariance entries from the
  // fourth central moments.
  Eigen::Matrix2d m4 = Eigen::Matrix2d::Zero();
  for (const Point2& s : samples) {
    const Point2 d = s - mean;
    Matrix2 dd = d * d.transpose();
    m4 += (dd - cov).cwiseAbs2();
  }
  m4 /= n;
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(ut.mean(i), mean(i), 3.0 * std::sqrt(cov(i, i) / n));
    for (int j = 0; j < 2; ++j) {
      EXPECT_NEAR(ut.covariance(i, j), cov(i, j), 3.0 * std::sqrt(m4(i, j) / n));
    }
  }
}

TEST(UnscentedTransformTest, RejectsCollapsedSpread) {
  PoseBelief pose;
  pose.covariance = Matrix3::Identity();
  UnscentedParams params;
  params.alpha = 0.0;
  EXPECT_THROW(UnscentedTransform(std::vector<Point2>{Point2::Zero()}, pose, params),
               Error);
}

}  // namespace
}  // namespace wgpom
