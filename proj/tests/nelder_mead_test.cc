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


#include "wgpom/nelder_mead.h"

#include <cmath>
#include <limits>

#include "gtest/gtest.h"

namespace wgpom {
namespace {

double Rosenbrock(const Eigen::VectorXd& x) {
  return 100.0 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1.0 - x(0), 2);
}

NelderMeadOptions Box(int dim, int budget) {
  NelderMeadOptions options;
  options.budget = budget;
  options.lower = Eigen::VectorXd::Constant(dim, -10.0);
  options.upper = Eigen::VectorXd::Constant(dim, 10.0);
  return options;
}

TEST(NelderMeadTest, MinimizesQuadratic) {
  const Eigen::Vector3d target(0.5, -1.0, 2.0);
  auto f = [&](const Eigen::VectorXd& x) { return (x - target).squaredNorm(); };
  const NelderMeadResult r = MinimizeNelderMead(f, Eigen::VectorXd::Zero(3), Box(3, 600));
  EXPECT_LT((r.best_point - target).norm(), 1e-4);
  EXPECT_LE(r.evaluations, 600);
}

TEST(NelderMeadTest, MinimizesRosenbrock) {
  const NelderMeadResult r =
      MinimizeNelderMead(Rosenbrock, Eigen::Vector2d(-1.2, 1.0), Box(2, 2000));
  EXPECT_LT(r.best_value, 1e-6);
}

TEST(NelderMeadTest, BudgetOneEvaluatesOnlyTheStart) {
  int calls = 0;
  auto f = [&](const Eigen::VectorXd& x) {
    ++calls;
    return x.squaredNorm();
  };
  const NelderMeadResult r = MinimizeNelderMead(f, Eigen::Vector2d(1.0, 2.0), Box(2, 1));
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(r.evaluations, 1);
  EXPECT_EQ(r.best_value, 5.0);
  EXPECT_EQ(r.best_point, Eigen::VectorXd(Eigen::Vector2d(1.0, 2.0)));
}

TEST(NelderMeadTest, LargerBudgetNeverWorse) {
  double previous = std::numeric_limits<double>::infinity();
  for (int budget = 1; budget <= 512; budget *= 2) {
    const NelderMeadResult r =
        MinimizeNelderMead(Rosenbrock, Eigen::Vector2d(-1.2, 1.0), Box(2, budget));
    EXPECT_LE(r.best_value, previous);
    previous = r.best_value;
  }
}

TEST(NelderMeadTest, StaysInsideTheBox) {
  auto f = [](const Eigen::VectorXd& x) { return x.sum(); };
  NelderMeadOptions options = Box(2, 300);
  options.lower = Eigen::Vector2d(-1.0, -2.0);
  options.upper = Eigen::Vector2d(1.0, 2.0);
  auto checked = [&](const Eigen::VectorXd& x) {
    EXPECT_GE(x(0), -1.0);
    EXPECT_GE(x(1), -2.0);
    EXPECT_LE(x(0), 1.0);
    EXPECT_LE(x(1), 2.0);
    return f(x);
  };
  const NelderMeadResult r = MinimizeNelderMead(checked, Eigen::Vector2d::Zero(), options);
  EXPECT_NEAR(r.best_value, -3.0, 1e-6);
}

TEST(NelderMeadTest, ToleratesFailedEvaluations) {
  auto f = [](const Eigen::VectorXd& x) {
    if (x(0) < 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (x(0) - 1.0) * (x(0) - 1.0);
  };
  const NelderMeadResult r = MinimizeNelderMead(f, Eigen::VectorXd::Constant(1, 3.0), Box(1, 200));
  EXPECT_NEAR(r.best_point(0), 1.0, 1e-4);
}

TEST(NelderMeadTest, AllFailuresReportInfinity) {
  auto f = [](const Eigen::VectorXd&) { return std::numeric_limits<double>::infinity(); };
  const NelderMeadResult r = MinimizeNelderMead(f, Eigen::Vector2d::Zero(), Box(2, 20));
  EXPECT_TRUE(std::isinf(r.best_value));
}

TEST(NelderMeadTest, DeterministicSequence) {
  const NelderMeadResult a =
      MinimizeNelderMead(Rosenbrock, Eigen::Vector2d(0.3, 0.1), Box(2, 300));
  const NelderMeadResult b =
      MinimizeNelderMead(Rosenbrock, Eigen::Vector2d(0.3, 0.1), Box(2, 300));
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.best_point, b.best_point);
}

}  // namespace
}  // namespace wgpom
