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
#include <sstream>

#include "gtest/gtest.h"

namespace wgpom {
namespace {

double Mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / v.size();
}

std::string FirstLine(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

TEST(ToyRegressionTest, TruthFunctions) {
  EXPECT_NEAR(UncertainInputTruth(0.0), 0.2, 1e-15);
  EXPECT_NEAR(UncertainInputTruth(2.0),
              0.2 * std::cos(4.0) * std::exp(-2.0) + 0.15 * std::sin(2.0), 1e-15);
  EXPECT_EQ(StepTruth(3.0), 0.0);
  EXPECT_NEAR(StepTruth(0.0), -std::tanh(9.0), 1e-15);
}

TEST(UncertainInputDemoTest, ExactInputsGiveIdenticalCurves) {
  UncertainInputDemoOptions options;
  options.input_noise_std = 0.0;
  options.budget = 60;
  const UncertainInputDemo demo = RunUncertainInputDemo(options);
  ASSERT_EQ(demo.x.size(), 100u);
  for (size_t i = 0; i < demo.x.size(); ++i) {
    EXPECT_NEAR(demo.gpek_mean[i], demo.gp_mean[i], 1e-8);
    EXPECT_NEAR(demo.gpek_std[i], demo.gp_std[i], 1e-8);
  }
}

TEST(UncertainInputDemoTest, ExpectedKernelWidensAndCovers) {
  double gp_width = 0.0;
  double ek_width = 0.0;
  double coverage = 0.0;
  const int seeds = 20;
  for (int seed = 1; seed <= seeds; ++seed) {
    UncertainInputDemoOptions options;
    options.seed = seed;
    const UncertainInputDemo demo = RunUncertainInputDemo(options);
    gp_width += Mean(demo.gp_std) / seeds;
    ek_width += Mean(demo.gpek_std) / seeds;
    coverage += demo.GpekCoverage() / seeds;
    for (size_t i = 0; i < demo.x.size(); ++i) {
      ASSERT_TRUE(std::isfinite(demo.gpek_mean[i]));
      ASSERT_GT(demo.gpek_std[i], 0.0);
    }
  }
  EXPECT_GE(ek_width, gp_width);
  EXPECT_GE(coverage, 0.9);
}

TEST(UncertainInputDemoTest, DeterministicCsv) {
  UncertainInputDemoOptions options;
  options.budget = 30;
  options.grid_points = 11;
  const std::string a = RunUncertainInputDemo(options).ToCsv();
  EXPECT_EQ(a, RunUncertainInputDemo(options).ToCsv());
  EXPECT_EQ(FirstLine(a), "x,truth,gp_mean,gp_std,gpek_mean,gpek_std");
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 12);
}

TEST(WarpDemoTest, IdentityWarpIsTheStandardGp) {
  WarpDemoOptions options;
  options.budget = 80;
  const WarpDemo demo =
      RunWarpDemo(options, {std::nullopt, std::optional<WarpSpec>(WarpSpec::Identity())});
  ASSERT_EQ(demo.curves.size(), 2u);
  EXPECT_EQ(demo.curves[0].name, "gp");
  EXPECT_EQ(demo.curves[1].mean, demo.curves[0].mean);
  EXPECT_EQ(demo.curves[1].lower, demo.curves[0].lower);
  EXPECT_EQ(demo.curves[1].upper, demo.curves[0].upper);
}

TEST(WarpDemoTest, WarpsReduceErrorOnAverage) {
  const int seeds = 40;
  double gp = 0.0;
  double tanh_rmse = 0.0;
  double poly = 0.0;
  for (int seed = 1; seed <= seeds; ++seed) {
    WarpDemoOptions options;
    options.seed = seed;
    const WarpDemo demo = RunWarpDemo(options);
    ASSERT_EQ(demo.curves.size(), 3u);
    gp += demo.curves[0].rmse / seeds;
    tanh_rmse += demo.curves[1].rmse / seeds;
    poly += demo.curves[2].rmse / seeds;
    for (const WarpDemoCurve& c : demo.curves) {
      for (size_t i = 0; i < c.mean.size(); ++i) {
        ASSERT_LE(c.lower[i], c.upper[i]);
        ASSERT_TRUE(std::isfinite(c.mean[i]));
      }
    }
  }
  EXPECT_LT(tanh_rmse, gp);
  EXPECT_LT(poly, gp);
  RecordProperty("gp_rmse", std::to_string(gp));
  RecordProperty("tanh_rmse", std::to_string(tanh_rmse));
  RecordProperty("poly_rmse", std::to_string(poly));
}

TEST(WarpDemoTest, CsvSchema) {
  WarpDemoOptions options;
  options.budget = 20;
  options.grid_points = 5;
  const WarpDemo demo = RunWarpDemo(options);
  const std::string csv = demo.ToCsv();
  EXPECT_EQ(FirstLine(csv),
            "x,truth,gp_mean,gp_lower,gp_upper,tanh_mean,tanh_lower,tanh_upper,"
            "polynomial_mean,polynomial_lower,polynomial_upper");
  EXPECT_EQ(csv, RunWarpDemo(options).ToCsv());
}

}  // namespace
}  // namespace wgpom
