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


#include "wgpom/roc.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace wgpom {
namespace {

// Fraction of (positive, negative) pairs ranked correctly, ties counting half.
double PairwiseAuc(const std::vector<double>& s, const std::vector<uint8_t>& y) {
  double wins = 0.0;
  double pairs = 0.0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (!y[i]) continue;
    for (size_t j = 0; j < s.size(); ++j) {
      if (y[j]) continue;
      pairs += 1.0;
      wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return wins / pairs;
}

ErrorCode CodeOf(const std::vector<double>& s, const std::vector<uint8_t>& y) {
  try {
    RocAuc(s, y);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kInvalidState;
}

TEST(RocTest, PerfectSeparation) {
  EXPECT_EQ(RocAuc(std::vector<double>{0.1, 0.2, 0.8, 0.9},
                   std::vector<uint8_t>{0, 0, 1, 1}),
            1.0);
  EXPECT_EQ(RocAuc(std::vector<double>{0.9, 0.8, 0.2, 0.1},
                   std::vector<uint8_t>{0, 0, 1, 1}),
            0.0);
}

TEST(RocTest, AllTiesGiveOneHalf) {
  EXPECT_EQ(RocAuc(std::vector<double>(6, 0.3),
                   std::vector<uint8_t>{1, 0, 1, 0, 0, 1}),
            0.5);
}

TEST(RocTest, MatchesPairwiseCount) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> level(0, 9);
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> s(40);
    std::vector<uint8_t> y(40);
    for (int i = 0; i < 40; ++i) {
      // Coarse levels force ties.
      s[i] = 0.1 * level(rng);
      y[i] = coin(rng);
    }
    y[0] = 1;
    y[1] = 0;
    EXPECT_NEAR(RocAuc(s, y), PairwiseAuc(s, y), 1e-12);
  }
}

TEST(RocTest, NegatedScoresInvert) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> s(200);
  std::vector<double> neg(200);
  std::vector<uint8_t> y(200);
  for (int i = 0; i < 200; ++i) {
    y[i] = i % 3 == 0;
    s[i] = normal(rng) + y[i];
    neg[i] = -s[i];
  }
  EXPECT_NEAR(RocAuc(neg, y), 1.0 - RocAuc(s, y), 1e-15);
}

TEST(RocTest, Errors) {
  EXPECT_EQ(CodeOf({0.1, 0.2}, {1, 1}), ErrorCode::kUndefinedAuc);
  EXPECT_EQ(CodeOf({0.1, 0.2}, {0, 0}), ErrorCode::kUndefinedAuc);
  EXPECT_EQ(CodeOf({}, {}), ErrorCode::kUndefinedAuc);
  EXPECT_EQ(CodeOf({0.1, 0.2}, {1}), ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf({0.1, std::nan("")}, {1, 0}), ErrorCode::kInvalidInput);
  EXPECT_EQ(CodeOf({0.1, INFINITY}, {1, 0}), ErrorCode::kInvalidInput);
}

}  // namespace
}  // namespace wgpom
