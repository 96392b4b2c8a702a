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


#include "wgpom/sim_log.h"

#include <string>

#include "gtest/gtest.h"

namespace wgpom {
namespace {

ErrorCode DecodeCode(const std::string& text, std::string* message) {
  try {
    DecodeSimulationLog(text);
  } catch (const Error& e) {
    *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "decoded: " << text;
  return ErrorCode::kInvalidState;
}

TEST(SimLogTest, RoundTripIsLossless) {
  SimulationConfig config;
  config.steps = 6;
  config.noise = MotionNoise::Profile(4);
  config.seed = 3;
  const SimulationLog log = Simulate(config);
  const std::string text = EncodeSimulationLog(log);
  EXPECT_EQ(text.rfind(kSimLogHeader, 0), 0u);
  const SimulationLog back = DecodeSimulationLog(text);
  EXPECT_EQ(back.world, log.world);
  ASSERT_EQ(back.steps.size(), log.steps.size());
  for (size_t i = 0; i < log.steps.size(); ++i) {
    const SimStep& a = log.steps[i];
    const SimStep& b = back.steps[i];
    EXPECT_EQ(a.true_pose.x, b.true_pose.x);
    EXPECT_EQ(a.true_pose.heading, b.true_pose.heading);
    EXPECT_EQ(a.belief.mean.y, b.belief.mean.y);
    EXPECT_EQ(a.belief.covariance, b.belief.covariance);
    EXPECT_EQ(a.scan.ranges, b.scan.ranges);
    EXPECT_EQ(a.scan.angle_min, b.scan.angle_min);
    EXPECT_EQ(a.scan.angle_increment, b.scan.angle_increment);
    EXPECT_EQ(a.scan.max_range, b.scan.max_range);
  }
  EXPECT_EQ(EncodeSimulationLog(back), text);
}

TEST(SimLogTest, MalformedLinesNameTheLine) {
  SimulationConfig config;
  config.steps = 2;
  const std::string good = EncodeSimulationLog(Simulate(config));
  std::string message;
  EXPECT_EQ(DecodeCode("", &message), ErrorCode::kIo);
  EXPECT_EQ(DecodeCode("# something else\n", &message), ErrorCode::kIo);

  std::string truncated = good.substr(0, good.rfind(' '));
  EXPECT_EQ(DecodeCode(truncated, &message), ErrorCode::kIo);
  EXPECT_NE(message.find("line 4"), std::string::npos) << message;

  std::string garbage = good;
  garbage.insert(garbage.find("STEP 1") + 7, "x");
  EXPECT_EQ(DecodeCode(garbage, &message), ErrorCode::kIo);
  EXPECT_NE(message.find("line 4"), std::string::npos) << message;
}

}  // namespace
}  // namespace wgpom
