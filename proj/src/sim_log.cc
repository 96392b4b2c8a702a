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

#include <cstdio>
#include <sstream>

#include "wgpom/map_io.h"

namespace wgpom {
namespace {

void Append(std::string* out, double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), " %.17g", value);
  *out += buffer;
}

Error LogError(int line, const std::string& message) {
  return Error(ErrorCode::kIo, "simlog line " + std::to_string(line) + ": " +
                                   message);
}

}  // namespace

std::string EncodeSimulationLog(const SimulationLog& log) {
  std::string out = std::string(kSimLogHeader) + "\nworld " + log.world + "\n";
  for (size_t i = 0; i < log.steps.size(); ++i) {
    const SimStep& step = log.steps[i];
    out += "STEP " + std::to_string(i);
    for (const Pose2& p : {step.true_pose, step.belief.mean}) {
      Append(&out, p.x);
      Append(&out, p.y);
      Append(&out, p.heading);
    }
    const Matrix3& c = step.belief.covariance;
    for (int r = 0; r < 3; ++r) {
      for (int k = r; k < 3; ++k) Append(&out, c(r, k));
    }
    Append(&out, step.scan.angle_min);
    Append(&out, step.scan.angle_increment);
    Append(&out, step.scan.max_range);
    out += " " + std::to_string(step.scan.size());
    for (double r : step.scan.ranges) Append(&out, r);
    out += "\n";
  }
  return out;
}

SimulationLog DecodeSimulationLog(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_number = 1;
  if (!std::getline(in, line) || line != kSimLogHeader) {
    throw LogError(1, "missing '" + std::string(kSimLogHeader) + "' header");
  }
  SimulationLog log;
  bool have_world = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "world") {
      if (!(fields >> log.world)) throw LogError(line_number, "missing name");
      have_world = true;
      continue;
    }
    if (tag != "STEP") throw LogError(line_number, "unknown record '" + tag + "'");
    SimStep step;
    size_t index = 0;
    double v[15];
    fields >> index;
    for (double& x : v) fields >> x;
    int n = -1;
    fields >> n;
    if (!fields || n < 0 || index != log.steps.size()) {
      throw LogError(line_number, "malformed STEP record");
    }
    step.true_pose = {v[0], v[1], v[2]};
    step.belief.mean = {v[3], v[4], v[5]};
    int k = 6;
    for (int r = 0; r < 3; ++r) {
      for (int c = r; c < 3; ++c) {
        step.belief.covariance(r, c) = v[k];
        step.belief.covariance(c, r) = v[k];
        ++k;
      }
    }
    step.scan.angle_min = v[12];
    step.scan.angle_increment = v[13];
    step.scan.max_range = v[14];
    step.scan.ranges.resize(n);
    for (double& r : step.scan.ranges) fields >> r;
    std::string extra;
    if (!fields || (fields >> extra)) {
      throw LogError(line_number, "range count does not match");
    }
    try {
      step.scan.Validate();
    } catch (const Error& e) {
      throw LogError(line_number, e.what());
    }
    log.steps.push_back(std::move(step));
  }
  if (!have_world) throw LogError(line_number, "missing world record");
  return log;
}

void WriteSimulationLog(const std::string& path, const SimulationLog& log) {
  WriteTextFile(path, EncodeSimulationLog(log));
}

SimulationLog ReadSimulationLog(const std::string& path) {
  return DecodeSimulationLog(ReadTextFile(path));
}

}  // namespace wgpom
