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


#ifndef WGPOM_SIM_LOG_H_
#define WGPOM_SIM_LOG_H_

#include <string>

#include "wgpom/simulator.h"

namespace wgpom {

// Line-oriented text log:
//
//   # wgpom-simlog v1
//   world <name>
//   STEP <i> <true x y theta> <mean x y theta> <c11 c12 c13 c22 c23 c33>
//        <angle_min> <angle_increment> <max_range> <n> <range_1 ... range_n>
//
// (one STEP per line). Reals are printed with 17 significant digits so a
// write/read cycle is lossless.
inline constexpr char kSimLogHeader[] = "# wgpom-simlog v1";

std::string EncodeSimulationLog(const SimulationLog& log);
// Throws kIo with the line number on malformed input.
SimulationLog DecodeSimulationLog(const std::string& text);

void WriteSimulationLog(const std::string& path, const SimulationLog& log);
SimulationLog ReadSimulationLog(const std::string& path);

}  // namespace wgpom

#endif  // WGPOM_SIM_LOG_H_
