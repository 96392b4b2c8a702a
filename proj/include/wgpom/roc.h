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


#ifndef WGPOM_ROC_H_
#define WGPOM_ROC_H_

#include <cstdint>
#include <span>

#include "wgpom/common.h"

namespace wgpom {

// Area under the ROC curve from the Mann-Whitney rank statistic, with
// midranks for tied scores. Nonzero `positives[i]` marks the occupied class.
// Throws kInvalidInput on mismatched lengths or non-finite scores and
// kUndefinedAuc unless both classes are present.
double RocAuc(std::span<const double> scores, std::span<const uint8_t> positives);

}  // namespace wgpom

#endif  // WGPOM_ROC_H_
