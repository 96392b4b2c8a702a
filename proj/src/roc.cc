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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace wgpom {

double RocAuc(std::span<const double> scores, std::span<const uint8_t> positives) {
  if (scores.size() != positives.size()) {
    throw Error(ErrorCode::kInvalidInput, "scores and labels differ in length");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) throw Error(ErrorCode::kInvalidInput, "non-finite score");
  }
  const size_t n = scores.size();
  const size_t n_pos = positives.size() - std::count(positives.begin(),
                                                    positives.end(), 0);
  const size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw Error(ErrorCode::kUndefinedAuc, "AUC needs both classes");
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] < scores[b]; });
  // Twice the rank sum keeps midranks integral.
  uint64_t twice_rank_sum = 0;
  for (size_t i = 0; i < n;) {
    size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const uint64_t twice_midrank = i + 1 + j;
    for (size_t k = i; k < j; ++k) {
      if (positives[order[k]]) twice_rank_sum += twice_midrank;
    }
    i = j;
  }
  // 2U = 2R - n_pos (n_pos + 1), exact in integers.
  const uint64_t twice_u = twice_rank_sum - n_pos * (n_pos + 1);
  return static_cast<double>(twice_u) / (2.0 * static_cast<double>(n_pos) *
                                         static_cast<double>(n_neg));
}

}  // namespace wgpom
