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

#include "wgpom/quadrature.h"

#include <cmath>
#include <numbers>

#include "wgpom/common.h"

namespace wgpom {
namespace {

// Evaluates the orthonormal Hermite functions' polynomial part p_n(x) and
// returns {p_n(x), p_n'(x)}.
std::pair<double, double> OrthonormalHermite(int n, double x) {
  const double pi_quarter = std::pow(std::numbers::pi, -0.25);
  double p1 = pi_quarter;
  double p2 = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = x * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
  }
  return {p1, std::sqrt(2.0 * n) * p2};
}

}  // namespace

GaussHermiteRule::GaussHermiteRule(int order) {
  if (order < 1 || order > 200) {
    throw Error(ErrorCode::kInvalidInput,
                "Gauss-Hermite order must lie in [1, 200]");
  }
  const int n = order;
  const int half = (n + 1) / 2;
  std::vector<double> roots(half);
  std::vector<double> root_weights(half);

  // Largest roots first, using the classical asymptotic starting guesses.
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * roots[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * roots[1];
    } else {
      z = 2.0 * z - roots[i - 2];
    }
    double derivative = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = OrthonormalHermite(n, z);
      derivative = dp;
      const double step = p / dp;
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    // One more evaluation at the converged root for the weight.
    derivative = OrthonormalHermite(n, z).second;
    roots[i] = z;
    root_weights[i] = 2.0 / (derivative * derivative);
  }
  if (n % 2 == 1) {
    // The middle root of an odd-order rule is zero by symmetry.
    roots[half - 1] = 0.0;
    const double dp = OrthonormalHermite(n, 0.0).second;
    root_weights[half - 1] = 2.0 / (dp * dp);
  }

  nodes_.resize(n);
  weights_.resize(n);
  for (int i = 0; i < half; ++i) {
    nodes_[i] = -roots[i];
    weights_[i] = root_weights[i];
    nodes_[n - 1 - i] = roots[i];
    weights_[n - 1 - i] = root_weights[i];
  }
}

}  // namespace wgpom
