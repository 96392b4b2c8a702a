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

#ifndef WGPOM_QUADRATURE_H_
#define WGPOM_QUADRATURE_H_

#include <vector>

namespace wgpom {

// n-point Gauss-Hermite rule for integrals of exp(-x^2) f(x) over the real
// line. Nodes are the roots of the physicists' Hermite polynomial H_n, stored
// in ascending order and exactly symmetric about zero. Weights sum to sqrt(pi).
class GaussHermiteRule {
 public:
  // Roots are found by Newton iteration on the orthonormal Hermite
  // recurrence; throws kInvalidInput for order < 1 or order > 200.
  explicit GaussHermiteRule(int order);

  int order() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  // Sum_j w_j f(x_j).
  template <typename F>
  double Integrate(F&& f) const {
    double sum = 0.0;
    for (size_t j = 0; j < nodes_.size(); ++j) sum += weights_[j] * f(nodes_[j]);
    return sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace wgpom

#endif  // WGPOM_QUADRATURE_H_
