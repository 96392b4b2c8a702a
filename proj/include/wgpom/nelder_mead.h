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

#ifndef WGPOM_NELDER_MEAD_H_
#define WGPOM_NELDER_MEAD_H_

#include <functional>

#include <Eigen/Core>

namespace wgpom {

struct NelderMeadOptions {
  // Maximum number of objective evaluations, including the initial point.
  int budget = 200;
  // Initial simplex edge along each coordinate.
  double initial_step = 0.5;
  // Simplex diameter below which the search restarts around the best point.
  double collapse_tolerance = 1e-7;
  // Box the iterates are projected onto.
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

struct NelderMeadResult {
  Eigen::VectorXd best_point;
  // +infinity when every evaluation failed.
  double best_value;
  int evaluations = 0;
  int restarts = 0;
};

// Derivative-free minimization. The objective may return +inf (or NaN) to
// flag a failed evaluation. The evaluation sequence does not depend on the
// budget, so a larger budget never yields a worse best value.
NelderMeadResult MinimizeNelderMead(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const Eigen::VectorXd& start, const NelderMeadOptions& options);

}  // namespace wgpom

#endif  // WGPOM_NELDER_MEAD_H_
