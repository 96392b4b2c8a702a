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

#include "wgpom/nelder_mead.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace wgpom {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class BudgetedObjective {
 public:
  BudgetedObjective(
      const std::function<double(const Eigen::VectorXd&)>& objective,
      const NelderMeadOptions& options, NelderMeadResult* result)
      : objective_(objective), options_(options), result_(result) {}

  bool Exhausted() const { return result_->evaluations >= options_.budget; }

  Eigen::VectorXd Project(Eigen::VectorXd x) const {
    if (options_.lower.size() == x.size()) x = x.cwiseMax(options_.lower);
    if (options_.upper.size() == x.size()) x = x.cwiseMin(options_.upper);
    return x;
  }

  double operator()(const Eigen::VectorXd& x) {
    ++result_->evaluations;
    double value = objective_(x);
    if (!std::isfinite(value)) value = kInf;
    if (value < result_->best_value) {
      result_->best_value = value;
      result_->best_point = x;
    }
    return value;
  }

 private:
  const std::function<double(const Eigen::VectorXd&)>& objective_;
  const NelderMeadOptions& options_;
  NelderMeadResult* result_;
};

}  // namespace

NelderMeadResult MinimizeNelderMead(
    const std::function<double(const Eigen::VectorXd&)>& objective,
    const Eigen::VectorXd& start, const NelderMeadOptions& options) {
  NelderMeadResult result;
  result.best_value = kInf;
  result.best_point = start;
  BudgetedObjective f(objective, options, &result);

  const Eigen::Index dim = start.size();
  const Eigen::VectorXd x0 = f.Project(start);
  f(x0);
  if (dim == 0) return result;

  std::vector<Eigen::VectorXd> simplex;
  std::vector<double> values;
  auto build_simplex = [&](const Eigen::VectorXd& center, double center_value) {
    simplex.assign(1, center);
    values.assign(1, center_value);
    for (Eigen::Index i = 0; i < dim && !f.Exhausted(); ++i) {
      Eigen::VectorXd vertex = center;
      vertex(i) += options.initial_step;
      vertex = f.Project(vertex);
      if (vertex(i) == center(i)) {
        vertex(i) -= options.initial_step;
        vertex = f.Project(vertex);
      }
      simplex.push_back(vertex);
      values.push_back(f(vertex));
    }
  };
  build_simplex(x0, result.best_value);

  std::vector<size_t> order(simplex.size());
  while (!f.Exhausted() && simplex.size() == static_cast<size_t>(dim + 1)) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return values[a] < values[b]; });
    const size_t best = order.front();
    const size_t worst = order.back();
    const size_t second_worst = order[order.size() - 2];

    double diameter = 0.0;
    for (const auto& v : simplex) {
      diameter = std::max(diameter, (v - simplex[best]).lpNorm<Eigen::Infinity>());
    }
    if (diameter < options.collapse_tolerance) {
      ++result.restarts;
      build_simplex(simplex[best], values[best]);
      order.resize(simplex.size());
      continue;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (size_t i = 0; i < simplex.size(); ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= static_cast<double>(dim);

    const Eigen::VectorXd reflected =
        f.Project(centroid + (centroid - simplex[worst]));
    const double reflected_value = f(reflected);
    if (reflected_value < values[best]) {
      if (f.Exhausted()) break;
      const Eigen::VectorXd expanded =
          f.Project(centroid + 2.0 * (centroid - simplex[worst]));
      const double expanded_value = f(expanded);
      if (expanded_value < reflected_value) {
        simplex[worst] = expanded;
        values[worst] = expanded_value;
      } else {
        simplex[worst] = reflected;
        values[worst] = reflected_value;
      }
      continue;
    }
    if (reflected_value < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = reflected_value;
      continue;
    }
    if (f.Exhausted()) break;
    const bool outside = reflected_value < values[worst];
    const Eigen::VectorXd contracted =
        outside ? f.Project(centroid + 0.5 * (reflected - centroid))
                : f.Project(centroid + 0.5 * (simplex[worst] - centroid));
    const double contracted_value = f(contracted);
    if (contracted_value < std::min(reflected_value, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = contracted_value;
      continue;
    }
    // Shrink toward the best vertex.
    for (size_t i = 0; i < simplex.size() && !f.Exhausted(); ++i) {
      if (i == best) continue;
      simplex[i] = f.Project(simplex[best] + 0.5 * (simplex[i] - simplex[best]));
      values[i] = f(simplex[i]);
    }
  }
  return result;
}

}  // namespace wgpom
