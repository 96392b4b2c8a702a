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

#ifndef WGPOM_KERNELS_H_
#define WGPOM_KERNELS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "wgpom/common.h"

namespace wgpom {

enum class KernelFamily {
  kSquaredExponential,
  kSquaredExponentialArd,
  kMatern52,
  kSparseCompact,
};

std::string KernelFamilyName(KernelFamily family);
KernelFamily ParseKernelFamily(std::string_view name);

// Stationary covariance function over 2-D inputs. Immutable after
// construction; all hyperparameters are validated to be strictly positive.
class KernelSpec {
 public:
  static KernelSpec SquaredExponential(double signal_variance,
                                       double length_scale);
  // One length scale per input axis.
  static KernelSpec SquaredExponentialArd(double signal_variance,
                                          std::vector<double> length_scales);
  static KernelSpec Matern52(double signal_variance, double length_scale);
  // Compactly supported kernel, exactly zero beyond `support_radius` (m).
  static KernelSpec SparseCompact(double signal_variance,
                                  double support_radius);

  // Hyperparameters in log space, ordered [signal_variance, family params].
  std::vector<double> LogParameters() const;
  static KernelSpec FromLogParameters(KernelFamily family,
                                      std::span<const double> log_params);

  KernelFamily family() const { return family_; }
  double signal_variance() const { return signal_variance_; }
  const std::vector<double>& length_scales() const { return length_scales_; }
  double support_radius() const { return support_radius_; }

  // Throws kInvalidInput on non-finite coordinates.
  double Eval(const Point2& a, const Point2& b) const;
  // Same as Eval without the finiteness check; callers validate inputs.
  double EvalUnchecked(const Point2& a, const Point2& b) const;
  // Isotropic families only: value at separation r.
  double EvalDistance(double r) const;
  bool IsIsotropic() const { return family_ != KernelFamily::kSquaredExponentialArd; }

 private:
  KernelSpec(KernelFamily family, double signal_variance,
             std::vector<double> length_scales, double support_radius);

  KernelFamily family_;
  double signal_variance_;
  std::vector<double> length_scales_;
  double support_radius_;
};

// Pairwise kernel matrix; rows index `a`, columns index `b`.
Eigen::MatrixXd Gram(const KernelSpec& spec, std::span<const Point2> a,
                     std::span<const Point2> b);

}  // namespace wgpom

#endif  // WGPOM_KERNELS_H_
