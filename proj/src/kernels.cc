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

#include "wgpom/kernels.h"

#include <cmath>
#include <numbers>

namespace wgpom {
namespace {

constexpr double kSqrt5 = 2.23606797749978969640917366873128;

void RequirePositive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidInput,
                std::string(what) + " must be positive and finite");
  }
}

}  // namespace

std::string KernelFamilyName(KernelFamily family) {
  switch (family) {
    case KernelFamily::kSquaredExponential: return "se";
    case KernelFamily::kSquaredExponentialArd: return "se_ard";
    case KernelFamily::kMatern52: return "matern52";
    case KernelFamily::kSparseCompact: return "sparse";
  }
  return "unknown";
}

KernelFamily ParseKernelFamily(std::string_view name) {
  if (name == "se") return KernelFamily::kSquaredExponential;
  if (name == "se_ard") return KernelFamily::kSquaredExponentialArd;
  if (name == "matern52") return KernelFamily::kMatern52;
  if (name == "sparse") return KernelFamily::kSparseCompact;
  throw Error(ErrorCode::kInvalidInput,
              "unknown kernel family '" + std::string(name) + "'");
}

KernelSpec::KernelSpec(KernelFamily family, double signal_variance,
                       std::vector<double> length_scales,
                       double support_radius)
    : family_(family),
      signal_variance_(signal_variance),
      length_scales_(std::move(length_scales)),
      support_radius_(support_radius) {
  RequirePositive(signal_variance_, "signal variance");
  for (double l : length_scales_) RequirePositive(l, "length scale");
  if (family_ == KernelFamily::kSparseCompact) {
    RequirePositive(support_radius_, "support radius");
  } else if (family_ == KernelFamily::kSquaredExponentialArd) {
    if (length_scales_.size() != 2) {
      throw Error(ErrorCode::kInvalidInput,
                  "ARD kernel needs one length scale per input dimension (2)");
    }
  } else if (length_scales_.size() != 1) {
    throw Error(ErrorCode::kInvalidInput,
                "isotropic kernel needs exactly one length scale");
  }
}

KernelSpec KernelSpec::SquaredExponential(double signal_variance,
                                          double length_scale) {
  return KernelSpec(KernelFamily::kSquaredExponential, signal_variance,
                    {length_scale}, 0.0);
}

KernelSpec KernelSpec::SquaredExponentialArd(
    double signal_variance, std::vector<double> length_scales) {
  return KernelSpec(KernelFamily::kSquaredExponentialArd, signal_variance,
                    std::move(length_scales), 0.0);
}

KernelSpec KernelSpec::Matern52(double signal_variance, double length_scale) {
  return KernelSpec(KernelFamily::kMatern52, signal_variance, {length_scale},
                    0.0);
}

KernelSpec KernelSpec::SparseCompact(double signal_variance,
                                     double support_radius) {
  return KernelSpec(KernelFamily::kSparseCompact, signal_variance, {},
                    support_radius);
}

std::vector<double> KernelSpec::LogParameters() const {
  std::vector<double> params = {std::log(signal_variance_)};
  if (family_ == KernelFamily::kSparseCompact) {
    params.push_back(std::log(support_radius_));
  } else {
    for (double l : length_scales_) params.push_back(std::log(l));
  }
  return params;
}

KernelSpec KernelSpec::FromLogParameters(KernelFamily family,
                                         std::span<const double> log_params) {
  const size_t expected =
      family == KernelFamily::kSquaredExponentialArd ? 3 : 2;
  if (log_params.size() != expected) {
    throw Error(ErrorCode::kInvalidInput,
                "wrong number of kernel log-parameters");
  }
  const double sv = std::exp(log_params[0]);
  switch (family) {
    case KernelFamily::kSquaredExponential:
      return SquaredExponential(sv, std::exp(log_params[1]));
    case KernelFamily::kSquaredExponentialArd:
      return SquaredExponentialArd(
          sv, {std::exp(log_params[1]), std::exp(log_params[2])});
    case KernelFamily::kMatern52:
      return Matern52(sv, std::exp(log_params[1]));
    case KernelFamily::kSparseCompact:
      return SparseCompact(sv, std::exp(log_params[1]));
  }
  throw Error(ErrorCode::kInvalidInput, "unknown kernel family");
}

double KernelSpec::EvalDistance(double r) const {
  switch (family_) {
    case KernelFamily::kSquaredExponential:
    case KernelFamily::kSquaredExponentialArd: {
      const double s = r / length_scales_[0];
      return signal_variance_ * std::exp(-0.5 * s * s);
    }
    case KernelFamily::kMatern52: {
      const double s = kSqrt5 * r / length_scales_[0];
      return signal_variance_ * (1.0 + s + s * s / 3.0) * std::exp(-s);
    }
    case KernelFamily::kSparseCompact: {
      if (r >= support_radius_) return 0.0;
      const double u = r / support_radius_;
      const double phase = 2.0 * std::numbers::pi * u;
      const double value = (2.0 + std::cos(phase)) / 3.0 * (1.0 - u) +
                           std::sin(phase) / (2.0 * std::numbers::pi);
      // Rounding can leave a tiny negative residue right at the boundary.
      return signal_variance_ * std::max(value, 0.0);
    }
  }
  return 0.0;
}

double KernelSpec::EvalUnchecked(const Point2& a, const Point2& b) const {
  const double dx = a.x() - b.x();
  const double dy = a.y() - b.y();
  if (family_ == KernelFamily::kSquaredExponentialArd) {
    const double sx = dx / length_scales_[0];
    const double sy = dy / length_scales_[1];
    return signal_variance_ * std::exp(-0.5 * (sx * sx + sy * sy));
  }
  if (family_ == KernelFamily::kSquaredExponential) {
    const double l2 = length_scales_[0] * length_scales_[0];
    return signal_variance_ * std::exp(-0.5 * (dx * dx + dy * dy) / l2);
  }
  return EvalDistance(std::sqrt(dx * dx + dy * dy));
}

double KernelSpec::Eval(const Point2& a, const Point2& b) const {
  if (!IsFinite(a) || !IsFinite(b)) {
    throw Error(ErrorCode::kInvalidInput, "non-finite kernel input");
  }
  return EvalUnchecked(a, b);
}

Eigen::MatrixXd Gram(const KernelSpec& spec, std::span<const Point2> a,
                     std::span<const Point2> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kInvalidInput, "gram of an empty point list");
  }
  for (const auto& p : a) {
    if (!IsFinite(p)) throw Error(ErrorCode::kInvalidInput, "non-finite point");
  }
  for (const auto& p : b) {
    if (!IsFinite(p)) throw Error(ErrorCode::kInvalidInput, "non-finite point");
  }
  Eigen::MatrixXd k(a.size(), b.size());
  for (size_t j = 0; j < b.size(); ++j) {
    for (size_t i = 0; i < a.size(); ++i) {
      k(i, j) = spec.EvalUnchecked(a[i], b[j]);
    }
  }
  return k;
}

}  // namespace wgpom
