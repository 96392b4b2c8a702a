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

#include "wgpom/warping.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wgpom {
namespace {

void RequireNonNegative(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidInput,
                  std::string(what) + " coefficients must be finite and >= 0");
    }
  }
}

double SafeLog(double x) {
  return x > 0.0 ? std::max(std::log(x), WarpSpec::kLogFloor)
                 : WarpSpec::kLogFloor;
}

}  // namespace

std::string WarpFamilyName(WarpFamily family) {
  switch (family) {
    case WarpFamily::kIdentity: return "identity";
    case WarpFamily::kTanhSum: return "tanh";
    case WarpFamily::kPolynomial: return "polynomial";
  }
  return "unknown";
}

WarpFamily ParseWarpFamily(std::string_view name) {
  if (name == "identity") return WarpFamily::kIdentity;
  if (name == "tanh") return WarpFamily::kTanhSum;
  if (name == "polynomial") return WarpFamily::kPolynomial;
  throw Error(ErrorCode::kInvalidInput,
              "unknown warp family '" + std::string(name) + "'");
}

WarpSpec::WarpSpec(WarpFamily family, std::vector<double> a,
                   std::vector<double> b, std::vector<double> c)
    : family_(family), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

WarpSpec WarpSpec::Identity() { return WarpSpec(WarpFamily::kIdentity, {}, {}, {}); }

WarpSpec WarpSpec::TanhSum(std::vector<double> a, std::vector<double> b,
                           std::vector<double> c) {
  if (a.empty() || a.size() != b.size() || a.size() != c.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "tanh warp needs equally sized, non-empty a, b, c");
  }
  RequireNonNegative(a, "tanh a");
  RequireNonNegative(b, "tanh b");
  for (double x : c) {
    if (!std::isfinite(x)) throw Error(ErrorCode::kInvalidInput, "non-finite tanh c");
  }
  return WarpSpec(WarpFamily::kTanhSum, std::move(a), std::move(b),
                  std::move(c));
}

WarpSpec WarpSpec::Polynomial(std::vector<double> c) {
  if (c.empty()) {
    throw Error(ErrorCode::kInvalidInput, "polynomial warp needs degree >= 2");
  }
  RequireNonNegative(c, "polynomial");
  return WarpSpec(WarpFamily::kPolynomial, {}, {}, std::move(c));
}

WarpSpec WarpSpec::DefaultTanh(int steps) {
  return TanhSum(std::vector<double>(steps, 0.0),
                 std::vector<double>(steps, 1.0),
                 std::vector<double>(steps, 0.0));
}

WarpSpec WarpSpec::DefaultPolynomial(int degree) {
  return Polynomial(std::vector<double>(std::max(degree - 1, 1), 0.0));
}

int WarpSpec::steps() const {
  switch (family_) {
    case WarpFamily::kIdentity: return 1;
    case WarpFamily::kTanhSum: return static_cast<int>(a_.size());
    case WarpFamily::kPolynomial: return static_cast<int>(c_.size()) + 1;
  }
  return 0;
}

double WarpSpec::Warp(double y) const {
  switch (family_) {
    case WarpFamily::kIdentity:
      return y;
    case WarpFamily::kTanhSum: {
      double t = y;
      for (size_t i = 0; i < a_.size(); ++i) {
        t += a_[i] * std::tanh(b_[i] * (y + c_[i]));
      }
      return t;
    }
    case WarpFamily::kPolynomial: {
      const double ay = std::abs(y);
      double power = ay;
      double sum = 0.0;
      for (double ci : c_) {
        power *= ay;
        sum += ci * power;
      }
      return y + std::copysign(sum, y);
    }
  }
  return y;
}

double WarpSpec::Derivative(double y) const {
  switch (family_) {
    case WarpFamily::kIdentity:
      return 1.0;
    case WarpFamily::kTanhSum: {
      double d = 1.0;
      for (size_t i = 0; i < a_.size(); ++i) {
        const double sech = 1.0 / std::cosh(b_[i] * (y + c_[i]));
        d += a_[i] * b_[i] * sech * sech;
      }
      return d;
    }
    case WarpFamily::kPolynomial: {
      const double ay = std::abs(y);
      double power = 1.0;
      double d = 1.0;
      for (size_t k = 0; k < c_.size(); ++k) {
        power *= ay;
        d += c_[k] * static_cast<double>(k + 2) * power;
      }
      return d;
    }
  }
  return 1.0;
}

double WarpSpec::Inverse(double t) const {
  if (!std::isfinite(t)) {
    throw Error(ErrorCode::kInvalidInput, "non-finite latent value");
  }
  if (family_ == WarpFamily::kIdentity) return t;
  const double tolerance = 1e-10 * std::max(1.0, std::abs(t));

  double lo = t - 1.0;
  double hi = t + 1.0;
  double width = 1.0;
  int doublings = 0;
  while (Warp(lo) > t) {
    if (++doublings > 1000 || !std::isfinite(lo)) {
      throw Error(ErrorCode::kNoBracket, "lower bracket not found");
    }
    hi = std::min(hi, lo);
    width *= 2.0;
    lo -= width;
  }
  width = 1.0;
  while (Warp(hi) < t) {
    if (++doublings > 1000 || !std::isfinite(hi)) {
      throw Error(ErrorCode::kNoBracket, "upper bracket not found");
    }
    lo = std::max(lo, hi);
    width *= 2.0;
    hi += width;
  }

  double y = std::clamp(t, lo, hi);
  for (int iter = 0; iter < 300; ++iter) {
    const double residual = Warp(y) - t;
    if (std::abs(residual) < tolerance) return y;
    if (residual > 0.0) {
      hi = y;
    } else {
      lo = y;
    }
    double next = y - residual / Derivative(y);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == y) break;
    y = next;
  }
  return y;
}

std::vector<double> WarpSpec::Parameters() const {
  std::vector<double> p;
  switch (family_) {
    case WarpFamily::kIdentity:
      break;
    case WarpFamily::kTanhSum:
      for (double x : a_) p.push_back(SafeLog(x));
      for (double x : b_) p.push_back(SafeLog(x));
      for (double x : c_) p.push_back(x);
      break;
    case WarpFamily::kPolynomial:
      for (double x : c_) p.push_back(SafeLog(x));
      break;
  }
  return p;
}

WarpSpec WarpSpec::WithParameters(std::span<const double> params) const {
  if (params.size() != Parameters().size()) {
    throw Error(ErrorCode::kInvalidInput, "wrong number of warp parameters");
  }
  switch (family_) {
    case WarpFamily::kIdentity:
      return *this;
    case WarpFamily::kTanhSum: {
      const size_t n = a_.size();
      std::vector<double> a(n), b(n), c(n);
      for (size_t i = 0; i < n; ++i) {
        a[i] = std::exp(params[i]);
        b[i] = std::exp(params[n + i]);
        c[i] = params[2 * n + i];
      }
      return TanhSum(std::move(a), std::move(b), std::move(c));
    }
    case WarpFamily::kPolynomial: {
      std::vector<double> c(params.size());
      for (size_t i = 0; i < params.size(); ++i) c[i] = std::exp(params[i]);
      return Polynomial(std::move(c));
    }
  }
  return *this;
}

GpModel FitWarped(const TrainingSet& train, const KernelSpec& kernel,
                  const WarpSpec& warp) {
  train.Validate();
  Eigen::VectorXd targets(train.labels.size());
  for (Eigen::Index i = 0; i < targets.size(); ++i) {
    targets(i) = warp.Warp(train.labels(i));
  }
  return FitTargets(train.inputs, targets, kernel, train.noise_variance);
}

double WgpNlml(const TrainingSet& train, const KernelSpec& kernel,
               const WarpSpec& warp) {
  const GpModel model = FitWarped(train, kernel, warp);
  double log_jacobian = 0.0;
  for (Eigen::Index i = 0; i < train.labels.size(); ++i) {
    log_jacobian += std::log(warp.Derivative(train.labels(i)));
  }
  return Nlml(model) - log_jacobian;
}

WarpedPrediction WarpPrediction(const Prediction& latent, const WarpSpec& warp,
                                const GaussHermiteRule& rule) {
  WarpedPrediction out{0.0, latent.mean, latent.variance};
  if (warp.family() == WarpFamily::kIdentity) {
    out.mean = latent.mean;
    return out;
  }
  if (!(latent.variance > 0.0)) {
    out.mean = warp.Inverse(latent.mean);
    return out;
  }
  const double scale = std::sqrt(2.0 * latent.variance);
  out.mean = rule.Integrate([&](double u) {
               return warp.Inverse(latent.mean + scale * u);
             }) /
             std::sqrt(std::numbers::pi);
  return out;
}

std::vector<WarpedPrediction> WgpPredict(const GpModel& latent_model,
                                         const WarpSpec& warp,
                                         std::span<const Point2> queries,
                                         const GaussHermiteRule& rule) {
  const std::vector<Prediction> latent = Predict(latent_model, queries);
  std::vector<WarpedPrediction> out;
  out.reserve(latent.size());
  for (const auto& p : latent) out.push_back(WarpPrediction(p, warp, rule));
  return out;
}

WarpSpec InitialTanhWarp(int steps) {
  if (steps < 1) throw Error(ErrorCode::kInvalidInput, "tanh warp needs >= 1 step");
  std::vector<double> c(steps, 0.0);
  for (int i = 0; i < steps; ++i) {
    c[i] = steps == 1 ? 0.0 : -1.0 + 2.0 * i / (steps - 1);
  }
  return WarpSpec::TanhSum(std::vector<double>(steps, 0.5),
                           std::vector<double>(steps, 3.0), c);
}

WarpSpec InitialPolynomialWarp(int degree) {
  return WarpSpec::Polynomial(std::vector<double>(std::max(degree - 1, 1), 0.01));
}

}  // namespace wgpom
