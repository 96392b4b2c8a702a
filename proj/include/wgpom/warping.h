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

#ifndef WGPOM_WARPING_H_
#define WGPOM_WARPING_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "wgpom/gp_regression.h"
#include "wgpom/kernels.h"
#include "wgpom/quadrature.h"

namespace wgpom {

enum class WarpFamily { kIdentity, kTanhSum, kPolynomial };

std::string WarpFamilyName(WarpFamily family);
WarpFamily ParseWarpFamily(std::string_view name);

// Monotone map g from observation space to latent space.
//
//   TanhSum:    g(y) = y + sum_i a_i tanh(b_i (y + c_i)),  a_i, b_i >= 0
//   Polynomial: g(y) = y + sum_{i=2..d} c_{i-2} sgn(y) |y|^i,  c >= 0
//
// The nonnegativity constraints make g' >= 1, so g is a bijection of R.
class WarpSpec {
 public:
  static WarpSpec Identity();
  static WarpSpec TanhSum(std::vector<double> a, std::vector<double> b,
                          std::vector<double> c);
  // `c[k]` multiplies sgn(y)|y|^(k+2); the degree is c.size() + 1.
  static WarpSpec Polynomial(std::vector<double> c);
  // Zero-coefficient starting points for optimization.
  static WarpSpec DefaultTanh(int steps);
  static WarpSpec DefaultPolynomial(int degree);

  WarpFamily family() const { return family_; }
  // Number of tanh terms, or the polynomial degree.
  int steps() const;
  const std::vector<double>& a() const { return a_; }
  const std::vector<double>& b() const { return b_; }
  const std::vector<double>& c() const { return c_; }

  double Warp(double y) const;
  double Derivative(double y) const;
  // Solves Warp(y) = t by bracketing, bisection, and Newton polish; result
  // satisfies |Warp(y) - t| < 1e-10 max(1, |t|). Throws kNoBracket if the
  // bracket cannot be found within 1000 doublings.
  double Inverse(double t) const;

  // Unconstrained parameterization: logs of the nonnegative coefficients
  // (floored at kLogFloor), raw tanh offsets.
  std::vector<double> Parameters() const;
  WarpSpec WithParameters(std::span<const double> params) const;

  static constexpr double kLogFloor = -20.0;

 private:
  WarpSpec(WarpFamily family, std::vector<double> a, std::vector<double> b,
           std::vector<double> c);

  WarpFamily family_;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> c_;
};

// Negative log marginal likelihood of the warped GP: the standard NLML of the
// latent targets g(y) minus the log-Jacobian sum_i log g'(y_i).
double WgpNlml(const TrainingSet& train, const KernelSpec& kernel,
               const WarpSpec& warp);

// Latent model fitted on t = g(y) at deterministic inputs.
GpModel FitWarped(const TrainingSet& train, const KernelSpec& kernel,
                  const WarpSpec& warp);

struct WarpedPrediction {
  // E[g^-1(t)] under the latent predictive density.
  double mean;
  double latent_mean;
  double latent_variance;
};

// Gauss-Hermite expectation of the inverse warp for one latent prediction.
WarpedPrediction WarpPrediction(const Prediction& latent, const WarpSpec& warp,
                                const GaussHermiteRule& rule);

std::vector<WarpedPrediction> WgpPredict(const GpModel& latent_model,
                                         const WarpSpec& warp,
                                         std::span<const Point2> queries,
                                         const GaussHermiteRule& rule);

// Starting points for optimization: tanh steps at z = -1 ... 1 with a = 0.5
// and b = 3; polynomial coefficients 0.01.
WarpSpec InitialTanhWarp(int steps);
WarpSpec InitialPolynomialWarp(int degree);

}  // namespace wgpom

#endif  // WGPOM_WARPING_H_
