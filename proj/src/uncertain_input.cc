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

#include "wgpom/uncertain_input.h"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

namespace wgpom {
namespace {

// Weighted evaluation points of the 2-D tensor rule for one uncertain point.
struct NodeSet {
  std::vector<Point2> points;
  std::vector<double> weights;  // Already divided by pi.
  bool deterministic = false;
};

NodeSet MakeNodes(const UncertainPoint& p, const GaussHermiteRule& rule) {
  NodeSet set;
  if (p.covariance.isZero(0.0)) {
    set.points = {p.mean};
    set.weights = {1.0};
    set.deterministic = true;
    return set;
  }
  const Matrix2 root = CovarianceSqrt(Matrix2(2.0 * p.covariance));
  const auto& u = rule.nodes();
  const auto& w = rule.weights();
  const size_t n = u.size();
  set.points.reserve(n * n);
  set.weights.reserve(n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      set.points.push_back(root * Point2(u[i], u[j]) + p.mean);
      set.weights.push_back(w[i] * w[j] / std::numbers::pi);
    }
  }
  return set;
}

double IntegrateNodes(const KernelSpec& spec, const NodeSet& nodes,
                      const Point2& q) {
  if (nodes.deterministic) return spec.EvalUnchecked(nodes.points[0], q);
  double sum = 0.0;
  for (size_t k = 0; k < nodes.points.size(); ++k) {
    sum += nodes.weights[k] * spec.EvalUnchecked(nodes.points[k], q);
  }
  return sum;
}

Point2 Draw(const UncertainPoint& p, const Matrix2& root,
            std::normal_distribution<double>& normal, std::mt19937_64& rng) {
  const double z0 = normal(rng);
  const double z1 = normal(rng);
  return p.mean + root * Point2(z0, z1);
}

void CheckPoint(const UncertainPoint& p) {
  if (!IsFinite(p.mean)) {
    throw Error(ErrorCode::kInvalidInput, "non-finite uncertain point mean");
  }
  p.Validate();
}

}  // namespace

void UncertainPoint::Validate() const {
  if (!covariance.allFinite() ||
      std::abs(covariance(0, 1) - covariance(1, 0)) > 1e-12) {
    throw Error(ErrorCode::kInvalidInput, "input covariance is not symmetric");
  }
  if (Eigen::SelfAdjointEigenSolver<Matrix2>(covariance, Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff() < -1e-12) {
    throw Error(ErrorCode::kInvalidInput, "input covariance is not PSD");
  }
}

double ExpectedKernelMonteCarlo(const KernelSpec& spec, const UncertainPoint& p,
                                const Point2& q, int n_samples, uint64_t seed) {
  if (n_samples < 1) {
    throw Error(ErrorCode::kInvalidInput, "Monte-Carlo needs >= 1 sample");
  }
  CheckPoint(p);
  if (p.covariance.isZero(0.0)) return spec.Eval(p.mean, q);
  const Matrix2 root = CovarianceSqrt(p.covariance);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double sum = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    sum += spec.EvalUnchecked(Draw(p, root, normal, rng), q);
  }
  return sum / n_samples;
}

double ExpectedKernelMonteCarlo(const KernelSpec& spec, const UncertainPoint& p,
                                const UncertainPoint& q, int n_samples,
                                uint64_t seed) {
  if (q.covariance.isZero(0.0)) {
    return ExpectedKernelMonteCarlo(spec, p, q.mean, n_samples, seed);
  }
  if (n_samples < 1) {
    throw Error(ErrorCode::kInvalidInput, "Monte-Carlo needs >= 1 sample");
  }
  CheckPoint(p);
  CheckPoint(q);
  const Matrix2 root_p = CovarianceSqrt(p.covariance);
  const Matrix2 root_q = CovarianceSqrt(q.covariance);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double sum = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const Point2 a = Draw(p, root_p, normal, rng);
    const Point2 b = Draw(q, root_q, normal, rng);
    sum += spec.EvalUnchecked(a, b);
  }
  return sum / n_samples;
}

double ExpectedKernelGaussHermite(const KernelSpec& spec,
                                  const UncertainPoint& p, const Point2& q,
                                  const GaussHermiteRule& rule) {
  CheckPoint(p);
  if (!IsFinite(q)) throw Error(ErrorCode::kInvalidInput, "non-finite query");
  return IntegrateNodes(spec, MakeNodes(p, rule), q);
}

double ExpectedKernelGaussHermite(const KernelSpec& spec,
                                  const UncertainPoint& p,
                                  const UncertainPoint& q,
                                  const GaussHermiteRule& rule,
                                  TwoEndpointRule two_endpoint) {
  CheckPoint(q);
  if (two_endpoint == TwoEndpointRule::kSummedCovariance) {
    return ExpectedKernelGaussHermite(
        spec, UncertainPoint{p.mean, Matrix2(p.covariance + q.covariance)},
        q.mean, rule);
  }
  CheckPoint(p);
  const NodeSet p_nodes = MakeNodes(p, rule);
  const NodeSet q_nodes = MakeNodes(q, rule);
  double sum = 0.0;
  for (size_t k = 0; k < q_nodes.points.size(); ++k) {
    sum += q_nodes.weights[k] * IntegrateNodes(spec, p_nodes, q_nodes.points[k]);
  }
  return sum;
}

ExpectedGram ComputeExpectedGram(const KernelSpec& spec,
                                 std::span<const UncertainPoint> train,
                                 std::span<const Point2> queries,
                                 const ExpectationMethod& method) {
  if (train.empty()) {
    throw Error(ErrorCode::kInvalidInput, "expected gram of empty training set");
  }
  for (const auto& p : train) CheckPoint(p);
  for (const auto& q : queries) {
    if (!IsFinite(q)) throw Error(ErrorCode::kInvalidInput, "non-finite query");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(train.size());
  const Eigen::Index m = static_cast<Eigen::Index>(queries.size());
  ExpectedGram out;
  out.train_train.resize(n, n);
  out.train_query.resize(n, m);

  if (method.kind == ExpectationMethod::Kind::kGaussHermite) {
    const GaussHermiteRule rule(method.order);
    std::vector<NodeSet> nodes;
    nodes.reserve(n);
    for (const auto& p : train) nodes.push_back(MakeNodes(p, rule));
    for (Eigen::Index i = 0; i < n; ++i) {
      out.train_train(i, i) = spec.EvalUnchecked(train[i].mean, train[i].mean);
      for (Eigen::Index j = i + 1; j < n; ++j) {
        double value;
        if (train[j].covariance.isZero(0.0)) {
          value = IntegrateNodes(spec, nodes[i], train[j].mean);
        } else if (train[i].covariance.isZero(0.0)) {
          value = IntegrateNodes(spec, nodes[j], train[i].mean);
        } else {
          value = ExpectedKernelGaussHermite(spec, train[i], train[j], rule,
                                             method.two_endpoint);
        }
        out.train_train(i, j) = value;
        out.train_train(j, i) = value;
      }
      for (Eigen::Index j = 0; j < m; ++j) {
        out.train_query(i, j) = IntegrateNodes(spec, nodes[i], queries[j]);
      }
    }
  } else {
    for (Eigen::Index i = 0; i < n; ++i) {
      out.train_train(i, i) = spec.EvalUnchecked(train[i].mean, train[i].mean);
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double value = ExpectedKernelMonteCarlo(
            spec, train[i], train[j], method.samples,
            DeriveSeed(method.seed, static_cast<uint64_t>(i),
                       static_cast<uint64_t>(j)));
        out.train_train(i, j) = value;
        out.train_train(j, i) = value;
      }
      for (Eigen::Index j = 0; j < m; ++j) {
        out.train_query(i, j) = ExpectedKernelMonteCarlo(
            spec, train[i], queries[j], method.samples,
            DeriveSeed(method.seed, static_cast<uint64_t>(i),
                       static_cast<uint64_t>(n + j)));
      }
    }
  }

  if (n > 1) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        out.train_train, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = solver.eigenvalues().minCoeff();
    if (out.min_eigenvalue < -1e-8) {
      solver.compute(out.train_train, Eigen::ComputeEigenvectors);
      const Eigen::MatrixXd& v = solver.eigenvectors();
      out.train_train =
          v * solver.eigenvalues().cwiseMax(0.0).asDiagonal() * v.transpose();
      out.train_train = 0.5 * (out.train_train + out.train_train.transpose()).eval();
      out.psd_clips = 1;
    }
  } else {
    out.min_eigenvalue = out.train_train(0, 0);
  }
  return out;
}

std::vector<UncertainPoint> UnscentedTransform(
    std::span<const Point2> local_points, const PoseBelief& pose,
    const UnscentedParams& params) {
  std::vector<UncertainPoint> out;
  out.reserve(local_points.size());
  if (pose.covariance.isZero(0.0)) {
    for (const auto& p : local_points) {
      out.push_back({pose.mean.Transform(p), Matrix2::Zero()});
    }
    return out;
  }

  constexpr int kDim = 3;
  const double lambda =
      params.alpha * params.alpha * (kDim + params.kappa) - kDim;
  if (!(kDim + lambda > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "unscented spread must be positive");
  }
  const Matrix3 root = CovarianceSqrt(Matrix3((kDim + lambda) * pose.covariance));

  std::array<Pose2, 2 * kDim + 1> sigma;
  std::array<double, 2 * kDim + 1> wm;
  std::array<double, 2 * kDim + 1> wc;
  sigma[0] = pose.mean;
  wm[0] = lambda / (kDim + lambda);
  wc[0] = wm[0] + (1.0 - params.alpha * params.alpha + params.beta);
  for (int i = 0; i < kDim; ++i) {
    const Eigen::Vector3d d = root.col(i);
    sigma[1 + i] = {pose.mean.x + d(0), pose.mean.y + d(1),
                    pose.mean.heading + d(2)};
    sigma[1 + kDim + i] = {pose.mean.x - d(0), pose.mean.y - d(1),
                           pose.mean.heading - d(2)};
    wm[1 + i] = wm[1 + kDim + i] = 0.5 / (kDim + lambda);
    wc[1 + i] = wc[1 + kDim + i] = 0.5 / (kDim + lambda);
  }

  for (const auto& p : local_points) {
    std::array<Point2, 2 * kDim + 1> y;
    Point2 mean = Point2::Zero();
    for (size_t k = 0; k < sigma.size(); ++k) {
      y[k] = sigma[k].Transform(p);
      mean += wm[k] * y[k];
    }
    Matrix2 cov = Matrix2::Zero();
    for (size_t k = 0; k < sigma.size(); ++k) {
      const Point2 d = y[k] - mean;
      cov += wc[k] * d * d.transpose();
    }
    cov = 0.5 * (cov + cov.transpose()).eval();
    out.push_back({mean, cov});
  }
  return out;
}

}  // namespace wgpom
