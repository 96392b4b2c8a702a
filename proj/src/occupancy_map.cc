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


#include "wgpom/occupancy_map.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "wgpom/kd_tree.h"

namespace wgpom {
namespace {

constexpr double kProbabilityFloor = 1e-15;

bool SameBelief(const CellBelief& a, const CellBelief& b) {
  return a.mean == b.mean && a.variance == b.variance;
}

}  // namespace

OccupancyMap::OccupancyMap(const Point2& origin, double resolution, int width,
                           int height, double prior_variance,
                           double prior_mean)
    : origin_(origin),
      resolution_(resolution),
      width_(width),
      height_(height),
      prior_variance_(prior_variance),
      prior_mean_(prior_mean) {
  if (!IsFinite(origin) || !(resolution > 0.0) || !std::isfinite(resolution)) {
    throw Error(ErrorCode::kInvalidInput, "bad map origin or resolution");
  }
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidInput, "map must have at least one cell");
  }
  if (!(prior_variance > 0.0) || !std::isfinite(prior_variance) ||
      !std::isfinite(prior_mean)) {
    throw Error(ErrorCode::kInvalidInput, "bad map prior");
  }
  cells_.assign(static_cast<size_t>(width) * height,
                CellBelief{prior_mean, prior_variance, false});
}

Point2 OccupancyMap::CellCenter(int index) const {
  const int ix = index % width_;
  const int iy = index / width_;
  return {origin_.x() + (ix + 0.5) * resolution_,
          origin_.y() + (iy + 0.5) * resolution_};
}

bool OccupancyMap::CellOf(const Point2& p, int* ix, int* iy) const {
  if (!IsFinite(p)) return false;
  const double fx = std::floor((p.x() - origin_.x()) / resolution_);
  const double fy = std::floor((p.y() - origin_.y()) / resolution_);
  if (fx < 0.0 || fy < 0.0 || fx >= width_ || fy >= height_) return false;
  *ix = static_cast<int>(fx);
  *iy = static_cast<int>(fy);
  return true;
}

std::vector<int> OccupancyMap::CellsInBox(const Point2& lower,
                                          const Point2& upper) const {
  const int x0 = std::max(
      0, static_cast<int>(std::ceil((lower.x() - origin_.x()) / resolution_ - 0.5)));
  const int y0 = std::max(
      0, static_cast<int>(std::ceil((lower.y() - origin_.y()) / resolution_ - 0.5)));
  const int x1 = std::min(
      width_ - 1,
      static_cast<int>(std::floor((upper.x() - origin_.x()) / resolution_ - 0.5)));
  const int y1 = std::min(
      height_ - 1,
      static_cast<int>(std::floor((upper.y() - origin_.y()) / resolution_ - 0.5)));
  std::vector<int> result;
  for (int iy = y0; iy <= y1; ++iy) {
    for (int ix = x0; ix <= x1; ++ix) result.push_back(Index(ix, iy));
  }
  return result;
}

int OccupancyMap::ObservedCount() const {
  return static_cast<int>(std::count_if(
      cells_.begin(), cells_.end(), [](const CellBelief& c) { return c.observed; }));
}

void SubMap::Validate() const {
  if (means.size() != points.size() || variances.size() != points.size()) {
    throw Error(ErrorCode::kInvalidInput, "sub-map arrays differ in length");
  }
  for (size_t i = 0; i < points.size(); ++i) {
    if (!IsFinite(points[i]) || !std::isfinite(means[i]) ||
        !std::isfinite(variances[i]) || !(variances[i] > 0.0)) {
      throw Error(ErrorCode::kInvalidInput,
                  "sub-map entry " + std::to_string(i) + " is invalid");
    }
  }
}

SubMap PlaceSubMap(const SubMap& local, const Pose2& pose) {
  SubMap placed = local;
  for (Point2& p : placed.points) p = pose.Transform(p);
  return placed;
}

CellBelief FuseBelief(const CellBelief& cell, double sub_mean,
                      double sub_variance, double prior_variance,
                      bool* degenerate, double prior_mean) {
  *degenerate = false;
  if (!cell.observed) return {sub_mean, sub_variance, true};
  double precision =
      1.0 / cell.variance + 1.0 / sub_variance - 1.0 / prior_variance;
  if (!(precision > 0.0) || !std::isfinite(precision)) {
    *degenerate = true;
    precision = 1.0 / prior_variance + 1e-9;
  }
  const double variance = 1.0 / precision;
  return {variance * (cell.mean / cell.variance + sub_mean / sub_variance -
                     prior_mean / prior_variance),
          variance, true};
}

std::vector<CellUpdate> ComputeFusion(const OccupancyMap& map,
                                      const SubMap& sub, FusionStats* stats) {
  sub.Validate();
  std::vector<int> kept;
  std::vector<Point2> kept_points;
  std::vector<int> candidates;
  for (int i = 0; i < sub.size(); ++i) {
    int ix, iy;
    if (!map.CellOf(sub.points[i], &ix, &iy)) {
      ++stats->dropped_points;
      continue;
    }
    kept.push_back(i);
    kept_points.push_back(sub.points[i]);
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = ix + dx;
        const int ny = iy + dy;
        if (nx < 0 || ny < 0 || nx >= map.width() || ny >= map.height()) continue;
        candidates.push_back(map.Index(nx, ny));
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  std::vector<CellUpdate> updates;
  if (kept.empty()) return updates;
  const KdTree index(kept_points);
  const double reach = map.resolution() / std::sqrt(2.0) * (1.0 + 1e-9);
  for (int cell : candidates) {
    const Neighbor nearest = index.NearestOne(map.CellCenter(cell));
    if (nearest.distance > reach) continue;
    const int s = kept[nearest.index];
    bool degenerate = false;
    updates.push_back({cell, FuseBelief(map.cell(cell), sub.means[s],
                                        sub.variances[s], map.prior_variance(),
                                        &degenerate, map.prior_mean())});
    if (degenerate) ++stats->degenerate_fusions;
  }
  stats->fused_cells += static_cast<int>(updates.size());
  return updates;
}

FusionStats BcmFuse(OccupancyMap* map, const SubMap& sub) {
  FusionStats stats;
  for (const CellUpdate& u : ComputeFusion(*map, sub, &stats)) {
    map->mutable_cell(u.index) = u.belief;
  }
  return stats;
}

Moments MixtureMoments(std::span<const Moments> components,
                       std::span<const double> weights) {
  if (components.empty() || components.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "mixture needs one weight per component");
  }
  double total = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorCode::kInvalidInput, "mixture weight is negative");
    }
    if (!(components[i].variance > 0.0) || !std::isfinite(components[i].mean)) {
      throw Error(ErrorCode::kInvalidInput, "mixture component is invalid");
    }
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidInput, "mixture weights do not sum to 1");
  }
  double mean = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    mean += weights[i] * components[i].mean;
  }
  // Same value as sum w (s + m^2) - mean^2 without the cancellation.
  double variance = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    const double d = components[i].mean - mean;
    variance += weights[i] * (components[i].variance + d * d);
  }
  return {mean, variance};
}

FusionStats ExpectedSubmapFuseWithPoses(OccupancyMap* map, const SubMap& local,
                                        std::span<const Pose2> poses) {
  if (poses.empty()) {
    throw Error(ErrorCode::kInvalidInput, "need at least one pose sample");
  }
  const int n = static_cast<int>(poses.size());
  FusionStats stats;
  // overlay[j] is sorted by cell index.
  std::vector<std::vector<CellUpdate>> overlays(n);
  std::vector<int> touched;
  FusionStats per_sample;
  for (int j = 0; j < n; ++j) {
    overlays[j] = ComputeFusion(*map, PlaceSubMap(local, poses[j]), &per_sample);
    for (const CellUpdate& u : overlays[j]) touched.push_back(u.index);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

  const std::vector<double> weights(n, 1.0 / n);
  std::vector<size_t> cursor(n, 0);
  std::vector<CellBelief> beliefs(n);
  std::vector<Moments> components(n);
  std::vector<CellUpdate> merged;
  merged.reserve(touched.size());
  for (int cell : touched) {
    for (int j = 0; j < n; ++j) {
      const auto& overlay = overlays[j];
      if (cursor[j] < overlay.size() && overlay[cursor[j]].index == cell) {
        beliefs[j] = overlay[cursor[j]++].belief;
      } else {
        beliefs[j] = map->cell(cell);
      }
      components[j] = {beliefs[j].mean, beliefs[j].variance};
    }
    const bool identical =
        std::all_of(beliefs.begin(), beliefs.end(),
                    [&](const CellBelief& b) { return SameBelief(b, beliefs[0]); });
    CellBelief result{beliefs[0].mean, beliefs[0].variance, true};
    if (!identical) {
      const Moments m = MixtureMoments(components, weights);
      result.mean = m.mean;
      result.variance = m.variance;
    }
    merged.push_back({cell, result});
  }
  for (const CellUpdate& u : merged) map->mutable_cell(u.index) = u.belief;

  stats.fused_cells = static_cast<int>(merged.size());
  stats.dropped_points = per_sample.dropped_points;
  stats.degenerate_fusions = per_sample.degenerate_fusions;
  return stats;
}

FusionStats ExpectedSubmapFuse(OccupancyMap* map, const SubMap& local,
                               const PoseBelief& pose, int n_samples,
                               uint64_t seed) {
  if (n_samples < 1) {
    throw Error(ErrorCode::kInvalidInput, "n_samples must be >= 1");
  }
  std::mt19937_64 rng(seed);
  std::vector<Pose2> poses(n_samples);
  for (Pose2& p : poses) p = SamplePose(pose, rng);
  return ExpectedSubmapFuseWithPoses(map, local, poses);
}

std::string SquashFunctionName(SquashFunction function) {
  return function == SquashFunction::kProbit ? "probit" : "logistic";
}

SquashFunction ParseSquashFunction(std::string_view name) {
  if (name == "probit") return SquashFunction::kProbit;
  if (name == "logistic") return SquashFunction::kLogistic;
  throw Error(ErrorCode::kInvalidInput,
              "unknown squash function '" + std::string(name) + "'");
}

double Squash(double mean, double variance, SquashFunction function) {
  double p;
  if (function == SquashFunction::kProbit) {
    p = 0.5 * std::erfc(-mean / std::sqrt(2.0 * (1.0 + variance)));
  } else {
    p = 1.0 / (1.0 + std::exp(-mean));
  }
  return std::clamp(p, kProbabilityFloor, 1.0 - kProbabilityFloor);
}

std::vector<double> SquashMap(const OccupancyMap& map, SquashFunction function) {
  std::vector<double> result(map.size(), 0.5);
  for (int i = 0; i < map.size(); ++i) {
    const CellBelief& c = map.cell(i);
    if (c.observed) result[i] = Squash(c.mean, c.variance, function);
  }
  return result;
}

}  // namespace wgpom
