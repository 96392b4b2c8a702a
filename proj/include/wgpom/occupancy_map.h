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


#ifndef WGPOM_OCCUPANCY_MAP_H_
#define WGPOM_OCCUPANCY_MAP_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wgpom/common.h"
#include "wgpom/pose.h"

namespace wgpom {

struct CellBelief {
  double mean = 0.0;
  double variance = 1.0;
  bool observed = false;
};

struct Moments {
  double mean;
  double variance;
};

// Regular grid of Gaussian cell beliefs. Cell (ix, iy) covers
// [origin + (ix, iy) * resolution, origin + (ix + 1, iy + 1) * resolution);
// the flat index is iy * width + ix. Unobserved cells hold the prior
// N(prior_mean, prior_variance).
class OccupancyMap {
 public:
  OccupancyMap(const Point2& origin, double resolution, int width, int height,
               double prior_variance, double prior_mean = 0.0);

  const Point2& origin() const { return origin_; }
  double resolution() const { return resolution_; }
  int width() const { return width_; }
  int height() const { return height_; }
  int size() const { return width_ * height_; }
  double prior_variance() const { return prior_variance_; }
  double prior_mean() const { return prior_mean_; }

  const CellBelief& cell(int index) const { return cells_[index]; }
  CellBelief& mutable_cell(int index) { return cells_[index]; }
  const std::vector<CellBelief>& cells() const { return cells_; }

  int Index(int ix, int iy) const { return iy * width_ + ix; }
  Point2 CellCenter(int index) const;
  // False when the point lies outside the grid.
  bool CellOf(const Point2& p, int* ix, int* iy) const;
  // Flat indices of the cells whose centers lie in the closed box.
  std::vector<int> CellsInBox(const Point2& lower, const Point2& upper) const;

  int ObservedCount() const;

 private:
  Point2 origin_;
  double resolution_;
  int width_;
  int height_;
  double prior_variance_;
  double prior_mean_;
  std::vector<CellBelief> cells_;
};

// Predictions of one scan's GP at a set of points, in whichever frame the
// points are expressed.
struct SubMap {
  std::vector<Point2> points;
  std::vector<double> means;
  std::vector<double> variances;

  int size() const { return static_cast<int>(points.size()); }
  // Throws kInvalidInput on mismatched sizes, non-finite values or
  // non-positive variances.
  void Validate() const;
};

// Rigidly moves robot-frame sub-map points into the world frame.
SubMap PlaceSubMap(const SubMap& local, const Pose2& pose);

struct FusionStats {
  int fused_cells = 0;
  int dropped_points = 0;
  int degenerate_fusions = 0;

  FusionStats& operator+=(const FusionStats& other) {
    fused_cells += other.fused_cells;
    dropped_points += other.dropped_points;
    degenerate_fusions += other.degenerate_fusions;
    return *this;
  }
};

struct CellUpdate {
  int index;
  CellBelief belief;
};

// Fused belief for one cell:
//
//   1/s_new = 1/s_cell + 1/s_sub - 1/s_prior
//   m_new = s_new (m_cell/s_cell + m_sub/s_sub - m_prior/s_prior)
//
// A non-positive fused precision is replaced by the prior precision + 1e-9
// and flagged through `degenerate`. An unobserved cell takes the sub-map
// values unchanged.
CellBelief FuseBelief(const CellBelief& cell, double sub_mean,
                      double sub_variance, double prior_variance,
                      bool* degenerate, double prior_mean = 0.0);

// Sparse overlay of the map after fusing `sub`, leaving `map` untouched. Each
// candidate cell (the cell holding a sub-map point or one of its 8
// neighbors) takes the sub-map point nearest its center when that point lies
// within half the cell diagonal. Points outside the map are dropped.
std::vector<CellUpdate> ComputeFusion(const OccupancyMap& map,
                                      const SubMap& sub, FusionStats* stats);

FusionStats BcmFuse(OccupancyMap* map, const SubMap& sub);

// Moments of a Gaussian mixture. Weights must be non-negative and sum to 1
// within 1e-9.
Moments MixtureMoments(std::span<const Moments> components,
                       std::span<const double> weights);

// Fuses the robot-frame sub-map at `n_samples` draws of the pose and merges
// the resulting maps cell-wise into equal-weight mixture moments.
FusionStats ExpectedSubmapFuse(OccupancyMap* map, const SubMap& local,
                               const PoseBelief& pose, int n_samples,
                               uint64_t seed);

// Same, with the pose samples supplied by the caller.
FusionStats ExpectedSubmapFuseWithPoses(OccupancyMap* map, const SubMap& local,
                                        std::span<const Pose2> poses);

enum class SquashFunction {
  // Phi(mean / sqrt(1 + variance)).
  kProbit,
  // 1 / (1 + exp(-mean)).
  kLogistic,
};

std::string SquashFunctionName(SquashFunction function);
SquashFunction ParseSquashFunction(std::string_view name);

double Squash(double mean, double variance, SquashFunction function);

// Per-cell occupancy probability; unobserved cells map to 0.5.
std::vector<double> SquashMap(const OccupancyMap& map,
                              SquashFunction function = SquashFunction::kProbit);

}  // namespace wgpom

#endif  // WGPOM_OCCUPANCY_MAP_H_
