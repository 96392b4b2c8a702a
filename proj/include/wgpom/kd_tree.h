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


#ifndef WGPOM_KD_TREE_H_
#define WGPOM_KD_TREE_H_

#include <span>
#include <vector>

#include "wgpom/common.h"

namespace wgpom {

struct Neighbor {
  int index;
  double distance;
};

// Static balanced 2-D kd-tree with exact k-nearest-neighbor queries. Ties in
// distance are broken by the lower stored index.
class KdTree {
 public:
  KdTree() = default;
  explicit KdTree(std::span<const Point2> points);

  int size() const { return static_cast<int>(points_.size()); }
  const Point2& point(int index) const { return points_[index]; }

  // Sorted by increasing distance. Throws kInvalidState on an empty tree and
  // kInvalidInput unless 1 <= k <= size().
  std::vector<Neighbor> Nearest(const Point2& query, int k) const;

  // Single nearest neighbor; same errors as Nearest.
  Neighbor NearestOne(const Point2& query) const;

 private:
  struct Node {
    int point;  // index into points_
    int left = -1;
    int right = -1;
    int axis = 0;
  };

  int Build(std::vector<int>& order, int begin, int end, int depth);

  std::vector<Point2> points_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace wgpom

#endif  // WGPOM_KD_TREE_H_
