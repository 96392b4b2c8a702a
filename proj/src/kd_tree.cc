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


#include "wgpom/kd_tree.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace wgpom {
namespace {

struct Candidate {
  double squared;
  int index;
  bool operator<(const Candidate& other) const {
    return squared < other.squared ||
           (squared == other.squared && index < other.index);
  }
};

}  // namespace

KdTree::KdTree(std::span<const Point2> points)
    : points_(points.begin(), points.end()) {
  for (const Point2& p : points_) {
    if (!IsFinite(p)) {
      throw Error(ErrorCode::kInvalidInput, "kd-tree point is not finite");
    }
  }
  std::vector<int> order(points_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  nodes_.reserve(points_.size());
  root_ = Build(order, 0, static_cast<int>(order.size()), 0);
}

int KdTree::Build(std::vector<int>& order, int begin, int end, int depth) {
  if (begin >= end) return -1;
  const int axis = depth % 2;
  const int mid = begin + (end - begin) / 2;
  std::nth_element(order.begin() + begin, order.begin() + mid,
                   order.begin() + end, [&](int a, int b) {
                     const double va = points_[a](axis);
                     const double vb = points_[b](axis);
                     return va < vb || (va == vb && a < b);
                   });
  const int node = static_cast<int>(nodes_.size());
  nodes_.push_back({order[mid], -1, -1, axis});
  const int left = Build(order, begin, mid, depth + 1);
  const int right = Build(order, mid + 1, end, depth + 1);
  nodes_[node].left = left;
  nodes_[node].right = right;
  return node;
}

std::vector<Neighbor> KdTree::Nearest(const Point2& query, int k) const {
  if (points_.empty()) {
    throw Error(ErrorCode::kInvalidState, "nearest query on an empty index");
  }
  if (k < 1 || k > size()) {
    throw Error(ErrorCode::kInvalidInput,
                "k must be in [1, " + std::to_string(size()) + "]");
  }
  if (!IsFinite(query)) {
    throw Error(ErrorCode::kInvalidInput, "query point is not finite");
  }

  std::priority_queue<Candidate> best;  // max-heap of the current k best
  auto visit = [&](auto&& self, int node_index) -> void {
    if (node_index < 0) return;
    const Node& node = nodes_[node_index];
    const Point2& p = points_[node.point];
    const Candidate c{(p - query).squaredNorm(), node.point};
    if (static_cast<int>(best.size()) < k) {
      best.push(c);
    } else if (c < best.top()) {
      best.pop();
      best.push(c);
    }
    const double delta = query(node.axis) - p(node.axis);
    const int near = delta < 0.0 ? node.left : node.right;
    const int far = delta < 0.0 ? node.right : node.left;
    self(self, near);
    if (static_cast<int>(best.size()) < k ||
        delta * delta <= best.top().squared) {
      self(self, far);
    }
  };
  visit(visit, root_);

  std::vector<Neighbor> result(best.size());
  for (int i = static_cast<int>(best.size()) - 1; i >= 0; --i) {
    result[i] = {best.top().index, std::sqrt(best.top().squared)};
    best.pop();
  }
  return result;
}

Neighbor KdTree::NearestOne(const Point2& query) const {
  return Nearest(query, 1).front();
}

}  // namespace wgpom
