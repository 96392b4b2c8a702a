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


#include "wgpom/ingest.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace wgpom {
namespace {

std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

bool ParseReal(std::string_view token, double* value) {
  const char* end = token.data() + token.size();
  const auto result = std::from_chars(token.data(), end, *value);
  return result.ec == std::errc() && result.ptr == end && std::isfinite(*value);
}

bool ParseInt(std::string_view token, long long* value) {
  const char* end = token.data() + token.size();
  const auto result = std::from_chars(token.data(), end, *value);
  return result.ec == std::errc() && result.ptr == end;
}

void AppendReal(std::string* out, double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), " %.17g", value);
  *out += buffer;
}

bool SamePose(const Pose2& a, const Pose2& b) {
  return a.x == b.x && a.y == b.y && a.heading == b.heading;
}

// Parses `count` reals starting at tokens[first].
bool ParseReals(const std::vector<std::string_view>& tokens, size_t first,
                size_t count, double* out) {
  if (first + count > tokens.size()) return false;
  for (size_t i = 0; i < count; ++i) {
    if (!ParseReal(tokens[first + i], &out[i])) return false;
  }
  return true;
}

}  // namespace

bool SameContent(const DatasetRecord& a, const DatasetRecord& b) {
  return a.kind == b.kind && a.timestamp == b.timestamp &&
         SamePose(a.pose, b.pose) && SamePose(a.odometry, b.odometry) &&
         a.scan.angle_min == b.scan.angle_min &&
         a.scan.angle_increment == b.scan.angle_increment &&
         a.scan.max_range == b.scan.max_range && a.scan.ranges == b.scan.ranges;
}

ParsedLog ParseLogText(std::string_view text, const ParseOptions& options) {
  if (!(options.max_range > 0.0) || !std::isfinite(options.max_range)) {
    throw Error(ErrorCode::kInvalidInput, "max_range must be positive");
  }
  ParsedLog log;
  double last_timestamp = -std::numeric_limits<double>::infinity();
  int line_number = 0;
  size_t position = 0;
  while (position < text.size()) {
    size_t end = text.find('\n', position);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(position, end - position);
    position = end + 1;
    ++line_number;

    const std::vector<std::string_view> tokens = Tokenize(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    auto malformed = [&](const std::string& why) {
      ++log.malformed_lines;
      log.diagnostics.push_back({line_number, why});
    };

    DatasetRecord record;
    record.line = line_number;
    if (tokens[0] == "FLASER") {
      long long n = 0;
      if (tokens.size() < 2 || !ParseInt(tokens[1], &n) || n < 1 ||
          static_cast<unsigned long long>(n) > tokens.size()) {
        malformed("FLASER: bad beam count");
        continue;
      }
      const size_t beams = static_cast<size_t>(n);
      if (tokens.size() != 2 + beams + 9) {
        malformed("FLASER: expected " + std::to_string(2 + beams + 9) +
                  " fields, got " + std::to_string(tokens.size()));
        continue;
      }
      record.scan.ranges.resize(beams);
      double pose[6];
      double stamp[1];
      if (!ParseReals(tokens, 2, beams, record.scan.ranges.data()) ||
          !ParseReals(tokens, 2 + beams, 6, pose) ||
          !ParseReals(tokens, 2 + beams + 6, 1, stamp)) {
        malformed("FLASER: bad number");
        continue;
      }
      for (double& r : record.scan.ranges) {
        if (r <= 0.0 || r >= options.max_range) r = options.max_range;
      }
      record.kind = RecordKind::kLaser;
      record.scan.max_range = options.max_range;
      record.scan.angle_min = -0.5 * std::numbers::pi;
      record.scan.angle_increment =
          beams % 2 == 0 ? std::numbers::pi / beams
                         : (beams > 1 ? std::numbers::pi / (beams - 1) : 0.0);
      record.pose = {pose[0], pose[1], pose[2]};
      record.odometry = {pose[3], pose[4], pose[5]};
      record.timestamp = stamp[0];
    } else if (tokens[0] == "ODOM") {
      double values[6];
      double stamp[1];
      if (tokens.size() != 10 || !ParseReals(tokens, 1, 6, values) ||
          !ParseReals(tokens, 7, 1, stamp)) {
        malformed("ODOM: expected 9 numeric fields");
        continue;
      }
      record.kind = RecordKind::kOdometry;
      record.pose = {values[0], values[1], values[2]};
      record.odometry = record.pose;
      record.timestamp = stamp[0];
    } else {
      ++log.unknown_records;
      continue;
    }
    if (record.timestamp < last_timestamp) {
      malformed("timestamp goes backwards");
      continue;
    }
    last_timestamp = record.timestamp;
    log.records.push_back(std::move(record));
  }
  if (log.records.empty()) {
    throw Error(ErrorCode::kEmptyDataset,
                "no FLASER/ODOM records (" + std::to_string(log.malformed_lines) +
                    " malformed, " + std::to_string(log.unknown_records) +
                    " unknown)");
  }
  return log;
}

ParsedLog ParseLog(const std::string& path, const ParseOptions& options) {
  return ParseLogText(ReadTextFile(path), options);
}

std::string SerializeLog(const std::vector<DatasetRecord>& records) {
  std::string out;
  for (const DatasetRecord& r : records) {
    if (r.kind == RecordKind::kLaser) {
      out += "FLASER " + std::to_string(r.scan.size());
      for (double range : r.scan.ranges) AppendReal(&out, range);
      for (const Pose2& p : {r.pose, r.odometry}) {
        AppendReal(&out, p.x);
        AppendReal(&out, p.y);
        AppendReal(&out, p.heading);
      }
    } else {
      out += "ODOM";
      AppendReal(&out, r.pose.x);
      AppendReal(&out, r.pose.y);
      AppendReal(&out, r.pose.heading);
      out += " 0 0 0";
    }
    AppendReal(&out, r.timestamp);
    out += " wgpom";
    AppendReal(&out, r.timestamp);
    out += "\n";
  }
  return out;
}

Scan DecimateScan(const Scan& scan, int stride) {
  if (stride < 1) throw Error(ErrorCode::kInvalidInput, "stride must be >= 1");
  Scan result;
  result.angle_min = scan.angle_min;
  result.angle_increment = scan.angle_increment * stride;
  result.max_range = scan.max_range;
  for (int i = 0; i < scan.size(); i += stride) {
    result.ranges.push_back(scan.ranges[i]);
  }
  return result;
}

PoseTrack ParsePoseTrack(std::string_view text) {
  PoseTrack track;
  int line_number = 0;
  int with_timestamp = 0;
  size_t position = 0;
  while (position < text.size()) {
    size_t end = text.find('\n', position);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(position, end - position);
    position = end + 1;
    ++line_number;
    const std::vector<std::string_view> tokens = Tokenize(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;

    long long id = 0;
    double v[10];
    if ((tokens.size() != 10 && tokens.size() != 11) || !ParseInt(tokens[0], &id) ||
        !ParseReals(tokens, 1, tokens.size() - 1, v)) {
      track.diagnostics.push_back({line_number, "expected 'id x y theta c11 c12 "
                                                "c13 c22 c23 c33 [timestamp]'"});
      continue;
    }
    PoseBelief belief;
    belief.mean = {v[0], v[1], v[2]};
    Matrix3& c = belief.covariance;
    c << v[3], v[4], v[5],
         v[4], v[6], v[7],
         v[5], v[7], v[8];
    Eigen::SelfAdjointEigenSolver<Matrix3> solver(c);
    if (solver.eigenvalues().minCoeff() < 0.0) {
      const Matrix3 clipped =
          solver.eigenvectors() *
          solver.eigenvalues().cwiseMax(1e-12).asDiagonal() *
          solver.eigenvectors().transpose();
      c = 0.5 * (clipped + clipped.transpose());
      ++track.clipped_covariances;
      track.diagnostics.push_back(
          {line_number, "warning: covariance not PSD, eigenvalues clipped"});
    }
    track.ids.push_back(static_cast<int>(id));
    track.poses.push_back(belief);
    if (tokens.size() == 11) {
      track.timestamps.push_back(v[9]);
      ++with_timestamp;
    }
  }
  if (track.poses.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "pose track has no poses");
  }
  if (with_timestamp != track.size()) {
    if (with_timestamp > 0) {
      track.diagnostics.push_back(
          {0, "timestamps present on only some lines; ignoring them"});
    }
    track.timestamps.clear();
  }
  return track;
}

PoseTrack LoadPoseTrack(const std::string& path) {
  return ParsePoseTrack(ReadTextFile(path));
}

std::string SerializePoseTrack(const PoseTrack& track) {
  std::string out;
  for (int i = 0; i < track.size(); ++i) {
    const PoseBelief& p = track.poses[i];
    out += std::to_string(track.ids[i]);
    AppendReal(&out, p.mean.x);
    AppendReal(&out, p.mean.y);
    AppendReal(&out, p.mean.heading);
    for (int r = 0; r < 3; ++r) {
      for (int c = r; c < 3; ++c) AppendReal(&out, p.covariance(r, c));
    }
    if (!track.timestamps.empty()) AppendReal(&out, track.timestamps[i]);
    out += "\n";
  }
  return out;
}

std::vector<PosedScan> AssociateScans(const std::vector<DatasetRecord>& records,
                                      const PoseTrack& track) {
  std::vector<PosedScan> result;
  if (track.poses.empty()) return result;
  int index = 0;
  for (const DatasetRecord& r : records) {
    if (r.kind != RecordKind::kLaser) continue;
    if (!track.timestamps.empty()) {
      const auto it = std::lower_bound(track.timestamps.begin(),
                                       track.timestamps.end(), r.timestamp);
      size_t best = static_cast<size_t>(it - track.timestamps.begin());
      if (best == track.timestamps.size() ||
          (best > 0 && r.timestamp - track.timestamps[best - 1] <=
                           track.timestamps[best] - r.timestamp)) {
        best = best == 0 ? 0 : best - 1;
      }
      result.push_back({track.poses[best], r.scan});
    } else {
      if (index >= track.size()) break;
      result.push_back({track.poses[index], r.scan});
    }
    ++index;
  }
  return result;
}

std::vector<int> TraverseCells(const ReferenceGrid& layout, const Point2& from,
                               const Point2& to) {
  std::vector<int> cells;
  const Point2 g0 = (from - layout.origin) / layout.resolution;
  const Point2 g1 = (to - layout.origin) / layout.resolution;
  long ix = static_cast<long>(std::floor(g0.x()));
  long iy = static_cast<long>(std::floor(g0.y()));
  const long end_x = static_cast<long>(std::floor(g1.x()));
  const long end_y = static_cast<long>(std::floor(g1.y()));
  const Point2 d = g1 - g0;
  const long step_x = d.x() > 0 ? 1 : (d.x() < 0 ? -1 : 0);
  const long step_y = d.y() > 0 ? 1 : (d.y() < 0 ? -1 : 0);
  const double inf = std::numeric_limits<double>::infinity();
  double t_max_x = step_x == 0 ? inf
                               : ((ix + (step_x > 0 ? 1 : 0)) - g0.x()) / d.x();
  double t_max_y = step_y == 0 ? inf
                               : ((iy + (step_y > 0 ? 1 : 0)) - g0.y()) / d.y();
  const double t_delta_x = step_x == 0 ? inf : std::abs(1.0 / d.x());
  const double t_delta_y = step_y == 0 ? inf : std::abs(1.0 / d.y());
  const long limit = std::labs(end_x - ix) + std::labs(end_y - iy) + 1;
  for (long n = 0; n <= limit; ++n) {
    if (ix >= 0 && iy >= 0 && ix < layout.width && iy < layout.height) {
      cells.push_back(static_cast<int>(iy * layout.width + ix));
    }
    if (ix == end_x && iy == end_y) break;
    if (t_max_x < t_max_y) {
      if (t_max_x > 1.0) break;
      ix += step_x;
      t_max_x += t_delta_x;
    } else {
      if (t_max_y > 1.0) break;
      iy += step_y;
      t_max_y += t_delta_y;
    }
  }
  return cells;
}

ReferenceGrid ReferenceMap(const std::vector<PosedScan>& scans,
                           const ReferenceGrid& layout) {
  if (layout.width < 1 || layout.height < 1 || !(layout.resolution > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "reference layout is empty");
  }
  ReferenceGrid grid = layout;
  grid.labels.assign(layout.size(), ReferenceLabel::kUnknown);
  std::vector<int> hits;
  for (const PosedScan& s : scans) {
    s.scan.Validate();
    const Pose2& pose = s.pose.mean;
    for (int i = 0; i < s.scan.size(); ++i) {
      const double angle = s.scan.Angle(i);
      const Point2 end =
          pose.Transform(s.scan.ranges[i] * Point2(std::cos(angle), std::sin(angle)));
      const std::vector<int> cells = TraverseCells(grid, pose.translation(), end);
      for (int c : cells) grid.labels[c] = ReferenceLabel::kFree;
      if (!s.scan.Hit(i)) continue;
      const Point2 g = (end - grid.origin) / grid.resolution;
      const double fx = std::floor(g.x());
      const double fy = std::floor(g.y());
      if (fx >= 0 && fy >= 0 && fx < grid.width && fy < grid.height) {
        hits.push_back(static_cast<int>(fy) * grid.width + static_cast<int>(fx));
      }
    }
  }
  for (int c : hits) grid.labels[c] = ReferenceLabel::kOccupied;
  return grid;
}

bool SegmentIntersectsBox(const Point2& a, const Point2& b, const Point2& lower,
                          const Point2& upper) {
  double t0 = 0.0;
  double t1 = 1.0;
  const Point2 d = b - a;
  for (int axis = 0; axis < 2; ++axis) {
    if (d(axis) == 0.0) {
      if (a(axis) < lower(axis) || a(axis) > upper(axis)) return false;
      continue;
    }
    double ta = (lower(axis) - a(axis)) / d(axis);
    double tb = (upper(axis) - a(axis)) / d(axis);
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

ReferenceGrid AnalyticReferenceMap(const World& world,
                                   const ReferenceGrid& layout,
                                   const ReferenceGrid* sensed) {
  if (sensed != nullptr && sensed->size() != layout.size()) {
    throw Error(ErrorCode::kInvalidInput, "sensed grid layout differs");
  }
  ReferenceGrid grid = layout;
  grid.labels.assign(layout.size(), ReferenceLabel::kUnknown);
  const std::vector<Segment> segments = world.Segments();
  const Point2 half = Point2::Constant(0.5 * layout.resolution);
  for (int i = 0; i < grid.size(); ++i) {
    if (sensed != nullptr && sensed->labels[i] == ReferenceLabel::kUnknown) continue;
    const Point2 center = grid.CellCenter(i);
    bool occupied = !world.IsFree(center);
    for (size_t s = 0; !occupied && s < segments.size(); ++s) {
      occupied = SegmentIntersectsBox(segments[s].a, segments[s].b,
                                      center - half, center + half);
    }
    grid.labels[i] = occupied ? ReferenceLabel::kOccupied : ReferenceLabel::kFree;
  }
  return grid;
}

}  // namespace wgpom
