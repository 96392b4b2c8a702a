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


#ifndef WGPOM_INGEST_H_
#define WGPOM_INGEST_H_

#include <string>
#include <string_view>
#include <vector>

#include "wgpom/map_io.h"
#include "wgpom/pose.h"
#include "wgpom/simulator.h"

namespace wgpom {

enum class RecordKind { kLaser, kOdometry };

struct DatasetRecord {
  RecordKind kind = RecordKind::kLaser;
  double timestamp = 0.0;
  // Laser pose for FLASER records, robot pose for ODOM records.
  Pose2 pose;
  // Odometry pose reported with a FLASER record.
  Pose2 odometry;
  Scan scan;  // empty for ODOM records
  int line = 0;
};

// Same content ignoring the source line number.
bool SameContent(const DatasetRecord& a, const DatasetRecord& b);

struct Diagnostic {
  int line;
  std::string message;
};

struct ParseOptions {
  // FLASER carries no maximum range; readings at or beyond it (and
  // non-positive readings) become misses at this range.
  double max_range = 40.0;
};

struct ParsedLog {
  std::vector<DatasetRecord> records;
  std::vector<Diagnostic> diagnostics;
  int unknown_records = 0;
  int malformed_lines = 0;
};

// CARMEN text log:
//   FLASER n r_1 ... r_n x y theta odom_x odom_y odom_theta ts host logger_ts
//   ODOM x y theta tv rv accel ts host logger_ts
// Other record types are counted and skipped; malformed lines and
// out-of-order timestamps are skipped with a diagnostic. The n beams span
// [-pi/2, pi/2] (pi/n apart for even n, pi/(n-1) for odd n).
// Throws kEmptyDataset when no record parses.
ParsedLog ParseLogText(std::string_view text, const ParseOptions& options = {});
// Also throws kIo when the file cannot be read.
ParsedLog ParseLog(const std::string& path, const ParseOptions& options = {});

// Writes records back in CARMEN syntax with 17 significant digits.
std::string SerializeLog(const std::vector<DatasetRecord>& records);

// Keeps every `stride`-th beam.
Scan DecimateScan(const Scan& scan, int stride);

struct PoseTrack {
  std::vector<int> ids;
  std::vector<PoseBelief> poses;
  // Empty unless every line carries an 11th timestamp column.
  std::vector<double> timestamps;
  int clipped_covariances = 0;
  std::vector<Diagnostic> diagnostics;

  int size() const { return static_cast<int>(poses.size()); }
};

// Lines "id x y theta c11 c12 c13 c22 c23 c33 [timestamp]"; '#' starts a
// comment. The covariance is built from the upper triangle; if it is not PSD
// its eigenvalues are clipped to 1e-12 and the event is counted.
PoseTrack ParsePoseTrack(std::string_view text);
PoseTrack LoadPoseTrack(const std::string& path);
std::string SerializePoseTrack(const PoseTrack& track);

struct PosedScan {
  PoseBelief pose;
  Scan scan;
};

// Pairs each laser record with a pose: nearest timestamp when the track has
// timestamps, otherwise by index (extra entries on either side are dropped).
std::vector<PosedScan> AssociateScans(const std::vector<DatasetRecord>& records,
                                      const PoseTrack& track);

// Ray-traced labels on `grid`'s layout from the scans at their mean poses:
// traversed cells become free, hit cells occupied, and occupied wins.
ReferenceGrid ReferenceMap(const std::vector<PosedScan>& scans,
                           const ReferenceGrid& layout);

// Cells traversed by the ray from `from` to `to` in order, including both end
// cells (Amanatides-Woo traversal).
std::vector<int> TraverseCells(const ReferenceGrid& layout, const Point2& from,
                               const Point2& to);

// Geometric ground truth for a simulated world. A cell is occupied when its
// square meets a wall segment or its center is not in free space. With
// `sensed` non-null, only cells labeled in `sensed` keep a label.
ReferenceGrid AnalyticReferenceMap(const World& world,
                                   const ReferenceGrid& layout,
                                   const ReferenceGrid* sensed);

bool SegmentIntersectsBox(const Point2& a, const Point2& b, const Point2& lower,
                          const Point2& upper);

}  // namespace wgpom

#endif  // WGPOM_INGEST_H_
