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


#include "wgpom/map_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wgpom {
namespace {

std::string FormatDouble(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::vector<std::vector<std::string>> ReadCsvRows(const std::string& path,
                                                  const std::string& header) {
  std::istringstream in(ReadTextFile(path));
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw Error(ErrorCode::kIo, path + ": expected header '" + header + "'");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

double ParseDouble(const std::string& text, const std::string& path, size_t row) {
  try {
    size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kIo, path + ": bad number '" + text + "' in row " +
                                    std::to_string(row + 2));
  }
}

struct Layout {
  Point2 origin;
  double resolution;
  int width;
  int height;
};

// Recovers the grid layout from cell centers listed in flat index order.
Layout InferLayout(const std::vector<Point2>& centers, const std::string& path) {
  if (centers.empty()) throw Error(ErrorCode::kIo, path + ": no cells");
  int width = 1;
  while (width < static_cast<int>(centers.size()) &&
         centers[width].y() == centers[0].y()) {
    ++width;
  }
  if (centers.size() % width != 0) {
    throw Error(ErrorCode::kIo, path + ": rows are not a full grid");
  }
  const int height = static_cast<int>(centers.size()) / width;
  double resolution = 1.0;
  if (width > 1) {
    resolution = centers[1].x() - centers[0].x();
  } else if (height > 1) {
    resolution = centers[width].y() - centers[0].y();
  }
  if (!(resolution > 0.0)) throw Error(ErrorCode::kIo, path + ": bad spacing");
  const Point2 origin = centers[0] - Point2::Constant(0.5 * resolution);
  for (size_t i = 0; i < centers.size(); ++i) {
    const Point2 expected(origin.x() + (i % width + 0.5) * resolution,
                          origin.y() + (i / width + 0.5) * resolution);
    if ((expected - centers[i]).norm() > 1e-6 * std::max(1.0, resolution)) {
      throw Error(ErrorCode::kIo, path + ": cell centers are not a regular grid");
    }
  }
  return {origin, resolution, width, height};
}

}  // namespace

int ReferenceGrid::CountLabel(ReferenceLabel label) const {
  return static_cast<int>(std::count(labels.begin(), labels.end(), label));
}

ReferenceGrid MakeReferenceGrid(const OccupancyMap& map) {
  ReferenceGrid grid;
  grid.origin = map.origin();
  grid.resolution = map.resolution();
  grid.width = map.width();
  grid.height = map.height();
  grid.labels.assign(map.size(), ReferenceLabel::kUnknown);
  return grid;
}

bool SameLayout(const OccupancyMap& map, const ReferenceGrid& grid) {
  return map.width() == grid.width && map.height() == grid.height &&
         std::abs(map.resolution() - grid.resolution) <= 1e-9 * grid.resolution &&
         (map.origin() - grid.origin).norm() <= 1e-6 * grid.resolution;
}

std::string EncodePgm(const std::vector<double>& probabilities, int width,
                      int height) {
  if (width < 1 || height < 1 ||
      probabilities.size() != static_cast<size_t>(width) * height) {
    throw Error(ErrorCode::kInvalidInput, "PGM size does not match the data");
  }
  std::string out = "P5\n" + std::to_string(width) + " " +
                    std::to_string(height) + "\n255\n";
  for (int iy = height - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < width; ++ix) {
      const double p = std::clamp(probabilities[iy * width + ix], 0.0, 1.0);
      out.push_back(static_cast<char>(
          static_cast<unsigned char>(std::lround(255.0 * (1.0 - p)))));
    }
  }
  return out;
}

void WritePgm(const std::string& path, const std::vector<double>& probabilities,
              int width, int height) {
  WriteTextFile(path, EncodePgm(probabilities, width, height));
}

std::string EncodeMapCsv(const OccupancyMap& map, SquashFunction squash) {
  const std::vector<double> probabilities = SquashMap(map, squash);
  std::string out = "x,y,mean,variance,probability,observed\n";
  for (int i = 0; i < map.size(); ++i) {
    const Point2 c = map.CellCenter(i);
    const CellBelief& b = map.cell(i);
    out += FormatDouble(c.x()) + "," + FormatDouble(c.y()) + "," +
           FormatDouble(b.mean) + "," + FormatDouble(b.variance) + "," +
           FormatDouble(probabilities[i]) + "," + (b.observed ? "1" : "0") +
           "\n";
  }
  return out;
}

void WriteMapCsv(const std::string& path, const OccupancyMap& map,
                 SquashFunction squash) {
  WriteTextFile(path, EncodeMapCsv(map, squash));
}

OccupancyMap ReadMapCsv(const std::string& path) {
  const auto rows = ReadCsvRows(path, "x,y,mean,variance,probability,observed");
  std::vector<Point2> centers;
  std::vector<CellBelief> cells;
  double prior_variance = 0.0;
  double prior_mean = 0.0;
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != 6) {
      throw Error(ErrorCode::kIo, path + ": expected 6 columns in row " +
                                      std::to_string(r + 2));
    }
    centers.emplace_back(ParseDouble(rows[r][0], path, r),
                         ParseDouble(rows[r][1], path, r));
    CellBelief b{ParseDouble(rows[r][2], path, r),
                 ParseDouble(rows[r][3], path, r), rows[r][5] == "1"};
    if (!b.observed && b.variance > prior_variance) {
      prior_variance = b.variance;
      prior_mean = b.mean;
    }
    cells.push_back(b);
  }
  const Layout layout = InferLayout(centers, path);
  OccupancyMap map(layout.origin, layout.resolution, layout.width,
                   layout.height, prior_variance > 0.0 ? prior_variance : 1.0,
                   prior_mean);
  for (size_t i = 0; i < cells.size(); ++i) {
    if (!(cells[i].variance > 0.0)) {
      throw Error(ErrorCode::kIo, path + ": non-positive variance");
    }
    map.mutable_cell(static_cast<int>(i)) = cells[i];
  }
  return map;
}

void WriteReferencePgm(const std::string& path, const ReferenceGrid& grid) {
  std::vector<double> values(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    switch (grid.labels[i]) {
      case ReferenceLabel::kOccupied: values[i] = 1.0; break;
      case ReferenceLabel::kFree: values[i] = 0.0; break;
      case ReferenceLabel::kUnknown: values[i] = 127.0 / 255.0; break;
    }
  }
  WritePgm(path, values, grid.width, grid.height);
}

std::string EncodeReferenceCsv(const ReferenceGrid& grid) {
  std::string out = "x,y,label\n";
  for (int i = 0; i < grid.size(); ++i) {
    const Point2 c = grid.CellCenter(i);
    out += FormatDouble(c.x()) + "," + FormatDouble(c.y()) + "," +
           std::to_string(static_cast<int>(grid.labels[i])) + "\n";
  }
  return out;
}

void WriteReferenceCsv(const std::string& path, const ReferenceGrid& grid) {
  WriteTextFile(path, EncodeReferenceCsv(grid));
}

ReferenceGrid ReadReferenceCsv(const std::string& path) {
  const auto rows = ReadCsvRows(path, "x,y,label");
  std::vector<Point2> centers;
  ReferenceGrid grid;
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != 3) {
      throw Error(ErrorCode::kIo, path + ": expected 3 columns in row " +
                                      std::to_string(r + 2));
    }
    centers.emplace_back(ParseDouble(rows[r][0], path, r),
                         ParseDouble(rows[r][1], path, r));
    const std::string& label = rows[r][2];
    if (label == "1") {
      grid.labels.push_back(ReferenceLabel::kOccupied);
    } else if (label == "0") {
      grid.labels.push_back(ReferenceLabel::kFree);
    } else if (label == "-1") {
      grid.labels.push_back(ReferenceLabel::kUnknown);
    } else {
      throw Error(ErrorCode::kIo, path + ": bad label '" + label + "'");
    }
  }
  const Layout layout = InferLayout(centers, path);
  grid.origin = layout.origin;
  grid.resolution = layout.resolution;
  grid.width = layout.width;
  grid.height = layout.height;
  return grid;
}

void WriteTextFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace wgpom
