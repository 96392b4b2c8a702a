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


#ifndef WGPOM_MAP_IO_H_
#define WGPOM_MAP_IO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "wgpom/common.h"
#include "wgpom/occupancy_map.h"

namespace wgpom {

enum class ReferenceLabel : int8_t { kUnknown = -1, kFree = 0, kOccupied = 1 };

// Binary ground-truth grid on the same cell layout as OccupancyMap.
struct ReferenceGrid {
  Point2 origin = Point2::Zero();
  double resolution = 1.0;
  int width = 0;
  int height = 0;
  std::vector<ReferenceLabel> labels;

  int size() const { return width * height; }
  Point2 CellCenter(int index) const {
    return {origin.x() + (index % width + 0.5) * resolution,
            origin.y() + (index / width + 0.5) * resolution};
  }
  int CountLabel(ReferenceLabel label) const;
};

// Empty grid aligned with `map`.
ReferenceGrid MakeReferenceGrid(const OccupancyMap& map);
bool SameLayout(const OccupancyMap& map, const ReferenceGrid& grid);

// 8-bit binary PGM, top image row = highest y. Pixel = round(255 (1 - p)),
// so 0 is occupied and 255 is free.
std::string EncodePgm(const std::vector<double>& probabilities, int width,
                      int height);
void WritePgm(const std::string& path, const std::vector<double>& probabilities,
              int width, int height);

// Header "x,y,mean,variance,probability,observed", one row per cell in flat
// index order, values printed with 17 significant digits.
std::string EncodeMapCsv(const OccupancyMap& map, SquashFunction squash);
void WriteMapCsv(const std::string& path, const OccupancyMap& map,
                 SquashFunction squash);
// Rebuilds the grid from a map CSV. The prior is read from the unobserved
// cell with the largest variance (N(0, 1) when every cell is observed).
OccupancyMap ReadMapCsv(const std::string& path);

// Occupied 0, free 255, unknown 128.
void WriteReferencePgm(const std::string& path, const ReferenceGrid& grid);
// Header "x,y,label", label in {-1, 0, 1}.
std::string EncodeReferenceCsv(const ReferenceGrid& grid);
void WriteReferenceCsv(const std::string& path, const ReferenceGrid& grid);
ReferenceGrid ReadReferenceCsv(const std::string& path);

void WriteTextFile(const std::string& path, const std::string& contents);
std::string ReadTextFile(const std::string& path);

}  // namespace wgpom

#endif  // WGPOM_MAP_IO_H_
