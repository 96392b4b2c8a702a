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


#ifndef WGPOM_CONFIG_H_
#define WGPOM_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wgpom/kernels.h"
#include "wgpom/occupancy_map.h"
#include "wgpom/simulator.h"
#include "wgpom/uncertain_input.h"
#include "wgpom/warping.h"

namespace wgpom {

inline constexpr int kConfigSchemaVersion = 1;

enum class ModelKind { kGpom, kWgpom };
enum class UncertaintyMethod { kNone, kExpectedKernel, kExpectedSubmap };

struct MethodSpec {
  ModelKind model;
  UncertaintyMethod uncertainty;

  // "GPOM", "GEK", "GESM", "WGPOM", "WEK", "WESM".
  std::string Label() const;
  static MethodSpec Parse(std::string_view label);
  bool operator==(const MethodSpec&) const = default;
};

std::vector<MethodSpec> AllMethods();

struct ModelConfig {
  KernelSpec kernel = KernelSpec::SquaredExponential(1.0, 1.0);
  std::optional<WarpSpec> warp;
};

enum class SourceType { kSimulation, kSimLog, kCarmen };

struct ExperimentConfig {
  SourceType source = SourceType::kSimulation;
  // kSimulation; the noise field is overwritten per profile.
  SimulationConfig simulation;
  // kSimLog.
  std::string simlog_path;
  // kCarmen.
  std::string carmen_path;
  std::string pose_track_path;
  int beam_stride = 1;
  double carmen_max_range = 40.0;

  double resolution = 0.5;
  // Added around the scan bounding box when choosing query cells.
  double query_margin = 1.0;
  SquashFunction squash = SquashFunction::kProbit;

  ModelConfig gpom;
  ModelConfig wgpom;
  std::vector<MethodSpec> methods;

  ExpectationMethod expected_kernel = ExpectationMethod::GaussHermite(5);
  int esm_samples = 20;
  // Order of the rule that averages the inverse warp.
  int warp_quadrature_order = 20;

  double free_spacing = 0.5;
  double noise_variance = 0.1;
  double label_noise_std = 0.1;
  int hyperparameter_budget = 200;
  bool optimize_noise = false;

  // Simulation noise profiles (1..5) and seeds of a sweep.
  std::vector<int> profiles = {3};
  std::vector<uint64_t> seeds = {1};

  // AUC over reference-observed cells (true) or all labeled cells.
  bool auc_observed_only = true;

  std::string output_dir = "wgpom_out";
  bool export_maps = true;

  // Throws kConfig on an invalid combination or missing input file.
  void Validate() const;
};

// Star-world defaults: Matern-5/2 GPOM, SE-ARD + two-step tanh WGPOM, all six
// methods.
ExperimentConfig DefaultConfig();

// JSON with "schema_version": 1. Missing fields keep their defaults; unknown
// fields are errors. Throws kConfig.
ExperimentConfig ParseConfig(std::string_view json_text);
ExperimentConfig LoadConfig(const std::string& path);
std::string ConfigToJson(const ExperimentConfig& config);

}  // namespace wgpom

#endif  // WGPOM_CONFIG_H_
