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


#ifndef WGPOM_EXPERIMENT_H_
#define WGPOM_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wgpom/config.h"
#include "wgpom/hyperparameters.h"
#include "wgpom/ingest.h"
#include "wgpom/map_io.h"
#include "wgpom/occupancy_map.h"

namespace wgpom {

// Scans with their pose beliefs plus the AUC label grids.
struct Dataset {
  std::string profile_label;
  std::vector<PosedScan> scans;
  // Labels on reference-observed cells only.
  ReferenceGrid reference;
  // Labels on every cell that has ground truth (equal to `reference` for
  // real data).
  ReferenceGrid reference_all;
};

// Builds the dataset of one run. `profile` selects the simulated motion
// noise (0 = none) and is ignored for recorded sources.
Dataset PrepareDataset(const ExperimentConfig& config, int profile,
                       uint64_t seed);

// Training fragment of one scan in the robot frame, with N(0, s^2) label
// noise drawn from (seed, step).
TrainingSet LocalTraining(const ExperimentConfig& config, const Scan& scan,
                          uint64_t seed, int step);

struct LearnedModels {
  std::optional<HyperparameterFit> gpom;
  std::optional<HyperparameterFit> wgpom;
  std::string gpom_error;
  std::string wgpom_error;
};

// Hyperparameters of each model used by the configured methods, fitted on
// the first scan.
LearnedModels LearnModels(const ExperimentConfig& config, const Dataset& data,
                          uint64_t seed);

struct EvalReport {
  std::string label;
  std::string profile;
  uint64_t seed = 0;
  // NaN when undefined.
  double auc = 0.0;
  double auc_all = 0.0;
  int steps = 0;
  long training_points = 0;
  FusionStats fusion;
  int psd_clips = 0;
  // Empty on success, otherwise the step-indexed diagnostic.
  std::string error;
  double runtime_s = 0.0;
  std::vector<double> step_seconds;
};

struct ExperimentResult {
  Dataset data;
  LearnedModels models;
  std::vector<EvalReport> reports;
  // One per report, partial when the run failed.
  std::vector<OccupancyMap> maps;
};

// Runs every configured method on one dataset. `models` (hyperparameters
// learned elsewhere) is used when given, otherwise they are learned here.
ExperimentResult RunExperiment(const ExperimentConfig& config, int profile,
                               uint64_t seed,
                               const LearnedModels* models = nullptr);

// All profiles and seeds of `config`; hyperparameters are learned once per
// seed and shared across profiles.
std::vector<ExperimentResult> RunSweep(const ExperimentConfig& config);

// report.csv, report.txt, timing.csv and, when enabled, map_*.{pgm,csv} and
// reference_*.{pgm,csv}. Everything but timing.csv is deterministic.
void WriteResults(const ExperimentConfig& config,
                  const std::vector<ExperimentResult>& results);

// Per-profile AUC mean and standard deviation over seeds for each method.
std::string AucVersusProfileCsv(const std::vector<ExperimentResult>& results);

std::string ReportCsv(const std::vector<ExperimentResult>& results);
std::string ReportText(const ExperimentConfig& config,
                       const std::vector<ExperimentResult>& results);
std::string TimingCsv(const std::vector<ExperimentResult>& results);

// Probabilities and labels on the labeled cells of `reference`.
double MapAuc(const std::vector<double>& probabilities,
              const ReferenceGrid& reference);

}  // namespace wgpom

#endif  // WGPOM_EXPERIMENT_H_
