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


#include "wgpom/experiment.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>

#include "wgpom/gp_regression.h"
#include "wgpom/quadrature.h"
#include "wgpom/roc.h"
#include "wgpom/sim_log.h"
#include "wgpom/uncertain_input.h"
#include "wgpom/warping.h"

namespace wgpom {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Format(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.10g", value);
  return buffer;
}

ReferenceGrid LayoutFromBounds(const Point2& lower, const Point2& upper,
                               double resolution) {
  ReferenceGrid grid;
  grid.resolution = resolution;
  grid.origin = Point2(std::floor(lower.x() / resolution) * resolution,
                       std::floor(lower.y() / resolution) * resolution);
  grid.width = std::max(
      1, static_cast<int>(std::ceil((upper.x() - grid.origin.x()) / resolution)));
  grid.height = std::max(
      1, static_cast<int>(std::ceil((upper.y() - grid.origin.y()) / resolution)));
  grid.labels.assign(grid.size(), ReferenceLabel::kUnknown);
  return grid;
}

Dataset FromSimulation(const SimulationLog& log, double resolution,
                       const std::string& profile_label) {
  const World world = BuildWorld(log.world);
  Dataset data;
  data.profile_label = profile_label;
  std::vector<PosedScan> truth;
  for (const SimStep& step : log.steps) {
    data.scans.push_back({step.belief, step.scan});
    truth.push_back({{step.true_pose, Matrix3::Zero()}, step.scan});
  }
  const ReferenceGrid layout =
      LayoutFromBounds(world.lower, world.upper, resolution);
  const ReferenceGrid sensed = ReferenceMap(truth, layout);
  data.reference = AnalyticReferenceMap(world, layout, &sensed);
  data.reference_all = AnalyticReferenceMap(world, layout, nullptr);
  return data;
}

Dataset FromCarmen(const ExperimentConfig& config) {
  ParseOptions options;
  options.max_range = config.carmen_max_range;
  const ParsedLog log = ParseLog(config.carmen_path, options);
  const PoseTrack track = LoadPoseTrack(config.pose_track_path);
  Dataset data;
  data.profile_label = "track";
  for (PosedScan& s : AssociateScans(log.records, track)) {
    s.scan = DecimateScan(s.scan, config.beam_stride);
    data.scans.push_back(std::move(s));
  }
  if (data.scans.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no scans could be associated");
  }
  Point2 lower = Point2::Constant(std::numeric_limits<double>::infinity());
  Point2 upper = -lower;
  for (const PosedScan& s : data.scans) {
    const Pose2& pose = s.pose.mean;
    lower = lower.cwiseMin(pose.translation());
    upper = upper.cwiseMax(pose.translation());
    for (int i = 0; i < s.scan.size(); ++i) {
      if (!s.scan.Hit(i)) continue;
      const double a = s.scan.Angle(i);
      const Point2 end =
          pose.Transform(s.scan.ranges[i] * Point2(std::cos(a), std::sin(a)));
      lower = lower.cwiseMin(end);
      upper = upper.cwiseMax(end);
    }
  }
  const Point2 margin = Point2::Constant(config.query_margin + config.resolution);
  const ReferenceGrid layout =
      LayoutFromBounds(lower - margin, upper + margin, config.resolution);
  data.reference = ReferenceMap(data.scans, layout);
  data.reference_all = data.reference;
  return data;
}

const ModelConfig& ModelFor(const ExperimentConfig& config, ModelKind kind) {
  return kind == ModelKind::kGpom ? config.gpom : config.wgpom;
}

bool UsesModel(const ExperimentConfig& config, ModelKind kind) {
  for (const MethodSpec& m : config.methods) {
    if (m.model == kind) return true;
  }
  return false;
}

// Query cells of one scan: the cell centers inside the bounding box of the
// sensor origin and the training points at the mean pose, plus the margin.
std::vector<int> QueryCells(const OccupancyMap& map, const Pose2& pose,
                            const TrainingSet& train, double margin) {
  Point2 lower = pose.translation();
  Point2 upper = lower;
  for (const Point2& p : train.inputs) {
    const Point2 g = pose.Transform(p);
    lower = lower.cwiseMin(g);
    upper = upper.cwiseMax(g);
  }
  const Point2 m = Point2::Constant(margin);
  return map.CellsInBox(lower - m, upper + m);
}

// Observation-space sub-map values from latent predictions.
void FillSubMap(const std::vector<Prediction>& latent,
                const std::optional<WarpSpec>& warp, double noise_variance,
                const GaussHermiteRule& rule, SubMap* sub) {
  sub->means.resize(latent.size());
  sub->variances.resize(latent.size());
  for (size_t i = 0; i < latent.size(); ++i) {
    sub->means[i] =
        warp ? WarpPrediction(latent[i], *warp, rule).mean : latent[i].mean;
    sub->variances[i] = latent[i].variance + noise_variance;
  }
}

// Deterministic sub-map in the robot frame.
SubMap LocalSubMap(const HyperparameterFit& fit, const TrainingSet& train,
                   const OccupancyMap& map, const std::vector<int>& cells,
                   const Pose2& pose, const GaussHermiteRule& rule) {
  SubMap local;
  for (int c : cells) local.points.push_back(pose.InverseTransform(map.CellCenter(c)));
  TrainingSet fitted = train;
  fitted.noise_variance = fit.noise_variance;
  const GpModel model = fit.warp ? FitWarped(fitted, fit.kernel, *fit.warp)
                                 : Fit(fitted, fit.kernel);
  FillSubMap(Predict(model, local.points), fit.warp, fit.noise_variance, rule,
             &local);
  return local;
}

// Sub-map at the global cell centers from the expected kernel over the
// unscented-transformed training inputs.
SubMap ExpectedKernelSubMap(const HyperparameterFit& fit,
                            const TrainingSet& train, const OccupancyMap& map,
                            const std::vector<int>& cells,
                            const PoseBelief& pose,
                            const ExpectationMethod& method,
                            const GaussHermiteRule& rule, int* psd_clips) {
  SubMap sub;
  for (int c : cells) sub.points.push_back(map.CellCenter(c));
  const std::vector<UncertainPoint> inputs =
      UnscentedTransform(train.inputs, pose);
  const ExpectedGram gram =
      ComputeExpectedGram(fit.kernel, inputs, sub.points, method);
  *psd_clips += gram.psd_clips;
  std::vector<Point2> means(inputs.size());
  for (size_t i = 0; i < inputs.size(); ++i) means[i] = inputs[i].mean;
  Eigen::VectorXd targets = train.labels;
  if (fit.warp) {
    for (Eigen::Index i = 0; i < targets.size(); ++i) {
      targets(i) = fit.warp->Warp(train.labels(i));
    }
  }
  const GpModel model = GpModel::FromCovariance(
      means, gram.train_train, targets, fit.kernel, fit.noise_variance);
  const Eigen::VectorXd prior =
      Eigen::VectorXd::Constant(sub.size(), fit.kernel.signal_variance());
  FillSubMap(model.PredictFromCross(gram.train_query, prior), fit.warp,
             fit.noise_variance, rule, &sub);
  return sub;
}

std::string ModelSummary(const HyperparameterFit& fit) {
  std::string out = KernelFamilyName(fit.kernel.family()) +
                    " sf2=" + Format(fit.kernel.signal_variance());
  if (fit.kernel.family() == KernelFamily::kSparseCompact) {
    out += " radius=" + Format(fit.kernel.support_radius());
  } else {
    out += " l=";
    for (size_t i = 0; i < fit.kernel.length_scales().size(); ++i) {
      out += (i ? "/" : "") + Format(fit.kernel.length_scales()[i]);
    }
  }
  out += " sn2=" + Format(fit.noise_variance);
  if (fit.warp) {
    out += " warp=" + WarpFamilyName(fit.warp->family());
    for (double p : fit.warp->Parameters()) out += " " + Format(p);
  }
  out += " nlml=" + Format(fit.nlml);
  return out;
}

}  // namespace

Dataset PrepareDataset(const ExperimentConfig& config, int profile,
                       uint64_t seed) {
  switch (config.source) {
    case SourceType::kSimulation: {
      SimulationConfig sim = config.simulation;
      sim.noise = profile > 0 ? MotionNoise::Profile(profile) : MotionNoise{};
      sim.seed = seed;
      return FromSimulation(Simulate(sim), config.resolution,
                            "Q" + std::to_string(profile));
    }
    case SourceType::kSimLog:
      return FromSimulation(ReadSimulationLog(config.simlog_path),
                            config.resolution, "log");
    case SourceType::kCarmen:
      return FromCarmen(config);
  }
  throw Error(ErrorCode::kInvalidInput, "unknown data source");
}

TrainingSet LocalTraining(const ExperimentConfig& config, const Scan& scan,
                          uint64_t seed, int step) {
  TrainingSet train = ScanToTraining(scan, config.free_spacing);
  train.noise_variance = config.noise_variance;
  if (config.label_noise_std > 0.0) {
    std::mt19937_64 rng(DeriveSeed(seed, static_cast<uint64_t>(step), 0x1abe1));
    std::normal_distribution<double> normal(0.0, config.label_noise_std);
    for (Eigen::Index i = 0; i < train.labels.size(); ++i) {
      train.labels(i) += normal(rng);
    }
  }
  return train;
}

LearnedModels LearnModels(const ExperimentConfig& config, const Dataset& data,
                          uint64_t seed) {
  LearnedModels models;
  if (data.scans.empty()) {
    models.gpom_error = models.wgpom_error = "no scans to learn from";
    return models;
  }
  const TrainingSet train = LocalTraining(config, data.scans[0].scan, seed, 0);
  HyperparameterOptions options;
  options.budget = config.hyperparameter_budget;
  options.optimize_noise = config.optimize_noise;
  for (ModelKind kind : {ModelKind::kGpom, ModelKind::kWgpom}) {
    if (!UsesModel(config, kind)) continue;
    const ModelConfig& model = ModelFor(config, kind);
    auto& slot = kind == ModelKind::kGpom ? models.gpom : models.wgpom;
    auto& error = kind == ModelKind::kGpom ? models.gpom_error : models.wgpom_error;
    try {
      slot = OptimizeHyperparameters(train, model.kernel, model.warp, options);
    } catch (const Error& e) {
      error = std::string("hyperparameters: ") + e.what();
    }
  }
  return models;
}

double MapAuc(const std::vector<double>& probabilities,
              const ReferenceGrid& reference) {
  if (static_cast<int>(probabilities.size()) != reference.size()) {
    throw Error(ErrorCode::kInvalidInput, "map and reference sizes differ");
  }
  std::vector<double> scores;
  std::vector<uint8_t> positives;
  for (int i = 0; i < reference.size(); ++i) {
    if (reference.labels[i] == ReferenceLabel::kUnknown) continue;
    scores.push_back(probabilities[i]);
    positives.push_back(reference.labels[i] == ReferenceLabel::kOccupied);
  }
  return RocAuc(scores, positives);
}

ExperimentResult RunExperiment(const ExperimentConfig& config, int profile,
                               uint64_t seed, const LearnedModels* models) {
  config.Validate();
  ExperimentResult result;
  result.data = PrepareDataset(config, profile, seed);
  result.models = models ? *models : LearnModels(config, result.data, seed);
  const Dataset& data = result.data;
  const int steps = static_cast<int>(data.scans.size());

  std::vector<TrainingSet> trains;
  for (int t = 0; t < steps; ++t) {
    trains.push_back(LocalTraining(config, data.scans[t].scan, seed, t));
  }
  const GaussHermiteRule warp_rule(config.warp_quadrature_order);

  for (size_t m = 0; m < config.methods.size(); ++m) {
    const MethodSpec& method = config.methods[m];
    const bool warped = method.model == ModelKind::kWgpom;
    const std::optional<HyperparameterFit>& fit =
        warped ? result.models.wgpom : result.models.gpom;
    const double prior =
        fit ? fit->kernel.signal_variance() + fit->noise_variance : 1.0;
    // Observation-space mean of the latent prior N(0, sf2) under the warp.
    const double prior_mean =
        fit && fit->warp
            ? WarpPrediction({0.0, fit->kernel.signal_variance()}, *fit->warp,
                             warp_rule)
                  .mean
            : 0.0;
    OccupancyMap map(data.reference.origin, data.reference.resolution,
                     data.reference.width, data.reference.height, prior,
                     prior_mean);
    EvalReport report;
    report.label = method.Label();
    report.profile = data.profile_label;
    report.seed = seed;
    report.auc = report.auc_all = kNaN;
    const Clock::time_point start = Clock::now();
    int t = 0;
    try {
      if (!fit && steps > 0) {
        throw Error(ErrorCode::kOptimizationFailed,
                    warped ? result.models.wgpom_error : result.models.gpom_error);
      }
      for (; t < steps; ++t) {
        const Clock::time_point step_start = Clock::now();
        const PoseBelief& pose = data.scans[t].pose;
        const TrainingSet& train = trains[t];
        report.training_points += static_cast<long>(train.inputs.size());
        const std::vector<int> cells =
            QueryCells(map, pose.mean, train, config.query_margin);
        if (!cells.empty() && !train.inputs.empty()) {
          switch (method.uncertainty) {
            case UncertaintyMethod::kNone:
              report.fusion += BcmFuse(
                  &map, PlaceSubMap(LocalSubMap(*fit, train, map, cells,
                                                pose.mean, warp_rule),
                                    pose.mean));
              break;
            case UncertaintyMethod::kExpectedSubmap:
              report.fusion += ExpectedSubmapFuse(
                  &map,
                  LocalSubMap(*fit, train, map, cells, pose.mean, warp_rule),
                  pose, config.esm_samples,
                  DeriveSeed(seed, static_cast<uint64_t>(t), 0xe5a));
              break;
            case UncertaintyMethod::kExpectedKernel: {
              ExpectationMethod ek = config.expected_kernel;
              ek.seed = DeriveSeed(ek.seed, seed, static_cast<uint64_t>(t));
              report.fusion += BcmFuse(
                  &map, ExpectedKernelSubMap(*fit, train, map, cells, pose, ek,
                                             warp_rule, &report.psd_clips));
              break;
            }
          }
        }
        report.step_seconds.push_back(SecondsSince(step_start));
        ++report.steps;
      }
    } catch (const std::exception& e) {
      report.error = "step " + std::to_string(t) + ": " + e.what();
    }
    if (report.error.empty()) {
      const std::vector<double> probabilities = SquashMap(map, config.squash);
      const ReferenceGrid& primary =
          config.auc_observed_only ? data.reference : data.reference_all;
      try {
        report.auc = MapAuc(probabilities, primary);
      } catch (const Error& e) {
        report.error = e.what();
      }
      try {
        report.auc_all = MapAuc(probabilities, data.reference_all);
      } catch (const Error&) {
      }
    }
    report.runtime_s = SecondsSince(start);
    result.reports.push_back(std::move(report));
    result.maps.push_back(std::move(map));
  }
  return result;
}

std::vector<ExperimentResult> RunSweep(const ExperimentConfig& config) {
  config.Validate();
  const std::vector<int> profiles =
      config.source == SourceType::kSimulation ? config.profiles
                                               : std::vector<int>{0};
  std::map<uint64_t, LearnedModels> learned;
  for (uint64_t seed : config.seeds) {
    try {
      learned[seed] =
          LearnModels(config, PrepareDataset(config, profiles[0], seed), seed);
    } catch (const Error& e) {
      learned[seed].gpom_error = learned[seed].wgpom_error = e.what();
    }
  }
  std::vector<ExperimentResult> results;
  for (int profile : profiles) {
    for (uint64_t seed : config.seeds) {
      try {
        results.push_back(RunExperiment(config, profile, seed, &learned[seed]));
      } catch (const Error& e) {
        ExperimentResult failed;
        failed.models = learned[seed];
        for (const MethodSpec& m : config.methods) {
          EvalReport report;
          report.label = m.Label();
          report.profile = config.source == SourceType::kSimulation
                               ? "Q" + std::to_string(profile)
                               : "track";
          report.seed = seed;
          report.auc = report.auc_all = kNaN;
          report.error = e.what();
          failed.reports.push_back(std::move(report));
        }
        results.push_back(std::move(failed));
      }
    }
  }
  return results;
}

std::string ReportCsv(const std::vector<ExperimentResult>& results) {
  std::string out =
      "method,profile,seed,auc,auc_all,steps,training_points,fused_cells,"
      "dropped_points,degenerate_fusions,psd_clips,error\n";
  for (const ExperimentResult& result : results) {
    for (const EvalReport& r : result.reports) {
      std::string error = r.error;
      for (char& c : error) {
        if (c == ',' || c == '\n') c = ';';
      }
      out += r.label + "," + r.profile + "," + std::to_string(r.seed) + "," +
             Format(r.auc) + "," + Format(r.auc_all) + "," +
             std::to_string(r.steps) + "," + std::to_string(r.training_points) +
             "," + std::to_string(r.fusion.fused_cells) + "," +
             std::to_string(r.fusion.dropped_points) + "," +
             std::to_string(r.fusion.degenerate_fusions) + "," +
             std::to_string(r.psd_clips) + "," + error + "\n";
    }
  }
  return out;
}

std::string TimingCsv(const std::vector<ExperimentResult>& results) {
  std::string out = "method,profile,seed,step,seconds\n";
  for (const ExperimentResult& result : results) {
    for (const EvalReport& r : result.reports) {
      const std::string key =
          r.label + "," + r.profile + "," + std::to_string(r.seed) + ",";
      for (size_t t = 0; t < r.step_seconds.size(); ++t) {
        out += key + std::to_string(t) + "," + Format(r.step_seconds[t]) + "\n";
      }
      out += key + "total," + Format(r.runtime_s) + "\n";
    }
  }
  return out;
}

std::string AucVersusProfileCsv(const std::vector<ExperimentResult>& results) {
  struct Accumulator {
    std::vector<double> values;
  };
  // Keeps first-seen order of (profile, method).
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, Accumulator> table;
  for (const ExperimentResult& result : results) {
    for (const EvalReport& r : result.reports) {
      const auto key = std::make_pair(r.profile, r.label);
      if (!table.count(key)) keys.push_back(key);
      Accumulator& acc = table[key];
      if (!std::isnan(r.auc)) acc.values.push_back(r.auc);
    }
  }
  std::string out = "profile,method,mean_auc,std_auc,runs\n";
  for (const auto& key : keys) {
    const std::vector<double>& v = table[key].values;
    double mean = kNaN;
    double sd = kNaN;
    if (!v.empty()) {
      mean = 0.0;
      for (double x : v) mean += x;
      mean /= v.size();
      sd = 0.0;
      for (double x : v) sd += (x - mean) * (x - mean);
      sd = v.size() > 1 ? std::sqrt(sd / (v.size() - 1)) : 0.0;
    }
    out += key.first + "," + key.second + "," + Format(mean) + "," + Format(sd) +
           "," + std::to_string(v.size()) + "\n";
  }
  return out;
}

std::string ReportText(const ExperimentConfig& config,
                       const std::vector<ExperimentResult>& results) {
  std::string out = "wgpom evaluation report\n";
  out += std::string("AUC domain: ") +
         (config.auc_observed_only ? "reference-observed cells" : "all cells") +
         "; auc_all uses every cell with ground truth.\n";
  out += "Runtimes are in timing.csv.\n\n";
  char line[256];
  std::snprintf(line, sizeof(line), "%-6s %-7s %-6s %-10s %-10s %-6s %s\n",
                "method", "profile", "seed", "auc", "auc_all", "steps",
                "fused/dropped/degenerate/psd_clips");
  out += line;
  for (const ExperimentResult& result : results) {
    for (const EvalReport& r : result.reports) {
      std::snprintf(line, sizeof(line), "%-6s %-7s %-6llu %-10s %-10s %-6d %d/%d/%d/%d",
                    r.label.c_str(), r.profile.c_str(),
                    static_cast<unsigned long long>(r.seed), Format(r.auc).c_str(),
                    Format(r.auc_all).c_str(), r.steps, r.fusion.fused_cells,
                    r.fusion.dropped_points, r.fusion.degenerate_fusions,
                    r.psd_clips);
      out += line;
      if (!r.error.empty()) out += "  ERROR: " + r.error;
      out += "\n";
    }
  }
  out += "\nhyperparameters (learned on the first scan)\n";
  std::map<uint64_t, const LearnedModels*> by_seed;
  for (const ExperimentResult& result : results) {
    if (!result.reports.empty()) by_seed.emplace(result.reports[0].seed, &result.models);
  }
  for (const auto& [seed, models] : by_seed) {
    if (models->gpom) {
      out += "  seed " + std::to_string(seed) + " GPOM: " + ModelSummary(*models->gpom) + "\n";
    }
    if (models->wgpom) {
      out += "  seed " + std::to_string(seed) + " WGPOM: " + ModelSummary(*models->wgpom) + "\n";
    }
  }
  return out;
}

void WriteResults(const ExperimentConfig& config,
                  const std::vector<ExperimentResult>& results) {
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create '" + config.output_dir +
                                    "': " + ec.message());
  }
  const std::filesystem::path dir(config.output_dir);
  WriteTextFile((dir / "report.csv").string(), ReportCsv(results));
  WriteTextFile((dir / "report.txt").string(), ReportText(config, results));
  WriteTextFile((dir / "timing.csv").string(), TimingCsv(results));
  WriteTextFile((dir / "auc_vs_q.csv").string(), AucVersusProfileCsv(results));
  WriteTextFile((dir / "config.json").string(), ConfigToJson(config));
  if (!config.export_maps) return;
  for (const ExperimentResult& result : results) {
    if (result.maps.size() != result.reports.size()) continue;
    for (size_t i = 0; i < result.maps.size(); ++i) {
      const EvalReport& r = result.reports[i];
      const std::string stem = (dir / ("map_" + r.label + "_" + r.profile + "_s" +
                                       std::to_string(r.seed)))
                                   .string();
      const OccupancyMap& map = result.maps[i];
      WritePgm(stem + ".pgm", SquashMap(map, config.squash), map.width(),
               map.height());
      WriteMapCsv(stem + ".csv", map, config.squash);
    }
    if (result.reports.empty()) continue;
    const std::string suffix =
        result.reports[0].profile + "_s" + std::to_string(result.reports[0].seed);
    WriteReferencePgm((dir / ("reference_" + suffix + ".pgm")).string(),
                      result.data.reference);
    WriteReferenceCsv((dir / ("reference_" + suffix + ".csv")).string(),
                      result.data.reference);
    WriteReferenceCsv((dir / ("reference_all_" + suffix + ".csv")).string(),
                      result.data.reference_all);
  }
}

}  // namespace wgpom
