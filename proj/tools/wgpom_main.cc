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


// Command-line front end: simulate, build, sweep, eval, export, demo and
// config.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wgpom/config.h"
#include "wgpom/experiment.h"
#include "wgpom/map_io.h"
#include "wgpom/sim_log.h"
#include "wgpom/simulator.h"
#include "wgpom/toy_regression.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

// Flags shared by every verb that runs the mapping pipeline.
struct PipelineFlags {
  std::string config_path;
  std::string output_dir;
  std::vector<std::string> methods;
  std::vector<int> profiles;
  std::vector<uint64_t> seeds;
  double resolution = 0.0;
  int budget = 0;
  std::string squash;
  bool no_maps = false;

  void Register(CLI::App* app) {
    app->add_option("-c,--config", config_path, "JSON configuration file");
    app->add_option("-o,--out", output_dir, "Output directory");
    app->add_option("--methods", methods, "Methods (GPOM GEK GESM WGPOM WEK WESM)");
    app->add_option("--profiles", profiles, "Motion-noise profiles (0-5)");
    app->add_option("--seeds", seeds, "Random seeds");
    app->add_option("--resolution", resolution, "Cell size [m]");
    app->add_option("--budget", budget, "Hyperparameter evaluations");
    app->add_option("--squash", squash, "probit or logistic");
    app->add_flag("--no-maps", no_maps, "Skip map and reference exports");
  }

  wgpom::ExperimentConfig Resolve() const {
    wgpom::ExperimentConfig config = config_path.empty()
                                         ? wgpom::DefaultConfig()
                                         : wgpom::LoadConfig(config_path);
    if (!output_dir.empty()) config.output_dir = output_dir;
    if (!methods.empty()) {
      config.methods.clear();
      for (const std::string& m : methods) {
        config.methods.push_back(wgpom::MethodSpec::Parse(m));
      }
    }
    if (!profiles.empty()) config.profiles = profiles;
    if (!seeds.empty()) config.seeds = seeds;
    if (resolution > 0.0) config.resolution = resolution;
    if (budget > 0) config.hyperparameter_budget = budget;
    if (!squash.empty()) config.squash = wgpom::ParseSquashFunction(squash);
    if (no_maps) config.export_maps = false;
    config.Validate();
    return config;
  }
};

void PrintSummary(const std::vector<wgpom::ExperimentResult>& results) {
  for (const wgpom::ExperimentResult& result : results) {
    for (const wgpom::EvalReport& r : result.reports) {
      std::printf("%-6s %-6s seed %-4llu auc %.4f  %.2fs%s%s\n", r.label.c_str(),
                  r.profile.c_str(), static_cast<unsigned long long>(r.seed),
                  r.auc, r.runtime_s, r.error.empty() ? "" : "  ",
                  r.error.c_str());
    }
  }
}

int Fail(const wgpom::Error& e) {
  std::cerr << "error [" << wgpom::ErrorCodeName(e.code()) << "]: " << e.what()
            << "\n";
  return e.code() == wgpom::ErrorCode::kConfig ? kExitConfig : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Warped Gaussian-process occupancy mapping"};
  app.require_subcommand(1);

  // simulate
  CLI::App* simulate = app.add_subcommand("simulate", "Write a simulated log");
  wgpom::SimulationConfig sim;
  int sim_profile = 3;
  std::string sim_out = "sim.log";
  std::string pose_mode = "exact_mean";
  simulate->add_option("--world", sim.world, "star, box or empty");
  simulate->add_option("--steps", sim.steps, "Number of poses");
  simulate->add_option("--radius", sim.loop_radius, "Loop radius [m]");
  simulate->add_option("--beams", sim.scan.beams, "Beams per scan");
  simulate->add_option("--max-range", sim.scan.max_range, "Sensor range [m]");
  simulate->add_option("--profile", sim_profile, "Motion-noise profile (0-5)")
      ->check(CLI::Range(0, wgpom::MotionNoise::kProfileCount));
  simulate->add_option("--pose-mode", pose_mode, "exact_mean or dead_reckoning");
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("-o,--out", sim_out, "Log path");

  // build and sweep
  CLI::App* build = app.add_subcommand("build", "Build maps for one profile and seed");
  PipelineFlags build_flags;
  build_flags.Register(build);
  CLI::App* sweep = app.add_subcommand("sweep", "Run every profile and seed");
  PipelineFlags sweep_flags;
  sweep_flags.Register(sweep);

  // eval
  CLI::App* eval = app.add_subcommand("eval", "AUC of a map against a reference");
  std::string eval_map;
  std::string eval_reference;
  std::string eval_squash = "probit";
  eval->add_option("map", eval_map, "Map CSV")->required();
  eval->add_option("reference", eval_reference, "Reference CSV")->required();
  eval->add_option("--squash", eval_squash, "probit or logistic");

  // export
  CLI::App* export_cmd = app.add_subcommand("export", "Render a map CSV as PGM");
  std::string export_map;
  std::string export_out;
  std::string export_squash = "probit";
  export_cmd->add_option("map", export_map, "Map CSV")->required();
  export_cmd->add_option("-o,--out", export_out, "PGM path")->required();
  export_cmd->add_option("--squash", export_squash, "probit or logistic");

  // demo
  CLI::App* demo = app.add_subcommand("demo", "One-dimensional regression demos");
  std::string demo_name;
  uint64_t demo_seed = 1;
  std::string demo_out;
  demo->add_option("name", demo_name, "uncertain-input or warp")
      ->required()
      ->check(CLI::IsMember({"uncertain-input", "warp"}));
  demo->add_option("--seed", demo_seed, "Random seed");
  demo->add_option("-o,--out", demo_out, "CSV path (stdout when omitted)");

  // config
  CLI::App* config_cmd = app.add_subcommand("config", "Print the default configuration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate) {
      if (pose_mode == "exact_mean") {
        sim.pose_mode = wgpom::PoseMode::kExactMean;
      } else if (pose_mode == "dead_reckoning") {
        sim.pose_mode = wgpom::PoseMode::kDeadReckoning;
      } else {
        throw wgpom::Error(wgpom::ErrorCode::kConfig,
                           "unknown pose mode '" + pose_mode + "'");
      }
      sim.noise = sim_profile == 0 ? wgpom::MotionNoise{}
                                   : wgpom::MotionNoise::Profile(sim_profile);
      const wgpom::SimulationLog log = wgpom::Simulate(sim);
      wgpom::WriteSimulationLog(sim_out, log);
      std::printf("wrote %zu steps to %s\n", log.steps.size(), sim_out.c_str());
    } else if (*build || *sweep) {
      wgpom::ExperimentConfig config =
          (*build ? build_flags : sweep_flags).Resolve();
      if (*build) {
        config.profiles.resize(1);
        config.seeds.resize(1);
      }
      const std::vector<wgpom::ExperimentResult> results = wgpom::RunSweep(config);
      wgpom::WriteResults(config, results);
      PrintSummary(results);
      std::printf("results in %s\n", config.output_dir.c_str());
    } else if (*eval) {
      const wgpom::OccupancyMap map = wgpom::ReadMapCsv(eval_map);
      const wgpom::ReferenceGrid reference = wgpom::ReadReferenceCsv(eval_reference);
      if (!wgpom::SameLayout(map, reference)) {
        throw wgpom::Error(wgpom::ErrorCode::kInvalidInput,
                           "map and reference grids differ");
      }
      const double auc = wgpom::MapAuc(
          wgpom::SquashMap(map, wgpom::ParseSquashFunction(eval_squash)), reference);
      std::printf("auc %.6f\n", auc);
    } else if (*export_cmd) {
      const wgpom::OccupancyMap map = wgpom::ReadMapCsv(export_map);
      wgpom::WritePgm(export_out,
                      wgpom::SquashMap(map, wgpom::ParseSquashFunction(export_squash)),
                      map.width(), map.height());
      std::printf("wrote %s\n", export_out.c_str());
    } else if (*demo) {
      std::string csv;
      if (demo_name == "uncertain-input") {
        wgpom::UncertainInputDemoOptions options;
        options.seed = demo_seed;
        const wgpom::UncertainInputDemo result = wgpom::RunUncertainInputDemo(options);
        std::fprintf(stderr, "2-sigma coverage: gp %.3f, expected kernel %.3f\n",
                     result.GpCoverage(), result.GpekCoverage());
        csv = result.ToCsv();
      } else {
        wgpom::WarpDemoOptions options;
        options.seed = demo_seed;
        const wgpom::WarpDemo result = wgpom::RunWarpDemo(options);
        for (const wgpom::WarpDemoCurve& c : result.curves) {
          std::fprintf(stderr, "%-10s rmse %.4f  band %.4f  nlml %.3f\n",
                       c.name.c_str(), c.rmse, c.mean_band_width, c.fit.nlml);
        }
        csv = result.ToCsv();
      }
      if (demo_out.empty()) {
        std::cout << csv;
      } else {
        wgpom::WriteTextFile(demo_out, csv);
      }
    } else if (*config_cmd) {
      std::cout << wgpom::ConfigToJson(wgpom::DefaultConfig()) << "\n";
    }
  } catch (const wgpom::Error& e) {
    return Fail(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
