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


#include "wgpom/config.h"

#include <filesystem>
#include <set>

#include "json.hpp"
#include "wgpom/map_io.h"

namespace wgpom {
namespace {

using Json = nlohmann::json;

Error ConfigError(const std::string& message) {
  return Error(ErrorCode::kConfig, message);
}

void CheckKeys(const Json& object, const std::string& where,
               std::initializer_list<const char*> allowed) {
  if (!object.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : object.items()) {
    if (!keys.count(item.key())) {
      throw ConfigError("unknown field '" + where + "." + item.key() + "'");
    }
  }
}

template <typename T>
void Read(const Json& object, const char* key, const std::string& where, T* out) {
  if (!object.contains(key)) return;
  try {
    *out = object.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError("field '" + where + "." + key + "': " + e.what());
  }
}

KernelSpec ParseKernel(const Json& j, const std::string& where) {
  CheckKeys(j, where, {"family", "signal_variance", "length_scales", "support_radius"});
  std::string family = "se";
  double signal_variance = 1.0;
  std::vector<double> length_scales = {1.0};
  double support_radius = 2.0;
  Read(j, "family", where, &family);
  Read(j, "signal_variance", where, &signal_variance);
  Read(j, "length_scales", where, &length_scales);
  Read(j, "support_radius", where, &support_radius);
  try {
    switch (ParseKernelFamily(family)) {
      case KernelFamily::kSquaredExponential:
        return KernelSpec::SquaredExponential(signal_variance, length_scales.at(0));
      case KernelFamily::kSquaredExponentialArd:
        if (length_scales.size() == 1) length_scales.push_back(length_scales[0]);
        return KernelSpec::SquaredExponentialArd(signal_variance, length_scales);
      case KernelFamily::kMatern52:
        return KernelSpec::Matern52(signal_variance, length_scales.at(0));
      case KernelFamily::kSparseCompact:
        return KernelSpec::SparseCompact(signal_variance, support_radius);
    }
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  } catch (const std::out_of_range&) {
    throw ConfigError(where + ": length_scales is empty");
  }
  throw ConfigError(where + ": bad kernel");
}

Json KernelToJson(const KernelSpec& k) {
  Json j;
  j["family"] = KernelFamilyName(k.family());
  j["signal_variance"] = k.signal_variance();
  if (k.family() == KernelFamily::kSparseCompact) {
    j["support_radius"] = k.support_radius();
  } else {
    j["length_scales"] = k.length_scales();
  }
  return j;
}

std::optional<WarpSpec> ParseWarp(const Json& j, const std::string& where) {
  CheckKeys(j, where, {"family", "steps", "degree", "a", "b", "c"});
  std::string family = "identity";
  Read(j, "family", where, &family);
  try {
    switch (ParseWarpFamily(family)) {
      case WarpFamily::kIdentity:
        return WarpSpec::Identity();
      case WarpFamily::kTanhSum: {
        if (j.contains("a") || j.contains("b") || j.contains("c")) {
          std::vector<double> a, b, c;
          Read(j, "a", where, &a);
          Read(j, "b", where, &b);
          Read(j, "c", where, &c);
          return WarpSpec::TanhSum(a, b, c);
        }
        int steps = 2;
        Read(j, "steps", where, &steps);
        if (steps < 1) throw ConfigError(where + ": steps must be >= 1");
        return InitialTanhWarp(steps);
      }
      case WarpFamily::kPolynomial: {
        if (j.contains("c")) {
          std::vector<double> c;
          Read(j, "c", where, &c);
          return WarpSpec::Polynomial(c);
        }
        int degree = 5;
        Read(j, "degree", where, &degree);
        if (degree < 2) throw ConfigError(where + ": degree must be >= 2");
        return InitialPolynomialWarp(degree);
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    throw ConfigError(where + ": " + e.what());
  }
  return std::nullopt;
}

Json WarpToJson(const WarpSpec& w) {
  Json j;
  j["family"] = WarpFamilyName(w.family());
  if (w.family() == WarpFamily::kTanhSum) {
    j["a"] = w.a();
    j["b"] = w.b();
    j["c"] = w.c();
  } else if (w.family() == WarpFamily::kPolynomial) {
    j["c"] = w.c();
  }
  return j;
}

ModelConfig ParseModel(const Json& j, const std::string& where,
                       const ModelConfig& defaults) {
  CheckKeys(j, where, {"kernel", "warp"});
  ModelConfig model = defaults;
  if (j.contains("kernel")) model.kernel = ParseKernel(j["kernel"], where + ".kernel");
  if (j.contains("warp")) {
    model.warp = j["warp"].is_null() ? std::nullopt
                                     : ParseWarp(j["warp"], where + ".warp");
    if (model.warp && model.warp->family() == WarpFamily::kIdentity) {
      model.warp = std::nullopt;
    }
  }
  return model;
}

}  // namespace

std::string MethodSpec::Label() const {
  const bool warped = model == ModelKind::kWgpom;
  switch (uncertainty) {
    case UncertaintyMethod::kNone: return warped ? "WGPOM" : "GPOM";
    case UncertaintyMethod::kExpectedKernel: return warped ? "WEK" : "GEK";
    case UncertaintyMethod::kExpectedSubmap: return warped ? "WESM" : "GESM";
  }
  return "?";
}

MethodSpec MethodSpec::Parse(std::string_view label) {
  for (const MethodSpec& m : AllMethods()) {
    if (m.Label() == label) return m;
  }
  throw ConfigError("unknown method '" + std::string(label) +
                    "' (expected GPOM, GEK, GESM, WGPOM, WEK or WESM)");
}

std::vector<MethodSpec> AllMethods() {
  std::vector<MethodSpec> methods;
  for (ModelKind model : {ModelKind::kGpom, ModelKind::kWgpom}) {
    for (UncertaintyMethod u :
         {UncertaintyMethod::kNone, UncertaintyMethod::kExpectedKernel,
          UncertaintyMethod::kExpectedSubmap}) {
      methods.push_back({model, u});
    }
  }
  return methods;
}

void ExperimentConfig::Validate() const {
  if (!(resolution > 0.0)) throw ConfigError("map resolution must be positive");
  if (!(query_margin >= 0.0)) throw ConfigError("query margin must be >= 0");
  if (methods.empty()) throw ConfigError("no methods selected");
  if (esm_samples < 1) throw ConfigError("esm samples must be >= 1");
  if (warp_quadrature_order < 1 || warp_quadrature_order > 200) {
    throw ConfigError("warp quadrature order must be in [1, 200]");
  }
  if (expected_kernel.kind == ExpectationMethod::Kind::kGaussHermite &&
      (expected_kernel.order < 1 || expected_kernel.order > 200)) {
    throw ConfigError("expected-kernel order must be in [1, 200]");
  }
  if (expected_kernel.kind == ExpectationMethod::Kind::kMonteCarlo &&
      expected_kernel.samples < 1) {
    throw ConfigError("expected-kernel samples must be >= 1");
  }
  if (!(free_spacing > 0.0)) throw ConfigError("free spacing must be positive");
  if (!(noise_variance > 0.0)) throw ConfigError("noise variance must be positive");
  if (!(label_noise_std >= 0.0)) throw ConfigError("label noise must be >= 0");
  if (hyperparameter_budget < 1) throw ConfigError("budget must be >= 1");
  if (seeds.empty()) throw ConfigError("no seeds");
  if (output_dir.empty()) throw ConfigError("output directory is empty");
  auto require_file = [](const std::string& path, const char* what) {
    if (path.empty()) throw ConfigError(std::string(what) + " path is empty");
    if (!std::filesystem::is_regular_file(path)) {
      throw ConfigError(std::string(what) + " '" + path + "' does not exist");
    }
  };
  switch (source) {
    case SourceType::kSimulation:
      if (!simlog_path.empty() || !carmen_path.empty()) {
        throw ConfigError("exactly one data source must be configured");
      }
      if (simulation.steps < 0) throw ConfigError("steps must be >= 0");
      if (simulation.scan.beams < 1) throw ConfigError("beams must be >= 1");
      if (!(simulation.scan.max_range > 0.0)) {
        throw ConfigError("max range must be positive");
      }
      if (profiles.empty()) throw ConfigError("no noise profiles");
      for (int p : profiles) {
        if (p < 0 || p > MotionNoise::kProfileCount) {
          throw ConfigError("noise profile must be 0..5 (0 = noise-free)");
        }
      }
      try {
        BuildWorld(simulation.world);
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
      break;
    case SourceType::kSimLog:
      if (!carmen_path.empty()) {
        throw ConfigError("exactly one data source must be configured");
      }
      require_file(simlog_path, "simulation log");
      break;
    case SourceType::kCarmen:
      if (!simlog_path.empty()) {
        throw ConfigError("exactly one data source must be configured");
      }
      require_file(carmen_path, "CARMEN log");
      require_file(pose_track_path, "pose track");
      if (beam_stride < 1) throw ConfigError("beam stride must be >= 1");
      if (!(carmen_max_range > 0.0)) throw ConfigError("max range must be positive");
      break;
  }
}

ExperimentConfig DefaultConfig() {
  ExperimentConfig config;
  config.gpom.kernel = KernelSpec::Matern52(1.0, 1.0);
  config.wgpom.kernel = KernelSpec::SquaredExponentialArd(1.0, {1.0, 1.0});
  config.wgpom.warp = InitialTanhWarp(2);
  config.methods = AllMethods();
  return config;
}

ExperimentConfig ParseConfig(std::string_view json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  CheckKeys(root, "config",
            {"schema_version", "source", "map", "models", "methods",
             "expected_kernel", "esm", "training", "sweep", "evaluation",
             "output"});
  int version = 0;
  Read(root, "schema_version", "config", &version);
  if (version != kConfigSchemaVersion) {
    throw ConfigError("schema_version must be " +
                      std::to_string(kConfigSchemaVersion));
  }
  ExperimentConfig config = DefaultConfig();

  if (root.contains("source")) {
    const Json& s = root["source"];
    CheckKeys(s, "source",
              {"type", "world", "steps", "loop_radius", "beams",
               "field_of_view_deg", "max_range", "pose_mode", "path", "log",
               "pose_track", "beam_stride"});
    std::string type = "simulation";
    Read(s, "type", "source", &type);
    if (type == "simulation") {
      config.source = SourceType::kSimulation;
      SimulationConfig& sim = config.simulation;
      Read(s, "world", "source", &sim.world);
      Read(s, "steps", "source", &sim.steps);
      Read(s, "loop_radius", "source", &sim.loop_radius);
      Read(s, "beams", "source", &sim.scan.beams);
      Read(s, "max_range", "source", &sim.scan.max_range);
      if (s.contains("field_of_view_deg")) {
        double degrees = 360.0;
        Read(s, "field_of_view_deg", "source", &degrees);
        sim.scan.field_of_view = degrees * 3.14159265358979323846 / 180.0;
      }
      std::string mode = "exact_mean";
      Read(s, "pose_mode", "source", &mode);
      if (mode == "exact_mean") {
        sim.pose_mode = PoseMode::kExactMean;
      } else if (mode == "dead_reckoning") {
        sim.pose_mode = PoseMode::kDeadReckoning;
      } else {
        throw ConfigError("source.pose_mode must be exact_mean or dead_reckoning");
      }
    } else if (type == "simlog") {
      config.source = SourceType::kSimLog;
      Read(s, "path", "source", &config.simlog_path);
    } else if (type == "carmen") {
      config.source = SourceType::kCarmen;
      Read(s, "log", "source", &config.carmen_path);
      Read(s, "pose_track", "source", &config.pose_track_path);
      Read(s, "beam_stride", "source", &config.beam_stride);
      Read(s, "max_range", "source", &config.carmen_max_range);
    } else {
      throw ConfigError("source.type must be simulation, simlog or carmen");
    }
  }
  if (root.contains("map")) {
    const Json& m = root["map"];
    CheckKeys(m, "map", {"resolution", "query_margin", "squash"});
    Read(m, "resolution", "map", &config.resolution);
    Read(m, "query_margin", "map", &config.query_margin);
    std::string squash = SquashFunctionName(config.squash);
    Read(m, "squash", "map", &squash);
    try {
      config.squash = ParseSquashFunction(squash);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  if (root.contains("models")) {
    const Json& m = root["models"];
    CheckKeys(m, "models", {"gpom", "wgpom"});
    if (m.contains("gpom")) {
      config.gpom = ParseModel(m["gpom"], "models.gpom", config.gpom);
      config.gpom.warp = std::nullopt;
    }
    if (m.contains("wgpom")) {
      config.wgpom = ParseModel(m["wgpom"], "models.wgpom", config.wgpom);
    }
  }
  if (root.contains("methods")) {
    std::vector<std::string> labels;
    Read(root, "methods", "config", &labels);
    config.methods.clear();
    for (const std::string& label : labels) {
      config.methods.push_back(MethodSpec::Parse(label));
    }
  }
  if (root.contains("expected_kernel")) {
    const Json& e = root["expected_kernel"];
    CheckKeys(e, "expected_kernel",
              {"method", "order", "samples", "seed", "two_endpoint"});
    std::string method = "gauss_hermite";
    int order = 5;
    int samples = 100;
    uint64_t seed = 1;
    std::string two_endpoint = "summed";
    Read(e, "method", "expected_kernel", &method);
    Read(e, "order", "expected_kernel", &order);
    Read(e, "samples", "expected_kernel", &samples);
    Read(e, "seed", "expected_kernel", &seed);
    Read(e, "two_endpoint", "expected_kernel", &two_endpoint);
    TwoEndpointRule rule;
    if (two_endpoint == "summed") {
      rule = TwoEndpointRule::kSummedCovariance;
    } else if (two_endpoint == "product") {
      rule = TwoEndpointRule::kProduct;
    } else {
      throw ConfigError("expected_kernel.two_endpoint must be summed or product");
    }
    if (method == "gauss_hermite") {
      config.expected_kernel = ExpectationMethod::GaussHermite(order, rule);
    } else if (method == "monte_carlo") {
      config.expected_kernel = ExpectationMethod::MonteCarlo(samples, seed);
    } else {
      throw ConfigError("expected_kernel.method must be gauss_hermite or monte_carlo");
    }
  }
  if (root.contains("esm")) {
    CheckKeys(root["esm"], "esm", {"samples"});
    Read(root["esm"], "samples", "esm", &config.esm_samples);
  }
  if (root.contains("training")) {
    const Json& t = root["training"];
    CheckKeys(t, "training",
              {"free_spacing", "noise_variance", "label_noise_std",
               "hyperparameter_budget", "optimize_noise",
               "warp_quadrature_order"});
    Read(t, "free_spacing", "training", &config.free_spacing);
    Read(t, "noise_variance", "training", &config.noise_variance);
    Read(t, "label_noise_std", "training", &config.label_noise_std);
    Read(t, "hyperparameter_budget", "training", &config.hyperparameter_budget);
    Read(t, "optimize_noise", "training", &config.optimize_noise);
    Read(t, "warp_quadrature_order", "training", &config.warp_quadrature_order);
  }
  if (root.contains("sweep")) {
    CheckKeys(root["sweep"], "sweep", {"profiles", "seeds"});
    Read(root["sweep"], "profiles", "sweep", &config.profiles);
    Read(root["sweep"], "seeds", "sweep", &config.seeds);
  }
  if (root.contains("evaluation")) {
    CheckKeys(root["evaluation"], "evaluation", {"auc_domain"});
    std::string domain = "observed";
    Read(root["evaluation"], "auc_domain", "evaluation", &domain);
    if (domain != "observed" && domain != "all") {
      throw ConfigError("evaluation.auc_domain must be observed or all");
    }
    config.auc_observed_only = domain == "observed";
  }
  if (root.contains("output")) {
    CheckKeys(root["output"], "output", {"directory", "export_maps"});
    Read(root["output"], "directory", "output", &config.output_dir);
    Read(root["output"], "export_maps", "output", &config.export_maps);
  }
  return config;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::string text;
  try {
    text = ReadTextFile(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return ParseConfig(text);
}

std::string ConfigToJson(const ExperimentConfig& config) {
  Json root;
  root["schema_version"] = kConfigSchemaVersion;
  Json source;
  switch (config.source) {
    case SourceType::kSimulation: {
      const SimulationConfig& sim = config.simulation;
      source["type"] = "simulation";
      source["world"] = sim.world;
      source["steps"] = sim.steps;
      source["loop_radius"] = sim.loop_radius;
      source["beams"] = sim.scan.beams;
      source["field_of_view_deg"] =
          sim.scan.field_of_view * 180.0 / 3.14159265358979323846;
      source["max_range"] = sim.scan.max_range;
      source["pose_mode"] =
          sim.pose_mode == PoseMode::kExactMean ? "exact_mean" : "dead_reckoning";
      break;
    }
    case SourceType::kSimLog:
      source["type"] = "simlog";
      source["path"] = config.simlog_path;
      break;
    case SourceType::kCarmen:
      source["type"] = "carmen";
      source["log"] = config.carmen_path;
      source["pose_track"] = config.pose_track_path;
      source["beam_stride"] = config.beam_stride;
      source["max_range"] = config.carmen_max_range;
      break;
  }
  root["source"] = source;
  root["map"] = {{"resolution", config.resolution},
                 {"query_margin", config.query_margin},
                 {"squash", SquashFunctionName(config.squash)}};
  Json gpom;
  gpom["kernel"] = KernelToJson(config.gpom.kernel);
  Json wgpom;
  wgpom["kernel"] = KernelToJson(config.wgpom.kernel);
  wgpom["warp"] = config.wgpom.warp ? WarpToJson(*config.wgpom.warp)
                                    : Json({{"family", "identity"}});
  root["models"] = {{"gpom", gpom}, {"wgpom", wgpom}};
  Json methods = Json::array();
  for (const MethodSpec& m : config.methods) methods.push_back(m.Label());
  root["methods"] = methods;
  const ExpectationMethod& ek = config.expected_kernel;
  if (ek.kind == ExpectationMethod::Kind::kGaussHermite) {
    root["expected_kernel"] = {
        {"method", "gauss_hermite"},
        {"order", ek.order},
        {"two_endpoint", ek.two_endpoint == TwoEndpointRule::kProduct ? "product"
                                                                     : "summed"}};
  } else {
    root["expected_kernel"] = {
        {"method", "monte_carlo"}, {"samples", ek.samples}, {"seed", ek.seed}};
  }
  root["esm"] = {{"samples", config.esm_samples}};
  root["training"] = {{"free_spacing", config.free_spacing},
                      {"noise_variance", config.noise_variance},
                      {"label_noise_std", config.label_noise_std},
                      {"hyperparameter_budget", config.hyperparameter_budget},
                      {"optimize_noise", config.optimize_noise},
                      {"warp_quadrature_order", config.warp_quadrature_order}};
  root["sweep"] = {{"profiles", config.profiles}, {"seeds", config.seeds}};
  root["evaluation"] = {
      {"auc_domain", config.auc_observed_only ? "observed" : "all"}};
  root["output"] = {{"directory", config.output_dir},
                    {"export_maps", config.export_maps}};
  return root.dump(2) + "\n";
}

}  // namespace wgpom
