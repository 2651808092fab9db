#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rndop/experiments.hpp"

namespace rndop {

// Mirrors the placement problem, the Monte-Carlo campaign and the output
// paths. Parsed from config JSON (schema v1, docs/config_schema_v1.json);
// unknown keys are rejected.
struct RunConfig {
  std::string preset = "paper";
  std::uint64_t seed = 1;
  Mode mode = Mode::three_d;
  Method method = Method::tr;
  std::string out_dir = "out";
  int jobs = 0;

  BoxConstraint box{{-30.0, -20.0, -10.0}, {30.0, 20.0, 10.0}};
  double min_separation = 4.472;

  int initial_anchors = 4;
  int additional = 20;
  std::optional<std::vector<Vec3>> initial_coordinates;

  SolverSettings solver{};
  PerturbationParams perturb{};

  std::size_t mc_init = 100000;
  std::size_t mc_algo = 500;
  std::size_t targets = 10000;
  double coverage_radius = 200.0;
  RangeModel range_model{1.0, 6.0};
  std::vector<Method> mc_methods{Method::rnd, Method::tr, Method::eig};
  std::vector<int> timing_sweep{5, 10, 15, 20};

  int grid_theta = 64;
  int grid_phi = 33;
  double range_multiplier = 100.0;  // dop_at_rt evaluated at this multiple of the threshold
};

// presets: "paper" (full Sec.-VII scale) and "desk" (minutes on a laptop:
// mc_algo = 50, targets = 1000, additional = 20)
void apply_preset(RunConfig& config, const std::string& name);

RunConfig parse_config_json(const std::string& text);
RunConfig load_config_file(const std::string& path);

Mode parse_mode(const std::string& name);
Method parse_method(const std::string& name);

McCampaign campaign_from_config(const RunConfig& config);
PlacementProblem problem_from_config(const RunConfig& config);

}  // namespace rndop
