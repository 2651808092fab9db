#include "rndop/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rndop {

using nlohmann::json;

void apply_preset(RunConfig& config, const std::string& name) {
  if (name == "paper") {
    config.mc_init = 100000;
    config.mc_algo = 500;
    config.targets = 10000;
    config.additional = 20;
  } else if (name == "desk") {
    config.mc_algo = 50;
    config.targets = 1000;
    config.additional = 20;
  } else {
    throw Error(Errc::invalid_config, "unknown preset: " + name);
  }
  config.preset = name;
}

Mode parse_mode(const std::string& name) {
  if (name == "2d" || name == "2D") return Mode::two_d;
  if (name == "3d" || name == "3D") return Mode::three_d;
  throw Error(Errc::invalid_config, "mode must be 2d or 3d, got: " + name);
}

Method parse_method(const std::string& name) {
  if (name == "rnd") return Method::rnd;
  if (name == "tr") return Method::tr;
  if (name == "eig") return Method::eig;
  throw Error(Errc::invalid_config, "method must be rnd, tr or eig, got: " + name);
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!known.contains(key))
      throw Error(Errc::invalid_config, "unknown key \"" + key + "\" in " + where);
}

double require_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw Error(Errc::invalid_config, where + " must be a number");
  return v.get<double>();
}

Vec3 require_vec3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3)
    throw Error(Errc::invalid_config, where + " must be an array of 3 numbers");
  return {require_number(v[0], where), require_number(v[1], where), require_number(v[2], where)};
}

}  // namespace

RunConfig parse_config_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_config, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::invalid_config, "config root must be an object");

  reject_unknown(doc,
                 {"version", "preset", "seed", "mode", "method", "output_dir", "jobs", "box",
                  "min_separation", "placement", "solver", "perturbation", "campaign", "dopfield"},
                 "config root");

  RunConfig config;
  if (doc.contains("version") && doc["version"].get<int>() != 1)
    throw Error(Errc::invalid_config, "unsupported config version");
  if (doc.contains("preset")) apply_preset(config, doc["preset"].get<std::string>());
  if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("mode")) config.mode = parse_mode(doc["mode"].get<std::string>());
  if (doc.contains("method")) config.method = parse_method(doc["method"].get<std::string>());
  if (doc.contains("output_dir")) config.out_dir = doc["output_dir"].get<std::string>();
  if (doc.contains("jobs")) config.jobs = doc["jobs"].get<int>();

  if (doc.contains("box")) {
    const json& box = doc["box"];
    reject_unknown(box, {"lower", "upper"}, "box");
    if (box.contains("lower")) config.box.lower = require_vec3(box["lower"], "box.lower");
    if (box.contains("upper")) config.box.upper = require_vec3(box["upper"], "box.upper");
    for (int i = 0; i < 3; ++i)
      if (!(config.box.lower[i] < config.box.upper[i]))
        throw Error(Errc::invalid_config, "box.lower must be strictly below box.upper");
  }
  if (doc.contains("min_separation")) {
    config.min_separation = require_number(doc["min_separation"], "min_separation");
    if (config.min_separation < 0.0)
      throw Error(Errc::invalid_config, "min_separation must be >= 0");
  }

  if (doc.contains("placement")) {
    const json& p = doc["placement"];
    reject_unknown(p, {"initial_anchors", "additional_anchors", "initial_coordinates"},
                   "placement");
    if (p.contains("initial_anchors")) config.initial_anchors = p["initial_anchors"].get<int>();
    if (p.contains("additional_anchors")) config.additional = p["additional_anchors"].get<int>();
    if (p.contains("initial_coordinates")) {
      std::vector<Vec3> pts;
      for (const json& v : p["initial_coordinates"])
        pts.push_back(require_vec3(v, "placement.initial_coordinates"));
      config.initial_coordinates = std::move(pts);
    }
    if (config.initial_anchors < 3)
      throw Error(Errc::invalid_config, "placement.initial_anchors must be >= 3");
    if (config.additional < 0)
      throw Error(Errc::invalid_config, "placement.additional_anchors must be >= 0");
  }

  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    reject_unknown(
        s, {"multistart", "max_iterations", "step_tolerance", "constraint_tolerance",
            "penalty_growth"},
        "solver");
    if (s.contains("multistart")) config.solver.multistart = s["multistart"].get<int>();
    if (s.contains("max_iterations")) config.solver.max_iterations = s["max_iterations"].get<int>();
    if (s.contains("step_tolerance"))
      config.solver.step_tolerance = require_number(s["step_tolerance"], "solver.step_tolerance");
    if (s.contains("constraint_tolerance"))
      config.solver.constraint_tolerance =
          require_number(s["constraint_tolerance"], "solver.constraint_tolerance");
    if (s.contains("penalty_growth"))
      config.solver.penalty_growth = require_number(s["penalty_growth"], "solver.penalty_growth");
    if (config.solver.multistart < 1 || config.solver.max_iterations < 1 ||
        config.solver.step_tolerance <= 0.0 || config.solver.constraint_tolerance <= 0.0 ||
        config.solver.penalty_growth <= 1.0)
      throw Error(Errc::invalid_config, "solver settings out of range");
  }

  if (doc.contains("perturbation")) {
    const json& p = doc["perturbation"];
    reject_unknown(p, {"eta", "max_tries", "redundancy_cap"}, "perturbation");
    if (p.contains("eta")) config.perturb.eta = require_number(p["eta"], "perturbation.eta");
    if (p.contains("max_tries")) config.perturb.max_tries = p["max_tries"].get<int>();
    if (p.contains("redundancy_cap"))
      config.perturb.redundancy_cap = p["redundancy_cap"].get<int>();
    if (config.perturb.eta <= 1.0)
      throw Error(Errc::invalid_config, "perturbation.eta must be > 1");
    if (config.perturb.max_tries < 0 || config.perturb.redundancy_cap < 0)
      throw Error(Errc::invalid_config, "perturbation counts must be >= 0");
  }

  if (doc.contains("campaign")) {
    const json& c = doc["campaign"];
    reject_unknown(c,
                   {"mc_init", "mc_algo", "targets", "coverage_radius", "range_bias",
                    "range_sigma", "methods", "timing_sweep"},
                   "campaign");
    if (c.contains("mc_init")) config.mc_init = c["mc_init"].get<std::size_t>();
    if (c.contains("mc_algo")) config.mc_algo = c["mc_algo"].get<std::size_t>();
    if (c.contains("targets")) config.targets = c["targets"].get<std::size_t>();
    if (c.contains("coverage_radius"))
      config.coverage_radius = require_number(c["coverage_radius"], "campaign.coverage_radius");
    if (c.contains("range_bias"))
      config.range_model.bias = require_number(c["range_bias"], "campaign.range_bias");
    if (c.contains("range_sigma"))
      config.range_model.sigma = require_number(c["range_sigma"], "campaign.range_sigma");
    if (c.contains("methods")) {
      config.mc_methods.clear();
      for (const json& m : c["methods"])
        config.mc_methods.push_back(parse_method(m.get<std::string>()));
      if (config.mc_methods.empty())
        throw Error(Errc::invalid_config, "campaign.methods must not be empty");
    }
    if (c.contains("timing_sweep")) {
      config.timing_sweep.clear();
      for (const json& v : c["timing_sweep"]) config.timing_sweep.push_back(v.get<int>());
    }
    if (config.mc_init < 1 || config.mc_algo < 1 || config.targets < 1 ||
        config.coverage_radius <= 0.0 || config.range_model.sigma < 0.0 ||
        config.range_model.bias < 0.0)
      throw Error(Errc::invalid_config, "campaign settings out of range");
  }

  if (doc.contains("dopfield")) {
    const json& d = doc["dopfield"];
    reject_unknown(d, {"grid_theta", "grid_phi", "range_multiplier"}, "dopfield");
    if (d.contains("grid_theta")) config.grid_theta = d["grid_theta"].get<int>();
    if (d.contains("grid_phi")) config.grid_phi = d["grid_phi"].get<int>();
    if (d.contains("range_multiplier"))
      config.range_multiplier = require_number(d["range_multiplier"], "dopfield.range_multiplier");
    if (config.grid_theta < 2 || config.grid_phi < 2 || config.range_multiplier <= 0.0)
      throw Error(Errc::invalid_config, "dopfield settings out of range");
  }

  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::invalid_config, "cannot read config file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_json(buf.str());
}

McCampaign campaign_from_config(const RunConfig& config) {
  McCampaign c;
  c.mc_init = config.mc_init;
  c.mc_algo = config.mc_algo;
  c.targets = config.targets;
  c.coverage_radius = config.coverage_radius;
  c.range_model = config.range_model;
  c.mode = config.mode;
  c.box = config.box;
  c.sep.min_distance = config.min_separation;
  c.initial_anchors = config.initial_anchors;
  c.additional = config.additional;
  c.solver = config.solver;
  c.perturb = config.perturb;
  c.master_seed = config.seed;
  c.jobs = config.jobs;
  return c;
}

PlacementProblem problem_from_config(const RunConfig& config) {
  PlacementProblem p;
  p.mode = config.mode;
  p.method = config.method;
  p.box = config.box;
  p.sep.min_distance = config.min_separation;
  p.additional = config.additional;
  p.solver = config.solver;
  p.perturb = config.perturb;
  p.seed = config.seed;
  return p;
}

}  // namespace rndop
