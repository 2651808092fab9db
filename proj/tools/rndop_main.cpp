#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "rndop/commands.hpp"

using namespace rndop;

namespace {

struct CliOverrides {
  std::string config_path;
  std::string preset;
  std::string method;
  std::string mode;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = -1;
};

RunConfig build_config(const CliOverrides& cli) {
  RunConfig config;
  if (!cli.config_path.empty()) config = load_config_file(cli.config_path);
  if (!cli.preset.empty()) apply_preset(config, cli.preset);

  // precedence for the seed: --seed flag, then RNDOP_SEED, then config
  if (const char* env = std::getenv("RNDOP_SEED"); env && *env && !cli.seed_set) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw Error(Errc::invalid_config, "RNDOP_SEED is not an unsigned integer");
    config.seed = v;
  }
  if (cli.seed_set) config.seed = cli.seed;

  if (!cli.method.empty()) config.method = parse_method(cli.method);
  if (!cli.mode.empty()) config.mode = parse_mode(cli.mode);
  if (!cli.out_dir.empty()) config.out_dir = cli.out_dir;
  if (cli.jobs >= 0) config.jobs = cli.jobs;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anchor placement and DOP evaluation for ToA localization of targets beyond the anchors' convex hull"};
  app.require_subcommand(1);

  CliOverrides cli;
  app.add_option("--config", cli.config_path, "config JSON path (schema v1)");
  app.add_option("--preset", cli.preset, "desk or paper")->check(CLI::IsMember({"desk", "paper"}));
  app.add_option("--seed", cli.seed, "master seed (overrides RNDOP_SEED and config)")
      ->each([&cli](const std::string&) { cli.seed_set = true; });
  app.add_option("--out", cli.out_dir, "output directory");
  app.add_option("--method", cli.method, "rnd, tr or eig")
      ->check(CLI::IsMember({"rnd", "tr", "eig"}));
  app.add_option("--mode", cli.mode, "2d or 3d")->check(CLI::IsMember({"2d", "3d"}));
  app.add_option("--jobs", cli.jobs, "worker threads for MC trials (0 = machine parallelism)");

  auto* place = app.add_subcommand("place", "iterative anchor placement -> placement.json, rndop_vs_k.csv");
  auto* mc = app.add_subcommand("mc", "Monte-Carlo campaign -> error_cdf.csv, timing.csv");
  auto* dopfield = app.add_subcommand("dopfield", "RNDOP/DOP field on an angular grid -> dop_field.csv");
  for (auto* sub : {place, mc, dopfield}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig config = build_config(cli);
    if (place->parsed()) return cmd_place(config);
    if (mc->parsed()) return cmd_mc(config);
    if (dopfield->parsed()) return cmd_dopfield(config);
    return kExitConfig;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == Errc::invalid_config ? kExitConfig : kExitInfeasible;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
