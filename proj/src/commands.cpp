#include "rndop/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>

#include "rndop/io.hpp"

namespace rndop {

namespace {

std::string out_path(const RunConfig& config, const std::string& name) {
  std::filesystem::create_directories(config.out_dir);
  return (std::filesystem::path(config.out_dir) / name).string();
}

}  // namespace

AnchorSet resolve_initial_anchors(const RunConfig& config) {
  if (config.initial_coordinates) {
    if (config.initial_coordinates->size() < 3)
      throw Error(Errc::invalid_config, "placement.initial_coordinates needs >= 3 anchors");
    return AnchorSet(*config.initial_coordinates);
  }
  const McCampaign campaign = campaign_from_config(config);
  Rng rng(derive_seed(config.seed, "place.init"));
  return init_search(campaign, rng);
}

int cmd_place(const RunConfig& config) {
  const AnchorSet initial = resolve_initial_anchors(config);
  const PlacementProblem problem = problem_from_config(config);
  const PlacementRun run = run_placement(problem, initial);

  write_text_file(out_path(config, "placement.json"), placement_run_to_json(run));
  write_text_file(out_path(config, "rndop_vs_k.csv"), rndop_vs_k_csv(run));

  const double final_sq =
      run.iterations.empty() ? run.initial_sq_rndop : run.iterations.back().achieved_sq_rndop;
  std::printf("place %s/%s: %zu anchors, max RNDOP %.6g 1/m, status %s -> %s\n",
              method_name(run.method), mode_name(run.mode), run.final_gcs.size(),
              std::sqrt(final_sq), run_status_name(run.status), config.out_dir.c_str());
  return run.status == RunStatus::ok ? kExitOk : kExitInfeasible;
}

int cmd_mc(const RunConfig& config) {
  const McCampaign campaign = campaign_from_config(config);

  // main campaign at the configured N_a: placements, runtimes, final RNDOPs
  const auto records = run_campaign(campaign, config.mc_methods);
  write_text_file(out_path(config, "campaign.json"),
                  campaign_to_json(campaign, config.mc_methods, records));

  bool any_failed = false;
  std::vector<CdfSeries> cdf_series;
  for (std::size_t mi = 0; mi < config.mc_methods.size(); ++mi) {
    for (const TrialRecord& rec : records[mi])
      if (rec.status != RunStatus::ok) any_failed = true;

    const ConfigSelection sel = select_configs(records[mi]);
    const std::string method = method_name(config.mc_methods[mi]);
    for (const auto& [tag, anchors] :
         {std::pair{std::string("p10"), sel.good_anchors},
          std::pair{std::string("p90"), sel.bad_anchors}}) {
      // one shared evaluation stream per tag: identical targets, noise and
      // guesses across methods, so the comparison is paired
      Rng rng(derive_seed(config.seed, "eval." + tag));
      const PositioningEval eval =
          eval_positioning(AnchorSet(anchors), campaign, config.mode, rng);
      cdf_series.push_back({method, tag, eval.errors});
    }
  }
  write_text_file(out_path(config, "error_cdf.csv"), error_cdf_csv(cdf_series));

  // timing sweep over N_a
  std::vector<TimingRow> timing_rows;
  for (std::size_t mi = 0; mi < config.mc_methods.size(); ++mi) {
    std::map<int, std::vector<double>> times_by_na;
    for (int na : config.timing_sweep) {
      McCampaign sweep = campaign;
      sweep.additional = na;
      const auto sweep_records = run_campaign(sweep, {config.mc_methods[mi]});
      std::vector<double> times;
      times.reserve(sweep_records[0].size());
      for (const TrialRecord& rec : sweep_records[0]) times.push_back(rec.t_exec_seconds);
      times_by_na[na] = std::move(times);
    }
    if (times_by_na.size() >= 3) {
      const TimingStats stats = timing_stats(times_by_na);
      for (std::size_t i = 0; i < stats.n_additional.size(); ++i)
        timing_rows.push_back({method_name(config.mc_methods[mi]), stats.n_additional[i],
                               stats.p10[i], stats.p50[i], stats.p90[i]});
    } else {
      for (const auto& [na, times] : times_by_na)
        timing_rows.push_back({method_name(config.mc_methods[mi]), na,
                               nearest_rank_percentile(times, 10.0),
                               nearest_rank_percentile(times, 50.0),
                               nearest_rank_percentile(times, 90.0)});
    }
  }
  write_text_file(out_path(config, "timing.csv"), timing_csv(timing_rows));

  std::printf("mc: %zu methods x %zu trials, outputs in %s\n", config.mc_methods.size(),
              campaign.mc_algo, config.out_dir.c_str());
  return any_failed ? kExitInfeasible : kExitOk;
}

int cmd_dopfield(const RunConfig& config) {
  const AnchorSet initial = resolve_initial_anchors(config);
  const AnchorSet centered = initial.centered_copy();
  const AnchorMatrix am = anchor_matrix(centered);
  const DopKind kind = dop_kind(config.mode);
  const RndopBounds bounds = rndop_bounds(am, kind);
  const double r_t = config.range_multiplier * far_away_threshold(am);

  std::vector<DopFieldRow> rows;
  rows.reserve(static_cast<std::size_t>(config.grid_theta) * config.grid_phi);
  for (int i = 0; i < config.grid_theta; ++i) {
    const double theta = -M_PI + (i + 0.5) * (2.0 * M_PI / config.grid_theta);
    for (int j = 0; j < config.grid_phi; ++j) {
      const double phi = -M_PI / 2.0 + (j + 0.5) * (M_PI / config.grid_phi);
      DopFieldRow row;
      row.theta = theta;
      row.phi = phi;
      row.rndop = rndop_eval(am, theta, phi, kind).value;
      row.dop_at_rt = exact_dop(centered, Target::polar(r_t, theta, phi), kind).value;
      row.lb = bounds.lower.value;
      row.ub = bounds.upper.value;
      rows.push_back(row);
    }
  }
  write_text_file(out_path(config, "dop_field.csv"), dop_field_csv(rows));
  std::printf("dopfield %s: %d x %d grid at r_t = %.6g m -> %s\n", mode_name(config.mode),
              config.grid_theta, config.grid_phi, r_t, config.out_dir.c_str());
  return kExitOk;
}

}  // namespace rndop
