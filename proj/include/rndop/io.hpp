#pragma once

#include <map>
#include <string>
#include <vector>

#include "rndop/experiments.hpp"
#include "rndop/pipeline.hpp"

namespace rndop {

// shortest exact decimal form; parsing it back recovers the same bits
std::string format_double(double v);

// versioned placement document, schema "rndop.placement/1"
std::string placement_run_to_json(const PlacementRun& run);

// columns: k, achieved_sq_rndop, lb_iter, ub_iter, lb_config, lb_universal.
// All values are squared RNDOPs (1/m^2); the last two columns are empty in
// 2D mode, where the configuration bounds are not defined.
std::string rndop_vs_k_csv(const PlacementRun& run);

struct CdfSeries {
  std::string method;
  std::string config_percentile;  // "p10" or "p90"
  std::vector<double> errors;     // sorted ascending
};

// columns: method, config_percentile, error_m, cdf with cdf = (i+1)/n
std::string error_cdf_csv(const std::vector<CdfSeries>& series);

// versioned campaign document, schema "rndop.campaign/1". Wall-clock
// t_exec values are included, so this file is not byte-stable across runs;
// every seed-derived field is.
std::string campaign_to_json(const McCampaign& campaign, const std::vector<Method>& methods,
                             const std::vector<std::vector<TrialRecord>>& records);

struct TimingRow {
  std::string method;
  int n_additional = 0;
  double p10_s = 0.0, p50_s = 0.0, p90_s = 0.0;
};

// columns: method, N_a, p10_s, p50_s, p90_s
std::string timing_csv(const std::vector<TimingRow>& rows);

struct DopFieldRow {
  double theta = 0.0, phi = 0.0;
  double rndop = 0.0;
  double dop_at_rt = 0.0;
  double lb = 0.0, ub = 0.0;
};

// columns: theta, phi, rndop, dop_at_rt, lb, ub
std::string dop_field_csv(const std::vector<DopFieldRow>& rows);

void write_text_file(const std::string& path, const std::string& content);

// minimal CSV reader for the round-trip audits: splits rows on commas,
// empty cells become NaN
std::vector<std::vector<double>> parse_numeric_csv(const std::string& text,
                                                   std::size_t skip_header = 1);

}  // namespace rndop
