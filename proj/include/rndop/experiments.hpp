#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rndop/localize.hpp"
#include "rndop/pipeline.hpp"

namespace rndop {

struct McCampaign {
  std::size_t mc_init = 100000;  // initialization trials per MC trial
  std::size_t mc_algo = 500;     // MC trials per method
  std::size_t targets = 10000;   // evaluation targets per configuration
  double coverage_radius = 200.0;
  RangeModel range_model{};
  Mode mode = Mode::three_d;
  BoxConstraint box{{-30.0, -20.0, -10.0}, {30.0, 20.0, 10.0}};
  SeparationConstraint sep{4.472};
  int initial_anchors = 4;  // N
  int additional = 20;      // N_a
  SolverSettings solver{};
  PerturbationParams perturb{};
  std::uint64_t master_seed = 0;
  int jobs = 0;  // 0 = machine parallelism
};

// Best of mc_init uniform-in-box draws of `initial_anchors` anchors that
// satisfy the separation threshold, scored by worst-case RNDOP of the
// campaign's mode after centering. Returns the winning set in the original
// (uncentered) coordinates. Throws Errc::no_feasible_init when every draw
// violates the threshold.
AnchorSet init_search(const McCampaign& campaign, Rng& rng);

struct TrialRecord {
  std::size_t trial = 0;
  Method method = Method::tr;
  std::vector<Vec3> initial_gcs;
  std::vector<Vec3> final_gcs;
  double final_sq_rndop = 0.0;  // recomputed from final_gcs after centering
  double t_exec_seconds = 0.0;  // placement loop only
  int failed_anchors = 0;
  RunStatus status = RunStatus::ok;
};

// Runs every method over mc_algo trials with common random numbers: trial i
// feeds identical initial anchors to each method. Indexed [method][trial].
std::vector<std::vector<TrialRecord>> run_campaign(const McCampaign& campaign,
                                                   const std::vector<Method>& methods);

struct ConfigSelection {
  std::size_t good_index = 0;  // positions in the input record vector
  std::size_t bad_index = 0;
  std::vector<Vec3> good_anchors;
  std::vector<Vec3> bad_anchors;
  double good_sq_rndop = 0.0;
  double bad_sq_rndop = 0.0;
};

// 10- and 90-percentile configurations by worst-case RNDOP, ascending order,
// 1-based ranks floor(0.1 N) and ceil(0.9 N). Needs >= 10 records.
ConfigSelection select_configs(const std::vector<TrialRecord>& records);

struct PositioningEval {
  std::vector<double> errors;  // sorted ascending; empirical CDF is (i+1)/n
  std::size_t not_converged = 0;
};

// One coverage-region draw: uniform in the ball of radius r_cov (3D) or in
// the disc on the XY plane (2D).
Vec3 draw_coverage_target(Mode mode, double r_cov, Rng& rng);

// Draws `targets` positions uniformly in the coverage sphere (3D) or disc on
// the XY plane (2D), simulates ranges, and runs NLS fixes initialized at the
// truth plus Gaussian(0, (10 m)^2) noise per coordinate.
PositioningEval eval_positioning(const AnchorSet& config, const McCampaign& campaign, Mode mode,
                                 Rng& rng);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool valid = false;  // false when the series has zero variance
};

struct TimingStats {
  std::vector<int> n_additional;  // ascending
  std::vector<double> p10, p50, p90;  // seconds, nearest-rank percentiles
  LinearFit fit10, fit50, fit90;
};

// Nearest-rank percentiles of execution time per N_a plus ordinary
// least-squares fits of each percentile series against N_a. Needs >= 3
// distinct N_a values.
TimingStats timing_stats(const std::map<int, std::vector<double>>& times_by_na);

double nearest_rank_percentile(std::vector<double> values, double pct);

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rndop
