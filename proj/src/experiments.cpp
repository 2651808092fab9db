#include "rndop/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace rndop {

namespace {

Vec3 uniform_in_box(const BoxConstraint& box, Rng& rng) {
  return {rng.uniform(box.lower.x, box.upper.x), rng.uniform(box.lower.y, box.upper.y),
          rng.uniform(box.lower.z, box.upper.z)};
}

bool separation_ok(const std::vector<Vec3>& pts, double d_th) {
  if (d_th <= 0.0) return true;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if ((pts[i] - pts[j]).norm() < d_th) return false;
  return true;
}

// worst-case squared RNDOP of a set after centering; NaN when degenerate
double score_centered(const std::vector<Vec3>& pts, Mode mode) {
  Vec3 c{};
  for (const Vec3& p : pts) c += p;
  c = c * (1.0 / static_cast<double>(pts.size()));
  SymMat3 cm{};
  for (const Vec3& p : pts) cm += SymMat3::outer(p - c);
  try {
    const SymMat3 d = inverse_spd(cm, Errc::singular_c);
    if (mode == Mode::three_d) return d.trace() - eig_sym(d).values[0];
    return eig_sym(d.block2()).values[1];
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

void parallel_for(int jobs, std::size_t count, const std::function<void(std::size_t)>& body) {
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  jobs = std::min<std::size_t>(jobs, count);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace

AnchorSet init_search(const McCampaign& campaign, Rng& rng) {
  const std::size_t n = static_cast<std::size_t>(campaign.initial_anchors);
  std::vector<Vec3> best;
  double best_score = std::numeric_limits<double>::infinity();
  std::vector<Vec3> draw(n);
  for (std::size_t trial = 0; trial < campaign.mc_init; ++trial) {
    for (std::size_t i = 0; i < n; ++i) draw[i] = uniform_in_box(campaign.box, rng);
    if (!separation_ok(draw, campaign.sep.min_distance)) continue;
    const double score = score_centered(draw, campaign.mode);
    if (std::isnan(score)) continue;
    if (score < best_score) {
      best_score = score;
      best = draw;
    }
  }
  if (best.empty())
    throw Error(Errc::no_feasible_init,
                "no separation-feasible initial configuration in " +
                    std::to_string(campaign.mc_init) + " trials");
  return AnchorSet(best);
}

std::vector<std::vector<TrialRecord>> run_campaign(const McCampaign& campaign,
                                                   const std::vector<Method>& methods) {
  std::vector<std::vector<TrialRecord>> records(methods.size());
  for (auto& v : records) v.resize(campaign.mc_algo);

  parallel_for(campaign.jobs, campaign.mc_algo, [&](std::size_t trial) {
    Rng init_rng(derive_seed(campaign.master_seed, "trial.init", trial));
    const AnchorSet initial = init_search(campaign, init_rng);

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      PlacementProblem problem;
      problem.mode = campaign.mode;
      problem.method = methods[mi];
      problem.box = campaign.box;
      problem.sep = campaign.sep;
      problem.additional = campaign.additional;
      problem.solver = campaign.solver;
      problem.perturb = campaign.perturb;
      problem.seed = derive_seed(campaign.master_seed,
                                 std::string("trial.place.") + method_name(methods[mi]), trial);

      TrialRecord rec;
      rec.trial = trial;
      rec.method = methods[mi];
      rec.initial_gcs = initial.points();

      const auto t0 = std::chrono::steady_clock::now();
      const PlacementRun run = run_placement(problem, initial);
      const auto t1 = std::chrono::steady_clock::now();

      rec.t_exec_seconds = std::chrono::duration<double>(t1 - t0).count();
      rec.final_gcs = run.final_gcs;
      rec.failed_anchors = run.failed_anchors;
      rec.status = run.status;
      rec.final_sq_rndop = score_centered(run.final_gcs, campaign.mode);
      records[mi][trial] = rec;
    }
  });
  return records;
}

ConfigSelection select_configs(const std::vector<TrialRecord>& records) {
  const std::size_t n = records.size();
  if (n < 10) throw Error(Errc::too_few_records, "config selection needs >= 10 records");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return records[a].final_sq_rndop < records[b].final_sq_rndop;
  });

  const std::size_t i10 = static_cast<std::size_t>(std::floor(0.1 * static_cast<double>(n)));
  const std::size_t i90 = static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(n)));

  ConfigSelection sel;
  sel.good_index = order[i10 - 1];  // 1-based ranks
  sel.bad_index = order[i90 - 1];
  sel.good_anchors = records[sel.good_index].final_gcs;
  sel.bad_anchors = records[sel.bad_index].final_gcs;
  sel.good_sq_rndop = records[sel.good_index].final_sq_rndop;
  sel.bad_sq_rndop = records[sel.bad_index].final_sq_rndop;
  return sel;
}

Vec3 draw_coverage_target(Mode mode, double r_cov, Rng& rng) {
  if (mode == Mode::three_d) {
    // uniform in the ball: radius ~ r * u^(1/3), direction uniform on the sphere
    const double radius = r_cov * std::cbrt(rng.uniform());
    const double z = rng.uniform(-1.0, 1.0);
    const double azimuth = rng.uniform(0.0, 2.0 * M_PI);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return Vec3{s * std::cos(azimuth), s * std::sin(azimuth), z} * radius;
  }
  const double radius = r_cov * std::sqrt(rng.uniform());
  const double azimuth = rng.uniform(0.0, 2.0 * M_PI);
  return {radius * std::cos(azimuth), radius * std::sin(azimuth), 0.0};
}

PositioningEval eval_positioning(const AnchorSet& config, const McCampaign& campaign, Mode mode,
                                 Rng& rng) {
  PositioningEval eval;
  eval.errors.reserve(campaign.targets);

  for (std::size_t t = 0; t < campaign.targets; ++t) {
    const Vec3 target = draw_coverage_target(mode, campaign.coverage_radius, rng);

    const std::vector<double> ranges = simulate_ranges(config, target, campaign.range_model, rng);

    Vec3 guess = target;
    guess.x += rng.normal(0.0, 10.0);
    guess.y += rng.normal(0.0, 10.0);
    if (mode == Mode::three_d) guess.z += rng.normal(0.0, 10.0);

    const FixResult fix = nls_fix(config, ranges, mode, guess, 0.0);
    if (!fix.converged) ++eval.not_converged;

    const Vec3 err = fix.position - target;
    eval.errors.push_back(mode == Mode::three_d ? err.norm() : err.xy().norm());
  }
  std::sort(eval.errors.begin(), eval.errors.end());
  return eval;
}

double nearest_rank_percentile(std::vector<double> values, double pct) {
  if (values.empty()) throw Error(Errc::invalid_config, "percentile of empty sample");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  std::size_t rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * n));
  rank = std::min(std::max<std::size_t>(rank, 1), values.size());
  return values[rank - 1];
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit fit;
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    fit.valid = false;  // zero-variance series, R^2 undefined
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += resid * resid;
  }
  fit.r_squared = 1.0 - ss_res / syy;
  fit.valid = true;
  return fit;
}

TimingStats timing_stats(const std::map<int, std::vector<double>>& times_by_na) {
  if (times_by_na.size() < 3)
    throw Error(Errc::insufficient_sweep, "timing fit needs >= 3 distinct N_a values");

  TimingStats stats;
  std::vector<double> xs;
  for (const auto& [na, times] : times_by_na) {
    stats.n_additional.push_back(na);
    xs.push_back(static_cast<double>(na));
    stats.p10.push_back(nearest_rank_percentile(times, 10.0));
    stats.p50.push_back(nearest_rank_percentile(times, 50.0));
    stats.p90.push_back(nearest_rank_percentile(times, 90.0));
  }
  stats.fit10 = linear_fit(xs, stats.p10);
  stats.fit50 = linear_fit(xs, stats.p50);
  stats.fit90 = linear_fit(xs, stats.p90);
  return stats;
}

}  // namespace rndop
