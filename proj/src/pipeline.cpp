#include "rndop/pipeline.hpp"

#include <cmath>
#include <limits>

#include "rndop/rng.hpp"

namespace rndop {

const char* run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::infeasible: return "infeasible";
    default: return "cap_exhausted";
  }
}

namespace {

constexpr double kAuditTol = 1e-9;

void validate_problem(const PlacementProblem& problem, const AnchorSet& initial) {
  for (int i = 0; i < 3; ++i)
    if (!(problem.box.lower[i] < problem.box.upper[i]))
      throw Error(Errc::invalid_config, "box lower bound must be strictly below upper");
  if (problem.additional < 0)
    throw Error(Errc::invalid_config, "number of additional anchors must be >= 0");
  if (problem.sep.min_distance < 0.0)
    throw Error(Errc::invalid_config, "separation threshold must be >= 0");
  for (const Vec3& r : initial.points())
    if (!problem.box.contains(r, kAuditTol))
      throw Error(Errc::invalid_config, "initial anchor outside the box");
  if (problem.sep.min_distance > 0.0 &&
      initial.min_pairwise_distance() < problem.sep.min_distance - kAuditTol)
    throw Error(Errc::invalid_config, "initial anchors violate the separation threshold");
}

std::vector<Vec3> lcs_points(const std::vector<Vec3>& gcs, const Vec3& offset) {
  std::vector<Vec3> out(gcs.size());
  for (std::size_t i = 0; i < gcs.size(); ++i) out[i] = gcs[i] - offset;
  return out;
}

Vec3 mean_of(const std::vector<Vec3>& pts) {
  Vec3 s{};
  for (const Vec3& p : pts) s += p;
  return s * (1.0 / static_cast<double>(pts.size()));
}

// Anchor matrix of the working set, centered on its own centroid.
AnchorMatrix centered_matrix(const std::vector<Vec3>& gcs, Errc degenerate_code) {
  const Vec3 c = mean_of(gcs);
  AnchorMatrix am;
  am.count = gcs.size();
  for (const Vec3& p : gcs) am.c += SymMat3::outer(p - c);
  am.d = inverse_spd(am.c, degenerate_code);
  am.e = am.d.block2();
  return am;
}

void record_minimax(const std::vector<Vec3>& gcs, Mode mode, IterationRecord& rec) {
  if (mode != Mode::three_d) {
    rec.lb_config_sq = std::numeric_limits<double>::quiet_NaN();
    rec.lb_universal_sq = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  const Vec3 c = mean_of(gcs);
  double sum_sq = 0.0, r_max_sq = 0.0;
  for (const Vec3& p : gcs) {
    const double sq = (p - c).norm_sq();
    sum_sq += sq;
    r_max_sq = std::max(r_max_sq, sq);
  }
  rec.lb_config_sq = 6.0 / sum_sq;
  rec.lb_universal_sq = 6.0 / (static_cast<double>(gcs.size()) * r_max_sq);
}

double min_distance_to(const std::vector<Vec3>& pts, const Vec3& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3& a : pts) best = std::min(best, (a - p).norm());
  return best;
}

}  // namespace

PlacementRun run_algorithm1(const PlacementProblem& problem, const AnchorSet& initial) {
  if (problem.method != Method::rnd && problem.method != Method::tr)
    throw Error(Errc::invalid_config, "algorithm 1 handles the rnd and tr methods");
  validate_problem(problem, initial);

  PlacementRun run;
  run.mode = problem.mode;
  run.method = problem.method;
  run.seed = problem.seed;
  run.initial_gcs = initial.points();

  std::vector<Vec3> working = initial.points();  // GCS throughout
  {
    const AnchorMatrix am0 = centered_matrix(working, Errc::singular_c);
    run.initial_sq_rndop = max_sq_rndop(am0, dop_kind(problem.mode));
  }

  for (int iter = 1; iter <= problem.additional; ++iter) {
    const std::size_t m = working.size();
    const Vec3 offset = mean_of(working);  // GCS -> LCS
    const std::vector<Vec3> lcs = lcs_points(working, offset);
    const AnchorSet existing_lcs{lcs};
    const AnchorMatrix am = anchor_matrix(existing_lcs);
    const BoxConstraint box_lcs = problem.box.translated(-offset);

    CostFn cost;
    if (problem.method == Method::rnd && problem.mode == Mode::three_d)
      cost = [&am, m](const Vec3& r) { return cost_rnd_3d(am.c, r, m); };
    else if (problem.method == Method::tr && problem.mode == Mode::three_d)
      cost = [&am, m](const Vec3& r) { return -cost_tr_3d(am.d, r, m); };
    else if (problem.method == Method::rnd)
      cost = [&am, m](const Vec3& r) { return cost_rnd_2d(am.e, am.d, r, m); };
    else
      cost = [&am, m](const Vec3& r) { return -cost_tr_2d(am.e, am.d, r, m); };

    std::vector<Vec3> warm;
    try {
      warm.push_back(problem.mode == Mode::three_d
                         ? eig_candidate_3d(am.c, box_lcs)
                         : eig_candidate_2d(am.e, am.d, box_lcs));
    } catch (const Error&) {
      // no eigen warm start when the origin sits on the box boundary
    }

    SolverSettings settings = problem.solver;
    settings.seed = derive_seed(problem.seed, "alg1.solver", static_cast<std::uint64_t>(iter));
    const SolveOutcome outcome =
        solve_anchor_subproblem(cost, box_lcs, existing_lcs, problem.sep, settings, warm);

    IterationRecord rec;
    rec.anchor_count = m + 1;
    rec.anchor_lcs = outcome.point;
    rec.bounds = iteration_bounds(am, problem.mode);
    rec.solver_cost = outcome.cost;
    for (const StartDiagnostics& d : outcome.starts) rec.solver_iterations += d.iterations;

    if (!outcome.feasible) {
      run.status = RunStatus::infeasible;
      run.message = "no separation-feasible point found at iteration " + std::to_string(iter);
      run.iterations.push_back(rec);
      break;
    }

    working.push_back(outcome.point + offset);
    rec.anchor_gcs = working.back();
    const AnchorMatrix am_new = centered_matrix(working, Errc::singular_c);
    rec.achieved_sq_rndop = max_sq_rndop(am_new, dop_kind(problem.mode));
    record_minimax(working, problem.mode, rec);
    run.iterations.push_back(rec);
  }

  run.final_gcs = working;
  return run;
}

PlacementRun run_algorithm2(const PlacementProblem& problem, const AnchorSet& initial) {
  if (problem.method != Method::eig)
    throw Error(Errc::invalid_config, "algorithm 2 handles the eig method");
  if (!(problem.perturb.eta > 1.0))
    throw Error(Errc::invalid_config, "perturbation radius factor eta must be > 1");
  if (problem.perturb.max_tries < 0 || problem.perturb.redundancy_cap < 0)
    throw Error(Errc::invalid_config, "perturbation counts must be >= 0");
  validate_problem(problem, initial);

  PlacementRun run;
  run.mode = problem.mode;
  run.method = problem.method;
  run.seed = problem.seed;
  run.initial_gcs = initial.points();

  std::vector<Vec3> working = initial.points();
  std::vector<bool> valid(working.size(), true);
  {
    const AnchorMatrix am0 = centered_matrix(working, Errc::singular_c);
    run.initial_sq_rndop = max_sq_rndop(am0, dop_kind(problem.mode));
  }

  const double d_th = problem.sep.min_distance;
  const int cap = problem.perturb.redundancy_cap > 0 ? problem.perturb.redundancy_cap
                                                     : 2 * problem.additional;
  Rng rng(derive_seed(problem.seed, "alg2.perturb"));

  int valid_added = 0;
  int total_added = 0;
  while (valid_added < problem.additional) {
    if (total_added >= problem.additional + cap) {
      run.status = RunStatus::cap_exhausted;
      run.message = "redundancy cap reached with " + std::to_string(valid_added) + " of " +
                    std::to_string(problem.additional) + " valid anchors";
      break;
    }

    const Vec3 offset = mean_of(working);
    const std::vector<Vec3> lcs = lcs_points(working, offset);
    AnchorMatrix am;
    am.count = lcs.size();
    for (const Vec3& p : lcs) am.c += SymMat3::outer(p);
    am.d = inverse_spd(am.c, Errc::singular_c);
    am.e = am.d.block2();
    const BoxConstraint box_lcs = problem.box.translated(-offset);

    IterationRecord rec;
    rec.bounds = iteration_bounds(am, problem.mode);

    Vec3 candidate;
    try {
      candidate = problem.mode == Mode::three_d ? eig_candidate_3d(am.c, box_lcs)
                                                : eig_candidate_2d(am.e, am.d, box_lcs);
    } catch (const Error& e) {
      run.status = RunStatus::infeasible;
      run.message = e.what();
      break;
    }

    Vec3 chosen = candidate;
    bool is_valid = min_distance_to(lcs, candidate) >= d_th;
    if (!is_valid) {
      double best_dmin = min_distance_to(lcs, candidate);
      for (int p = 0; p <= problem.perturb.max_tries; ++p) {
        ++rec.perturbation_tries;
        const double theta = rng.uniform(-M_PI, M_PI);
        const double phi = rng.uniform(-M_PI / 2.0, M_PI / 2.0);
        const Vec3 perturbed = candidate + problem.perturb.eta * d_th * unit_direction(theta, phi);
        if (!box_lcs.contains(perturbed)) continue;
        const double dmin = min_distance_to(lcs, perturbed);
        if (dmin >= d_th) {
          chosen = perturbed;
          is_valid = true;
          break;
        }
        if (dmin > best_dmin) {
          chosen = perturbed;
          best_dmin = dmin;
        }
      }
    }

    working.push_back(chosen + offset);
    valid.push_back(is_valid);
    ++total_added;
    if (is_valid) ++valid_added;

    rec.anchor_count = working.size();
    rec.anchor_lcs = chosen;
    rec.anchor_gcs = working.back();
    rec.valid = is_valid;
    const AnchorMatrix am_new = centered_matrix(working, Errc::singular_c);
    rec.achieved_sq_rndop = max_sq_rndop(am_new, dop_kind(problem.mode));
    record_minimax(working, problem.mode, rec);
    run.iterations.push_back(rec);
  }

  run.failed_anchors = total_added - valid_added;
  run.final_gcs.clear();
  for (std::size_t i = 0; i < working.size(); ++i)
    if (valid[i]) run.final_gcs.push_back(working[i]);
  return run;
}

PlacementRun run_placement(const PlacementProblem& problem, const AnchorSet& initial) {
  return problem.method == Method::eig ? run_algorithm2(problem, initial)
                                       : run_algorithm1(problem, initial);
}

}  // namespace rndop
