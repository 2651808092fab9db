#include "rndop/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rndop/rng.hpp"

namespace rndop {

namespace {

// a b^T + b a^T
SymMat3 sym_cross(const Vec3& a, const Vec3& b) {
  return {2.0 * a.x * b.x, a.x * b.y + a.y * b.x, a.x * b.z + a.z * b.x,
          2.0 * a.y * b.y, a.y * b.z + a.z * b.y, 2.0 * a.z * b.z};
}

double separation_violation(const Vec3& p, const AnchorSet& existing, double d_th) {
  if (d_th <= 0.0) return 0.0;
  double worst = 0.0;
  for (const Vec3& a : existing.points())
    worst = std::max(worst, d_th - (p - a).norm());
  return std::max(worst, 0.0);
}

double penalty_term(const Vec3& p, const AnchorSet& existing, double d_th) {
  if (d_th <= 0.0) return 0.0;
  double acc = 0.0;
  for (const Vec3& a : existing.points()) {
    const double shortfall = d_th - (p - a).norm();
    if (shortfall > 0.0) acc += shortfall * shortfall;
  }
  return acc;
}

bool lex_less(const Vec3& a, const Vec3& b) {
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.z < b.z;
}

struct StageResult {
  Vec3 point;
  int iterations = 0;
  bool converged = false;
};

// Projected quasi-Newton descent with backtracking on the box.
StageResult minimize_stage(const CostFn& objective, const BoxConstraint& box, Vec3 x,
                           const SolverSettings& settings, double fd_step) {
  const auto grad = [&](const Vec3& p) {
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
      Vec3 hi = p, lo = p;
      hi[i] += fd_step;
      lo[i] -= fd_step;
      g[i] = (objective(hi) - objective(lo)) / (2.0 * fd_step);
    }
    return g;
  };

  StageResult result;
  SymMat3 h_inv = SymMat3::identity();
  double fx = objective(x);
  Vec3 g = grad(x);

  for (int it = 0; it < settings.max_iterations; ++it) {
    result.iterations = it + 1;
    // projected-gradient stationarity test
    const Vec3 pg = x - box.clamp(x - g);
    if (pg.norm() <= settings.step_tolerance) {
      result.converged = true;
      break;
    }

    Vec3 dir = -(h_inv * g);
    if (dir.dot(g) > -1e-14 * dir.norm() * g.norm()) {
      h_inv = SymMat3::identity();
      dir = -g;
    }

    double t = 1.0;
    Vec3 x_new = box.clamp(x + dir * t);
    double f_new = objective(x_new);
    const double slope = g.dot(dir);
    int backtracks = 0;
    while (f_new > fx + 1e-4 * t * slope && backtracks < 48) {
      t *= 0.5;
      x_new = box.clamp(x + dir * t);
      f_new = objective(x_new);
      ++backtracks;
    }
    if (f_new > fx) {
      result.converged = true;  // no descent direction left at this scale
      break;
    }

    const Vec3 step = x_new - x;
    if (step.norm() <= settings.step_tolerance) {
      x = x_new;
      fx = f_new;
      result.converged = true;
      break;
    }

    const Vec3 g_new = grad(x_new);
    const Vec3 y = g_new - g;
    const double sy = step.dot(y);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      const Vec3 u = h_inv * y;
      h_inv += SymMat3::outer(step) * (rho * rho * y.dot(u) + rho) - sym_cross(step, u) * rho;
    } else {
      h_inv = SymMat3::identity();
    }
    x = x_new;
    fx = f_new;
    g = g_new;
  }

  result.point = x;
  return result;
}

}  // namespace

SolveOutcome solve_anchor_subproblem(const CostFn& cost, const BoxConstraint& box,
                                     const AnchorSet& existing, const SeparationConstraint& sep,
                                     const SolverSettings& settings,
                                     std::span<const Vec3> warm_starts) {
  const double fd_step = 1e-5 * box.diagonal();
  const double d_th = sep.min_distance;

  // stratified seeds: one per octant of the box, cycled, jittered
  Rng rng(derive_seed(settings.seed, "solver.multistart"));
  std::vector<Vec3> seeds;
  seeds.reserve(static_cast<std::size_t>(settings.multistart) + 27 + warm_starts.size());
  const Vec3 mid = (box.lower + box.upper) * 0.5;
  for (int j = 0; j < settings.multistart; ++j) {
    const int octant = j % 8;
    Vec3 p;
    for (int i = 0; i < 3; ++i) {
      const bool upper_half = (octant >> i) & 1;
      const double lo = upper_half ? mid[i] : box.lower[i];
      const double hi = upper_half ? box.upper[i] : mid[i];
      p[i] = rng.uniform(lo, hi);
    }
    seeds.push_back(p);
  }
  // boundary lattice: corners, edge midpoints, face centers and the center.
  // The minimizers of the anchor costs sit on the box boundary far more often
  // than random interior starts reach them.
  for (int m = 0; m < 27; ++m) {
    const int gx = m % 3, gy = (m / 3) % 3, gz = m / 9;
    seeds.push_back({gx == 0 ? box.lower.x : (gx == 1 ? mid.x : box.upper.x),
                     gy == 0 ? box.lower.y : (gy == 1 ? mid.y : box.upper.y),
                     gz == 0 ? box.lower.z : (gz == 1 ? mid.z : box.upper.z)});
  }
  for (const Vec3& w : warm_starts) seeds.push_back(box.clamp(w));

  SolveOutcome outcome;
  outcome.starts.reserve(seeds.size());
  bool have_best = false;
  double best_violation = std::numeric_limits<double>::infinity();

  for (const Vec3& seed : seeds) {
    StartDiagnostics diag;
    diag.seed_point = seed;

    Vec3 x = seed;
    double mu = 1.0 + std::abs(cost(seed));
    double violation = separation_violation(x, existing, d_th);
    const int max_stages = 10;
    for (int stage = 0; stage < max_stages; ++stage) {
      const double mu_stage = mu;
      const auto objective = [&](const Vec3& p) {
        return cost(p) + mu_stage * penalty_term(p, existing, d_th);
      };
      const StageResult res = minimize_stage(objective, box, x, settings, fd_step);
      diag.iterations += res.iterations;
      diag.converged = res.converged;

      const double new_violation = separation_violation(res.point, existing, d_th);
      // keep the more feasible iterate between stages
      if (new_violation <= violation || stage == 0) {
        x = res.point;
        violation = new_violation;
      }
      diag.stage_violations.push_back(violation);
      if (violation <= settings.constraint_tolerance) break;
      mu *= settings.penalty_growth;
    }

    diag.cost = cost(x);
    diag.violation = violation;
    outcome.starts.push_back(diag);

    const bool feas = violation <= settings.constraint_tolerance;
    bool better = false;
    if (!have_best) {
      better = true;
    } else if (feas != outcome.feasible) {
      better = feas;
    } else if (!feas) {
      better = violation < best_violation;  // least-violating fallback
    } else {
      better = diag.cost < outcome.cost ||
               (diag.cost == outcome.cost && lex_less(x, outcome.point));
    }
    if (better) {
      outcome.point = x;
      outcome.cost = diag.cost;
      outcome.feasible = feas;
      best_violation = violation;
      have_best = true;
    }
  }

  return outcome;
}

}  // namespace rndop
