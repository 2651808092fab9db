#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rndop/placement.hpp"

namespace rndop {

struct SolverSettings {
  int multistart = 32;
  int max_iterations = 200;       // per start
  double step_tolerance = 1e-8;   // meters
  double constraint_tolerance = 1e-9;  // meters
  double penalty_growth = 10.0;
  std::uint64_t seed = 0;
};

struct StartDiagnostics {
  Vec3 seed_point;
  int iterations = 0;
  bool converged = false;
  double cost = 0.0;
  double violation = 0.0;                 // max separation shortfall, meters
  std::vector<double> stage_violations;   // one entry per penalty stage
};

struct SolveOutcome {
  Vec3 point;
  double cost = 0.0;
  bool feasible = false;
  std::vector<StartDiagnostics> starts;
};

using CostFn = std::function<double(const Vec3&)>;

// Minimizes `cost` over the box subject to ||r - a_i|| >= d_th for every
// existing anchor. Each start runs projected quasi-Newton descent on an
// exterior-penalty augmentation of the separation constraints, with central
// finite-difference gradients (h = 1e-5 * box diagonal). Starts are the
// stratified random samples plus a fixed 3x3x3 boundary lattice of the box
// and any caller-supplied warm starts. Deterministic given settings.seed.
// When no start reaches separation feasibility, `feasible` is false and the
// least-violating point is reported; callers decide what to do.
SolveOutcome solve_anchor_subproblem(const CostFn& cost, const BoxConstraint& box,
                                     const AnchorSet& existing, const SeparationConstraint& sep,
                                     const SolverSettings& settings,
                                     std::span<const Vec3> warm_starts = {});

}  // namespace rndop
