#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rndop/solver.hpp"

namespace rndop {

struct PerturbationParams {
  double eta = 1.1;        // perturbation radius in units of d_th, > 1
  int max_tries = 100;     // N_max per anchor
  int redundancy_cap = 0;  // extra (possibly invalid) additions allowed; 0 = 2x additional
};

struct PlacementProblem {
  Mode mode = Mode::three_d;
  Method method = Method::tr;
  BoxConstraint box;
  SeparationConstraint sep;
  int additional = 20;  // N_a
  SolverSettings solver;
  PerturbationParams perturb;
  std::uint64_t seed = 0;
};

struct IterationRecord {
  std::size_t anchor_count = 0;  // total anchors after this addition
  Vec3 anchor_lcs;               // solution in the frame it was solved in
  Vec3 anchor_gcs;
  IterationBounds bounds;        // from the pre-addition anchor matrix
  double achieved_sq_rndop = 0.0;
  double lb_config_sq = 0.0;     // squared Eq-22-style bounds of the updated set (3D; NaN in 2D)
  double lb_universal_sq = 0.0;
  double solver_cost = 0.0;
  int solver_iterations = 0;     // summed across starts; 0 for the eig scheme
  bool valid = true;             // V flag
  int perturbation_tries = 0;
};

enum class RunStatus { ok, infeasible, cap_exhausted };

const char* run_status_name(RunStatus s);

struct PlacementRun {
  Mode mode = Mode::three_d;
  Method method = Method::tr;
  std::uint64_t seed = 0;
  std::vector<Vec3> initial_gcs;
  double initial_sq_rndop = 0.0;
  std::vector<IterationRecord> iterations;
  std::vector<Vec3> final_gcs;  // initial anchors plus valid additions, GCS
  int failed_anchors = 0;       // N_f
  RunStatus status = RunStatus::ok;
  std::string message;
};

// Iterative single-anchor addition for the rnd and tr schemes. The working
// frame keeps the anchor centroid at the origin by carrying the cumulative
// GCS->LCS offset; initial anchors are returned in their original GCS
// coordinates bit-for-bit. A solver infeasibility aborts with a partial run
// (status = infeasible).
PlacementRun run_algorithm1(const PlacementProblem& problem, const AnchorSet& initial);

// Eigenvector-heuristic addition with random separation-restoring
// perturbations and redundant anchors. Invalid additions (V = 0) stay in the
// working set during the run and are dropped from final_gcs.
PlacementRun run_algorithm2(const PlacementProblem& problem, const AnchorSet& initial);

PlacementRun run_placement(const PlacementProblem& problem, const AnchorSet& initial);

}  // namespace rndop
