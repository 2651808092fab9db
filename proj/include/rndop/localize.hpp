#pragma once

#include <vector>

#include "rndop/placement.hpp"
#include "rndop/rng.hpp"

namespace rndop {

// Homogeneous ranging-error model: measured range = max(0, true + w) with
// w ~ Gaussian(bias, sigma^2), i.i.d. across anchors.
struct RangeModel {
  double bias = 1.0;   // meters
  double sigma = 6.0;  // meters
};

std::vector<double> simulate_ranges(const AnchorSet& anchors, const Vec3& target,
                                    const RangeModel& model, Rng& rng);

struct FixResult {
  Vec3 position;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> accepted_residuals;  // residual norm after each accepted step
};

// Levenberg-damped Gauss-Newton on sum_i (range_i - ||r_i - x||)^2. 2D mode
// holds z at plane_z and solves for (x, y). Accepted steps never increase the
// residual; `converged` means the gradient norm fell below 1e-9.
FixResult nls_fix(const AnchorSet& anchors, const std::vector<double>& ranges, Mode mode,
                  const Vec3& initial_guess, double plane_z = 0.0);

// Closed-form multilateration from range differences; used as a fallback
// initializer when a fix fails to converge.
Vec3 linear_multilateration(const AnchorSet& anchors, const std::vector<double>& ranges, Mode mode,
                            double plane_z = 0.0);

// Eq-style positioning error bound sqrt((b^2 + sigma^2) * tr(Q-part)).
double positioning_error_bound(const AnchorSet& anchors, const Target& target,
                               const RangeModel& model, DopKind kind);

}  // namespace rndop
