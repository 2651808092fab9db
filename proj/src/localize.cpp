#include "rndop/localize.hpp"

#include <algorithm>
#include <cmath>

namespace rndop {

std::vector<double> simulate_ranges(const AnchorSet& anchors, const Vec3& target,
                                    const RangeModel& model, Rng& rng) {
  std::vector<double> out(anchors.size());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const double truth = (anchors[i] - target).norm();
    const double w = rng.normal(model.bias, model.sigma);
    out[i] = std::max(0.0, truth + w);
  }
  return out;
}

namespace {

constexpr int kMaxIterations = 100;
constexpr double kGradTol = 1e-9;

double residual_sq(const AnchorSet& anchors, const std::vector<double>& ranges, const Vec3& x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const double e = ranges[i] - (anchors[i] - x).norm();
    acc += e * e;
  }
  return acc;
}

// One Levenberg-damped Gauss-Newton solve; dims = 3 for xyz, 2 for xy.
FixResult gauss_newton(const AnchorSet& anchors, const std::vector<double>& ranges, int dims,
                       Vec3 x) {
  FixResult result;
  double damping = 1e-3;
  double cost = residual_sq(anchors, ranges, x);

  for (int it = 0; it < kMaxIterations; ++it) {
    result.iterations = it + 1;

    // J^T J and J^T e with Jacobian rows -(x - r_i)/d_i
    SymMat3 jtj{};
    Vec3 jte{};
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      Vec3 diff = x - anchors[i];
      double dist = diff.norm();
      if (dist < 1e-9) {
        dist = 1e-9;
        diff = {dist, 0.0, 0.0};
      }
      const Vec3 row = diff * (-1.0 / dist);
      const double e = ranges[i] - dist;
      jtj += SymMat3::outer(row);
      jte += row * e;
    }
    if (dims == 2) jte.z = 0.0;

    const double grad_norm = 2.0 * jte.norm();
    if (grad_norm <= kGradTol) {
      result.converged = true;
      break;
    }

    bool stepped = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      // solve (J^T J + damping I) delta = -J^T e on the active dims
      const Vec3 rhs3 = -jte;
      Vec3 delta{};
      if (dims == 3) {
        const SymMat3 a = jtj + SymMat3::identity() * damping;
        const EigDecomp3 e = eig_sym(a);
        for (int k = 0; k < 3; ++k)
          delta += e.vectors[k] * (e.vectors[k].dot(rhs3) / e.values[k]);
      } else {
        const SymMat2 a2 = jtj.block2() + SymMat2::identity() * damping;
        const EigDecomp2 e = eig_sym(a2);
        const Vec2 rhs = rhs3.xy();
        Vec2 d2{};
        for (int k = 0; k < 2; ++k)
          d2 = d2 + e.vectors[k] * (e.vectors[k].dot(rhs) / e.values[k]);
        delta = {d2.x, d2.y, 0.0};
      }

      const Vec3 x_try = x + delta;
      const double cost_try = residual_sq(anchors, ranges, x_try);
      if (cost_try <= cost) {
        x = x_try;
        cost = cost_try;
        damping = std::max(damping / 3.0, 1e-12);
        result.accepted_residuals.push_back(std::sqrt(cost));
        stepped = true;
        break;
      }
      damping *= 10.0;
    }
    if (!stepped) break;  // damping exhausted, stationary within noise
  }

  result.position = x;
  result.residual_norm = std::sqrt(cost);
  return result;
}

}  // namespace

FixResult nls_fix(const AnchorSet& anchors, const std::vector<double>& ranges, Mode mode,
                  const Vec3& initial_guess, double plane_z) {
  const std::size_t need = mode == Mode::three_d ? 4 : 3;
  if (anchors.size() < need)
    throw Error(Errc::invalid_config, "too few anchors for the requested fix");
  if (ranges.size() != anchors.size())
    throw Error(Errc::invalid_config, "range count must match anchor count");
  if (!initial_guess.finite()) throw Error(Errc::non_finite, "initial guess");

  const int dims = mode == Mode::three_d ? 3 : 2;
  Vec3 x0 = initial_guess;
  if (dims == 2) x0.z = plane_z;

  FixResult result = gauss_newton(anchors, ranges, dims, x0);
  if (!result.converged || result.residual_norm > 1e-9) {
    // restart from a linearized multilateration estimate; rescues fits that
    // stalled in a local minimum of the range residual
    const Vec3 relin = linear_multilateration(anchors, ranges, mode, plane_z);
    FixResult retry = gauss_newton(anchors, ranges, dims, relin);
    retry.iterations += result.iterations;
    if (retry.residual_norm < result.residual_norm) result = retry;
  }
  return result;
}

Vec3 linear_multilateration(const AnchorSet& anchors, const std::vector<double>& ranges, Mode mode,
                            double plane_z) {
  // subtracting the first range equation from the rest linearizes the system:
  // 2 (r_i - r_1)^T x = rho_1^2 - rho_i^2 + ||r_i||^2 - ||r_1||^2
  const Vec3& r1 = anchors[0];
  SymMat3 ata{};
  Vec3 atb{};
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    Vec3 a = (anchors[i] - r1) * 2.0;
    double b = ranges[0] * ranges[0] - ranges[i] * ranges[i] + anchors[i].norm_sq() - r1.norm_sq();
    if (mode == Mode::two_d) {
      b -= a.z * plane_z;
      a.z = 0.0;
    }
    ata += SymMat3::outer(a);
    atb += a * b;
  }
  if (mode == Mode::two_d) ata += SymMat3::outer(Vec3{0.0, 0.0, 1.0});  // pin z

  Vec3 x{};
  const EigDecomp3 e = eig_sym(ata);
  const double floor_val = 1e-12 * std::max(1.0, ata.trace());
  for (int k = 0; k < 3; ++k) {
    if (e.values[k] <= floor_val) continue;  // rank-deficient direction, leave at 0
    x += e.vectors[k] * (e.vectors[k].dot(atb) / e.values[k]);
  }
  if (mode == Mode::two_d) x.z = plane_z;
  return x;
}

double positioning_error_bound(const AnchorSet& anchors, const Target& target,
                               const RangeModel& model, DopKind kind) {
  const DopValue dop = exact_dop(anchors, target, kind);
  return std::sqrt(model.bias * model.bias + model.sigma * model.sigma) * dop.value;
}

}  // namespace rndop
