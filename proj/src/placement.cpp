#include "rndop/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rndop {

const char* mode_name(Mode m) { return m == Mode::two_d ? "2d" : "3d"; }

const char* method_name(Method m) {
  switch (m) {
    case Method::rnd: return "rnd";
    case Method::tr: return "tr";
    default: return "eig";
  }
}

namespace {

double update_coeff(std::size_t k) { return 1.0 - 1.0 / static_cast<double>(k + 1); }

}  // namespace

SymMat3 update_c(const SymMat3& c_k, const Vec3& r, std::size_t k) {
  return c_k + SymMat3::outer(r) * update_coeff(k);
}

SymMat3 update_d(const SymMat3& d_k, const Vec3& r, std::size_t k) {
  return sherman_morrison_inv(d_k, r, update_coeff(k));
}

SymMat2 update_e(const SymMat2& e_k, const SymMat3& d_k, const Vec3& r, std::size_t k) {
  const double coeff = update_coeff(k);
  const double denom = 1.0 + coeff * d_k.quad(r);
  if (std::abs(denom) <= 1e-14)
    throw Error(Errc::singular_update, "E update denominator near zero");
  const Vec3 dr = d_k * r;
  const Vec2 u = dr.xy();  // [D_k r]_{1:2}
  return e_k - SymMat2::outer(u) * (coeff / denom);
}

double cost_rnd_3d(const SymMat3& c_k, const Vec3& r, std::size_t k) {
  const EigDecomp3 e = eig_sym(update_c(c_k, r, k));
  if (e.values[0] <= 0.0)
    throw Error(Errc::singular_update, "updated C not positive definite");
  // tr(M^{-1}) - lambda_min(M^{-1}) = 1/l1(M) + 1/l2(M)
  return 1.0 / e.values[0] + 1.0 / e.values[1];
}

double cost_tr_3d(const SymMat3& d_k, const Vec3& r, std::size_t k) {
  const Vec3 dr = d_k * r;
  return dr.dot(dr) / (1.0 + update_coeff(k) * r.dot(dr));
}

double cost_rnd_2d(const SymMat2& e_k, const SymMat3& d_k, const Vec3& r, std::size_t k) {
  return eig_sym(update_e(e_k, d_k, r, k)).values[1];
}

double cost_tr_2d(const SymMat2& /*e_k*/, const SymMat3& d_k, const Vec3& r, std::size_t k) {
  const Vec3 dr = d_k * r;
  const Vec2 u = dr.xy();
  return u.dot(u) / (1.0 + update_coeff(k) * r.dot(dr));
}

namespace {

// Largest alpha with lower <= alpha*v <= upper per component; requires the
// origin inside the box (anchor centroids always are). Components of v below
// 1e-15 impose no constraint.
double max_step_along(const Vec3& v, const Vec3& lower, const Vec3& upper, int dims) {
  double alpha = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dims; ++i) {
    if (std::abs(v[i]) <= 1e-15) continue;
    alpha = std::min(alpha, v[i] > 0.0 ? upper[i] / v[i] : lower[i] / v[i]);
  }
  return alpha;
}

}  // namespace

Vec3 eig_candidate_3d(const SymMat3& c_k, const BoxConstraint& box) {
  const EigDecomp3 e = eig_sym(c_k);
  const Vec3 v = e.vectors[0];
  const double a_pos = max_step_along(v, box.lower, box.upper, 3);
  const double a_neg = max_step_along(-v, box.lower, box.upper, 3);
  // On a tie prefer the candidate with the lower z coordinate: the
  // perturbation directions of the placement loop only point upward, so
  // bottom-boundary candidates stay recoverable.
  double alpha = a_pos;
  Vec3 dir = v;
  if (a_neg > a_pos * (1.0 + 1e-12) || (std::abs(a_neg - a_pos) <= 1e-12 * std::max(1.0, a_pos) && v.z > 0.0)) {
    alpha = a_neg;
    dir = -v;
  }
  if (!(alpha > 1e-12))
    throw Error(Errc::zero_feasible, "origin on box boundary along the eigenvector");
  return dir * alpha;
}

Vec3 eig_candidate_2d(const SymMat2& e_k, const SymMat3& d_k, const BoxConstraint& box) {
  const EigDecomp2 e = eig_sym(e_k);
  const Vec2 v2 = e.vectors[1];
  const Vec3 v{v2.x, v2.y, 0.0};
  const double a_pos = max_step_along(v, box.lower, box.upper, 2);
  const double a_neg = max_step_along(-v, box.lower, box.upper, 2);
  double alpha = a_pos;
  Vec3 dir = v;
  if (a_neg > a_pos) {
    alpha = a_neg;
    dir = -v;
  }
  if (!(alpha > 1e-12))
    throw Error(Errc::zero_feasible, "origin on box boundary along the eigenvector");
  const Vec2 r_xy = dir.xy() * alpha;

  const double p = d_k(2, 2);
  const Vec2 q{d_k(0, 2), d_k(1, 2)};
  // minimizer of p z^2 + 2 z q^T r_xy, clamped to the z range
  double z = (p > 0.0) ? -q.dot(r_xy) / p : 0.0;
  z = std::min(std::max(z, box.lower.z), box.upper.z);
  return {r_xy.x, r_xy.y, z};
}

IterationBounds iteration_bounds(const AnchorMatrix& am, Mode mode) {
  if (mode == Mode::three_d) {
    const EigDecomp3 e = eig_sym(am.c);
    if (e.values[0] <= 0.0) throw Error(Errc::singular_c, "C not positive definite");
    return {1.0 / e.values[2] + 1.0 / e.values[1], 1.0 / e.values[1] + 1.0 / e.values[0]};
  }
  const EigDecomp2 e = eig_sym(am.e);
  if (e.values[0] <= 0.0) throw Error(Errc::singular_e, "E not positive definite");
  return {e.values[0], e.values[1]};
}

MinimaxLowerBounds minimax_lower_bounds(const AnchorSet& anchors) {
  if (!anchors.centered())
    throw Error(Errc::not_centered, "minimax bounds are stated for centered anchors");
  double sum_sq = 0.0;
  for (const Vec3& r : anchors.points()) sum_sq += r.norm_sq();
  const double n = static_cast<double>(anchors.size());
  const double r_max = anchors.max_radius();
  return {std::sqrt(6.0 / sum_sq), std::sqrt(6.0 / n) / r_max};
}

}  // namespace rndop
