#pragma once

#include <cstddef>

#include "rndop/geometry.hpp"
#include "rndop/matlin.hpp"

namespace rndop {

struct BoxConstraint {
  Vec3 lower;  // strictly below upper componentwise
  Vec3 upper;

  bool contains(const Vec3& p, double tol = 0.0) const {
    for (int i = 0; i < 3; ++i)
      if (p[i] < lower[i] - tol || p[i] > upper[i] + tol) return false;
    return true;
  }
  Vec3 clamp(const Vec3& p) const {
    Vec3 q = p;
    for (int i = 0; i < 3; ++i) q[i] = std::min(std::max(q[i], lower[i]), upper[i]);
    return q;
  }
  Vec3 extent() const { return upper - lower; }
  double diagonal() const { return extent().norm(); }
  BoxConstraint translated(const Vec3& delta) const { return {lower + delta, upper + delta}; }
};

// Minimum pairwise anchor separation d_th in meters; 0 disables the check.
struct SeparationConstraint {
  double min_distance = 0.0;
};

enum class Mode { two_d, three_d };
enum class Method { rnd, tr, eig };

const char* mode_name(Mode m);
const char* method_name(Method m);

inline DopKind dop_kind(Mode m) { return m == Mode::three_d ? DopKind::xyz : DopKind::xy; }

// Bounds on the next iteration's worst-case squared RNDOP (1/m^2), computed
// from the current anchor matrix before the anchor is added.
struct IterationBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// C_{k+1} = C_k + (1 - 1/(k+1)) r r^T, the anchor-matrix update that folds in
// the centroid shift caused by appending r to k centered anchors.
SymMat3 update_c(const SymMat3& c_k, const Vec3& r, std::size_t k);

// D_{k+1} = C_{k+1}^{-1} via the rank-1 inverse update of D_k = C_k^{-1}.
SymMat3 update_d(const SymMat3& d_k, const Vec3& r, std::size_t k);

// E_{k+1} = [D_{k+1}]_{1:2,1:2}. The subtracted rank-1 term uses the
// projection [D_k r]_{1:2}, which keeps the identity with the full 3D update
// exact even when D_k has nonzero xz/yz entries.
SymMat2 update_e(const SymMat2& e_k, const SymMat3& d_k, const Vec3& r, std::size_t k);

// Worst-case squared 3D RNDOP after adding r: tr(M^{-1}) - lambda_min(M^{-1})
// with M = update_c(c_k, r, k). Minimize over r.
double cost_rnd_3d(const SymMat3& c_k, const Vec3& r, std::size_t k);

// r^T D_k^2 r / (1 + (k/(k+1)) r^T D_k r). Maximizing this minimizes
// tr(D_{k+1}).
double cost_tr_3d(const SymMat3& d_k, const Vec3& r, std::size_t k);

// lambda_max of the updated E. Minimize over r.
double cost_rnd_2d(const SymMat2& e_k, const SymMat3& d_k, const Vec3& r, std::size_t k);

// ||[D_k r]_{1:2}||^2 / (1 + (1 - 1/(k+1)) r^T D_k r), the projected-numerator
// form. Maximizing this minimizes tr(E_{k+1}).
double cost_tr_2d(const SymMat2& e_k, const SymMat3& d_k, const Vec3& r, std::size_t k);

// alpha_max * v_min(C_k) where alpha_max is the largest feasible step along
// the minimum eigenvector inside the box; both signs of the eigenvector are
// tried. Throws Errc::zero_feasible when only alpha = 0 is feasible.
Vec3 eig_candidate_3d(const SymMat3& c_k, const BoxConstraint& box);

// xy part: largest feasible step along v_max(E_k); z part: the box-clamped
// minimizer of p z^2 + 2 z q^T r_xy with q = [D_k]_{1:2,3}, p = [D_k]_{3,3}.
Vec3 eig_candidate_2d(const SymMat2& e_k, const SymMat3& d_k, const BoxConstraint& box);

// 3D: [1/l3(C_k) + 1/l2(C_k), 1/l2(C_k) + 1/l1(C_k)]; 2D: [l_min(E_k),
// l_max(E_k)]. Any feasible single-anchor addition lands inside.
IterationBounds iteration_bounds(const AnchorMatrix& am, Mode mode);

// Per-unit-r_t lower bounds on the worst-case 3D RNDOP of any configuration
// with these anchors' trace / max radius (not squared).
struct MinimaxLowerBounds {
  double config_specific = 0.0;  // sqrt(6 / sum ||r_i||^2)
  double universal = 0.0;        // sqrt(6/N) / r_max
};

MinimaxLowerBounds minimax_lower_bounds(const AnchorSet& anchors);

}  // namespace rndop
