#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "rndop/matlin.hpp"

namespace rndop {

// Ordered anchor coordinates (meters) with centroid bookkeeping.
class AnchorSet {
 public:
  // at least 3 anchors for raw storage; 3D DOP evaluation needs >= 4
  explicit AnchorSet(std::vector<Vec3> points);

  const std::vector<Vec3>& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  const Vec3& operator[](std::size_t i) const { return pts_[i]; }

  Vec3 centroid() const { return sum_ * (1.0 / static_cast<double>(pts_.size())); }
  // centroid at origin within 1e-9 * N meters
  bool centered() const { return sum_.norm() <= 1e-9 * static_cast<double>(pts_.size()); }

  AnchorSet centered_copy() const { return translated(-centroid()); }
  AnchorSet translated(const Vec3& delta) const;
  AnchorSet scaled(double factor) const;

  double min_pairwise_distance() const;
  double max_radius() const;  // max_i ||r_i||

 private:
  std::vector<Vec3> pts_;
  Vec3 sum_{};
};

// Target position, either Cartesian or polar (range from anchor centroid,
// azimuth theta in [-pi, pi), elevation phi in [-pi/2, pi/2] where phi with
// cos(phi) = z-component; phi = pi/2 lies in the XY plane).
class Target {
 public:
  static Target cartesian(const Vec3& position);
  static Target polar(double range, double theta, double phi);

  const Vec3& position() const { return position_; }
  double range() const { return range_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }

 private:
  Target() = default;
  Vec3 position_{};
  double range_ = 0.0, theta_ = 0.0, phi_ = 0.0;
};

// a_t(theta, phi) = [cos t sin p, sin t sin p, cos p]^T, unit 2-norm
Vec3 unit_direction(double theta, double phi);
// b_t(theta) = [cos t, sin t]^T
Vec2 planar_direction(double theta);
// inverse of unit_direction, on the cos(phi) >= 0 representative of {a, -a}
void direction_angles(const Vec3& a, double& theta, double& phi);

enum class DopKind { xyz, xy };

struct DopValue {
  double value = 0.0;  // dimensionless
  DopKind kind = DopKind::xyz;
};

struct RndopValue {
  double value = 0.0;  // 1/m
  DopKind kind = DopKind::xyz;
};

// C = sum r_i r_i^T over centered anchors with cached D = C^{-1} and the
// top-left 2x2 block E of D.
struct AnchorMatrix {
  SymMat3 c;
  SymMat3 d;
  SymMat2 e;
  std::size_t count = 0;
};

// Exact DOP from the unit target-to-anchor geometry matrix. Throws
// Errc::degenerate_geometry when H^T H is numerically singular and
// Errc::invalid_config when the target coincides with an anchor (< 1e-9 m).
DopValue exact_dop(const AnchorSet& anchors, const Target& target, DopKind kind);

// Requires centered anchors (Errc::not_centered) and invertible C
// (Errc::singular_c, e.g. coplanar anchors through the origin).
AnchorMatrix anchor_matrix(const AnchorSet& anchors);

// [N * lambda_min(D)]^{-1/2}; targets at >= 100x this range are treated as
// far away, test oracles use 1e4x.
double far_away_threshold(const AnchorMatrix& am);

RndopValue rndop_xyz(const AnchorMatrix& am, double theta, double phi);
RndopValue rndop_xy(const AnchorMatrix& am, double theta);
RndopValue rndop_eval(const AnchorMatrix& am, double theta, double phi, DopKind kind);

struct RndopBounds {
  RndopValue lower;
  RndopValue upper;
};

// Direction-independent asymptotic bounds: xyz in
// [sqrt(tr D - lambda_max D), sqrt(tr D - lambda_min D)], xy in
// [sqrt(lambda_min E), sqrt(lambda_max E)].
RndopBounds rndop_bounds(const AnchorMatrix& am, DopKind kind);

// Worst-case squared RNDOP over all directions: tr(D) - lambda_min(D) for
// xyz, lambda_max(E) for xy. Units 1/m^2.
double max_sq_rndop(const AnchorMatrix& am, DopKind kind);

struct AngularRegion {
  double theta_min = -M_PI;
  double theta_max = M_PI;
  double phi_min = -M_PI / 2.0;
  double phi_max = M_PI / 2.0;
};

// Midpoint-rule estimate of E[f(theta,phi) * R(theta,phi)] under the uniform
// angular measure on the region (not sphere-area measure; fold area weights
// into f if needed). resolution = points per axis, >= 8.
double weighted_rndop(const AnchorMatrix& am, const std::function<double(double, double)>& weight,
                      const AngularRegion& region, int resolution, DopKind kind = DopKind::xyz);

}  // namespace rndop
