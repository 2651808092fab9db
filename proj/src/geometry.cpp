#include "rndop/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rndop {

AnchorSet::AnchorSet(std::vector<Vec3> points) : pts_(std::move(points)) {
  if (pts_.size() < 3)
    throw Error(Errc::invalid_config, "anchor set needs at least 3 anchors");
  for (const Vec3& p : pts_) {
    if (!p.finite()) throw Error(Errc::non_finite, "anchor coordinate has NaN/Inf");
    sum_ += p;
  }
}

AnchorSet AnchorSet::translated(const Vec3& delta) const {
  std::vector<Vec3> moved(pts_.size());
  for (std::size_t i = 0; i < pts_.size(); ++i) moved[i] = pts_[i] + delta;
  return AnchorSet(std::move(moved));
}

AnchorSet AnchorSet::scaled(double factor) const {
  std::vector<Vec3> out(pts_.size());
  for (std::size_t i = 0; i < pts_.size(); ++i) out[i] = pts_[i] * factor;
  return AnchorSet(std::move(out));
}

double AnchorSet::min_pairwise_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i)
    for (std::size_t j = i + 1; j < pts_.size(); ++j)
      best = std::min(best, (pts_[i] - pts_[j]).norm());
  return best;
}

double AnchorSet::max_radius() const {
  double best = 0.0;
  for (const Vec3& p : pts_) best = std::max(best, p.norm());
  return best;
}

Target Target::cartesian(const Vec3& position) {
  if (!position.finite()) throw Error(Errc::non_finite, "target position");
  Target t;
  t.position_ = position;
  t.range_ = position.norm();
  if (!(t.range_ > 0.0)) throw Error(Errc::invalid_config, "target range must be positive");
  direction_angles(position * (1.0 / t.range_), t.theta_, t.phi_);
  return t;
}

Target Target::polar(double range, double theta, double phi) {
  if (!(range > 0.0)) throw Error(Errc::invalid_config, "target range must be positive");
  Target t;
  t.range_ = range;
  t.theta_ = theta;
  t.phi_ = phi;
  t.position_ = unit_direction(theta, phi) * range;
  return t;
}

Vec3 unit_direction(double theta, double phi) {
  const double sp = std::sin(phi);
  return {std::cos(theta) * sp, std::sin(theta) * sp, std::cos(phi)};
}

Vec2 planar_direction(double theta) { return {std::cos(theta), std::sin(theta)}; }

void direction_angles(const Vec3& a_in, double& theta, double& phi) {
  Vec3 a = a_in;
  if (a.z < 0.0) a = -a;  // R is even in the direction, use the cos(phi)>=0 half
  const double z = std::clamp(a.z, -1.0, 1.0);
  phi = std::acos(z);
  theta = std::atan2(a.y, a.x);
}

namespace {

// Q = (H^T H)^{-1} through the eigensystem of H^T H; Jacobi keeps small
// eigenvalues accurate, which matters at extreme target ranges.
SymMat3 dop_q_matrix(const AnchorSet& anchors, const Vec3& target) {
  SymMat3 hth{};
  for (const Vec3& r : anchors.points()) {
    const Vec3 diff = target - r;
    const double dist = diff.norm();
    if (dist <= 1e-9)
      throw Error(Errc::invalid_config, "target coincides with an anchor");
    hth += SymMat3::outer(diff * (1.0 / dist));
  }
  return inverse_spd(hth, Errc::degenerate_geometry);
}

}  // namespace

DopValue exact_dop(const AnchorSet& anchors, const Target& target, DopKind kind) {
  if (kind == DopKind::xyz && anchors.size() < 4)
    throw Error(Errc::invalid_config, "3D DOP needs at least 4 anchors");
  const SymMat3 q = dop_q_matrix(anchors, target.position());
  const double t = (kind == DopKind::xyz) ? q.trace() : q.block2().trace();
  if (!(t > 0.0) || !std::isfinite(t))
    throw Error(Errc::degenerate_geometry, "non-positive DOP trace");
  return {std::sqrt(t), kind};
}

AnchorMatrix anchor_matrix(const AnchorSet& anchors) {
  if (!anchors.centered())
    throw Error(Errc::not_centered, "anchor matrix requires centroid at the origin");
  AnchorMatrix am;
  am.count = anchors.size();
  for (const Vec3& r : anchors.points()) am.c += SymMat3::outer(r);
  am.d = inverse_spd(am.c, Errc::singular_c);
  am.e = am.d.block2();
  return am;
}

double far_away_threshold(const AnchorMatrix& am) {
  const double lam_min_d = eig_sym(am.d).values[0];
  return 1.0 / std::sqrt(static_cast<double>(am.count) * lam_min_d);
}

RndopValue rndop_xyz(const AnchorMatrix& am, double theta, double phi) {
  const Vec3 a = unit_direction(theta, phi);
  const Vec3 da = am.d * a;
  const double val = am.d.trace() - da.dot(da) / a.dot(da);
  return {std::sqrt(std::max(val, 0.0)), DopKind::xyz};
}

RndopValue rndop_xy(const AnchorMatrix& am, double theta) {
  const Vec2 b = planar_direction(theta);
  const Vec2 eb = am.e * b;
  const double val = am.e.trace() - eb.dot(eb) / b.dot(eb);
  return {std::sqrt(std::max(val, 0.0)), DopKind::xy};
}

RndopValue rndop_eval(const AnchorMatrix& am, double theta, double phi, DopKind kind) {
  return kind == DopKind::xyz ? rndop_xyz(am, theta, phi) : rndop_xy(am, theta);
}

RndopBounds rndop_bounds(const AnchorMatrix& am, DopKind kind) {
  if (kind == DopKind::xyz) {
    const EigDecomp3 e = eig_sym(am.d);
    const double tr = am.d.trace();
    return {{std::sqrt(std::max(tr - e.values[2], 0.0)), kind},
            {std::sqrt(std::max(tr - e.values[0], 0.0)), kind}};
  }
  const EigDecomp2 e = eig_sym(am.e);
  if (e.values[0] <= 0.0) throw Error(Errc::singular_e, "E not positive definite");
  return {{std::sqrt(e.values[0]), kind}, {std::sqrt(e.values[1]), kind}};
}

double max_sq_rndop(const AnchorMatrix& am, DopKind kind) {
  if (kind == DopKind::xyz) {
    const EigDecomp3 e = eig_sym(am.d);
    return am.d.trace() - e.values[0];
  }
  return eig_sym(am.e).values[1];
}

double weighted_rndop(const AnchorMatrix& am, const std::function<double(double, double)>& weight,
                      const AngularRegion& region, int resolution, DopKind kind) {
  if (!(region.theta_max > region.theta_min) || !(region.phi_max > region.phi_min))
    throw Error(Errc::empty_region, "angular region has no interior");
  if (resolution < 8)
    throw Error(Errc::invalid_config, "weighted_rndop needs >= 8 quadrature points per axis");

  const double dt = (region.theta_max - region.theta_min) / resolution;
  const double dp = (region.phi_max - region.phi_min) / resolution;
  double acc = 0.0;
  for (int i = 0; i < resolution; ++i) {
    const double theta = region.theta_min + (i + 0.5) * dt;
    for (int j = 0; j < resolution; ++j) {
      const double phi = region.phi_min + (j + 0.5) * dp;
      acc += weight(theta, phi) * rndop_eval(am, theta, phi, kind).value;
    }
  }
  return acc / (static_cast<double>(resolution) * resolution);
}

}  // namespace rndop
