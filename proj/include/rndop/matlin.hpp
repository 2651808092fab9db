#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "rndop/errors.hpp"

namespace rndop {

struct Vec2 {
  double x = 0.0, y = 0.0;

  double& operator[](int i) { return i == 0 ? x : y; }
  double operator[](int i) const { return i == 0 ? x : y; }

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double norm_sq() const { return x * x + y * y + z * z; }
  Vec2 xy() const { return {x, y}; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Real symmetric 2x2, three stored entries.
class SymMat2 {
 public:
  SymMat2() = default;
  SymMat2(double xx, double xy, double yy) : xx_(xx), xy_(xy), yy_(yy) {}

  static SymMat2 identity() { return {1.0, 0.0, 1.0}; }
  static SymMat2 outer(const Vec2& v) { return {v.x * v.x, v.x * v.y, v.y * v.y}; }

  double operator()(int i, int j) const {
    if (i == 0 && j == 0) return xx_;
    if (i == 1 && j == 1) return yy_;
    return xy_;
  }

  SymMat2 operator+(const SymMat2& o) const { return {xx_ + o.xx_, xy_ + o.xy_, yy_ + o.yy_}; }
  SymMat2 operator-(const SymMat2& o) const { return {xx_ - o.xx_, xy_ - o.xy_, yy_ - o.yy_}; }
  SymMat2 operator*(double s) const { return {xx_ * s, xy_ * s, yy_ * s}; }
  Vec2 operator*(const Vec2& v) const { return {xx_ * v.x + xy_ * v.y, xy_ * v.x + yy_ * v.y}; }

  double trace() const { return xx_ + yy_; }
  double quad(const Vec2& v) const { return v.dot((*this) * v); }
  double max_abs() const;
  bool finite() const;

 private:
  double xx_ = 0.0, xy_ = 0.0, yy_ = 0.0;
};

// Real symmetric 3x3, six stored entries; symmetry holds by construction.
class SymMat3 {
 public:
  SymMat3() = default;
  SymMat3(double xx, double xy, double xz, double yy, double yz, double zz)
      : xx_(xx), xy_(xy), xz_(xz), yy_(yy), yz_(yz), zz_(zz) {}

  static SymMat3 identity() { return {1.0, 0.0, 0.0, 1.0, 0.0, 1.0}; }
  static SymMat3 diag(double a, double b, double c) { return {a, 0.0, 0.0, b, 0.0, c}; }
  static SymMat3 outer(const Vec3& v) {
    return {v.x * v.x, v.x * v.y, v.x * v.z, v.y * v.y, v.y * v.z, v.z * v.z};
  }

  double operator()(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i == 0) return j == 0 ? xx_ : (j == 1 ? xy_ : xz_);
    if (i == 1) return j == 1 ? yy_ : yz_;
    return zz_;
  }

  SymMat3 operator+(const SymMat3& o) const {
    return {xx_ + o.xx_, xy_ + o.xy_, xz_ + o.xz_, yy_ + o.yy_, yz_ + o.yz_, zz_ + o.zz_};
  }
  SymMat3 operator-(const SymMat3& o) const {
    return {xx_ - o.xx_, xy_ - o.xy_, xz_ - o.xz_, yy_ - o.yy_, yz_ - o.yz_, zz_ - o.zz_};
  }
  SymMat3 operator*(double s) const {
    return {xx_ * s, xy_ * s, xz_ * s, yy_ * s, yz_ * s, zz_ * s};
  }
  SymMat3& operator+=(const SymMat3& o) {
    *this = *this + o;
    return *this;
  }
  Vec3 operator*(const Vec3& v) const {
    return {xx_ * v.x + xy_ * v.y + xz_ * v.z, xy_ * v.x + yy_ * v.y + yz_ * v.z,
            xz_ * v.x + yz_ * v.y + zz_ * v.z};
  }

  double trace() const { return xx_ + yy_ + zz_; }
  double quad(const Vec3& v) const { return v.dot((*this) * v); }
  double max_abs() const;
  bool finite() const;
  // top-left 2x2 block
  SymMat2 block2() const { return {xx_, xy_, yy_}; }

 private:
  double xx_ = 0.0, xy_ = 0.0, xz_ = 0.0, yy_ = 0.0, yz_ = 0.0, zz_ = 0.0;
};

inline SymMat3 operator*(double s, const SymMat3& m) { return m * s; }
inline SymMat2 operator*(double s, const SymMat2& m) { return m * s; }

// Eigen-decomposition with ascending eigenvalues and orthonormal eigenvectors.
// Sign convention: each eigenvector's first component of magnitude > 1e-12 is
// positive, so results are deterministic across runs.
struct EigDecomp3 {
  std::array<double, 3> values{};   // lambda_1 <= lambda_2 <= lambda_3
  std::array<Vec3, 3> vectors{};    // unit 2-norm each
};

struct EigDecomp2 {
  std::array<double, 2> values{};
  std::array<Vec2, 2> vectors{};
};

// Cyclic Jacobi rotations to machine precision. Throws Errc::non_finite on
// NaN/Inf input. For repeated eigenvalues any orthonormal basis of the
// eigenspace may be returned; callers must not pin directions there.
EigDecomp3 eig_sym(const SymMat3& a);
EigDecomp2 eig_sym(const SymMat2& a);

// (X + scale*y*y^T)^{-1} from X^{-1} via the rank-1 inverse-update identity.
// Throws Errc::singular_update when |1 + scale*y^T*Xinv*y| <= 1e-14.
SymMat3 sherman_morrison_inv(const SymMat3& xinv, const Vec3& y, double scale);

struct GeneralizedExtremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  Vec3 vec_min{};  // eigenvectors of Z = Y^{-1/2} X Y^{-1/2}
  Vec3 vec_max{};
};

// Extreme generalized eigenvalues of (X, Y): the Rayleigh quotient
// w^T X w / w^T Y w ranges over [lambda_min, lambda_max], attained at
// w proportional to Y^{-1/2} vec_min / Y^{-1/2} vec_max.
// Requires Y positive definite (lambda_1(Y) > 1e-12 * max(1, tr Y)).
GeneralizedExtremes generalized_eig_extremes(const SymMat3& x, const SymMat3& y);

// True iff the rank-1 eigenvalue interlacing chains hold (tolerance 1e-9,
// scaled by the eigenvalue magnitude). `epsilon` is the scale of the rank-1
// perturbation Y = X + epsilon*w*w^T with unit w.
bool interlacing_check(const EigDecomp3& before, const EigDecomp3& after, double epsilon);

// Minimum of tr(X^{-1}) - lambda_min(X^{-1}) over positive definite 3x3 X
// with tr(X) = trace_k; equals 6/trace_k, attained at X = (trace_k/3) I.
// Throws Errc::non_positive_trace for trace_k <= 0.
double trace_constrained_optimum(double trace_k);

// Inverse of a symmetric positive definite matrix via its eigensystem.
// Throws `code` when lambda_1 <= 1e-12 * max(1, tr).
SymMat3 inverse_spd(const SymMat3& a, Errc code = Errc::not_positive_definite);
SymMat2 inverse_spd(const SymMat2& a, Errc code = Errc::not_positive_definite);

}  // namespace rndop
