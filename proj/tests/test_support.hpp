#pragma once

#include <cmath>
#include <vector>

#include "rndop/geometry.hpp"
#include "rndop/matlin.hpp"
#include "rndop/rng.hpp"

namespace rndop::test {

// Independent 3x3 inverse via cofactors; deliberately does not share code
// with the library's eigensystem-based inverse.
inline SymMat3 cofactor_inverse(const SymMat3& m) {
  const double a = m(0, 0), b = m(0, 1), c = m(0, 2);
  const double d = m(1, 1), e = m(1, 2), f = m(2, 2);
  const double det = a * (d * f - e * e) - b * (b * f - e * c) + c * (b * e - d * c);
  const double i00 = (d * f - e * e) / det;
  const double i01 = (c * e - b * f) / det;
  const double i02 = (b * e - c * d) / det;
  const double i11 = (a * f - c * c) / det;
  const double i12 = (b * c - a * e) / det;
  const double i22 = (a * d - b * b) / det;
  return {i00, i01, i02, i11, i12, i22};
}

inline double max_abs_diff(const SymMat3& a, const SymMat3& b) {
  return (a - b).max_abs();
}

inline double max_abs_diff(const SymMat2& a, const SymMat2& b) {
  return (a - b).max_abs();
}

inline Vec3 random_vec(Rng& rng, double scale = 1.0) {
  return {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

// random SPD matrix A = B^T B + eps I with entries of B in [-scale, scale]
inline SymMat3 random_spd(Rng& rng, double scale = 1.0, double ridge = 1e-3) {
  const Vec3 r0 = random_vec(rng, scale);
  const Vec3 r1 = random_vec(rng, scale);
  const Vec3 r2 = random_vec(rng, scale);
  SymMat3 m = SymMat3::outer(r0) + SymMat3::outer(r1) + SymMat3::outer(r2);
  return m + SymMat3::identity() * (ridge * scale * scale);
}

inline SymMat3 random_sym(Rng& rng, double scale = 1.0) {
  return {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale),
          rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

// regular tetrahedron vertices: (+-1,+-1,+-1) with even sign product, C = 4 I
inline std::vector<Vec3> tetrahedron() {
  return {{1.0, 1.0, 1.0}, {1.0, -1.0, -1.0}, {-1.0, 1.0, -1.0}, {-1.0, -1.0, 1.0}};
}

// centered random anchor set with a nondegenerate spread
inline std::vector<Vec3> random_centered_anchors(Rng& rng, std::size_t n, double scale = 10.0) {
  std::vector<Vec3> pts(n);
  Vec3 sum{};
  for (auto& p : pts) {
    p = random_vec(rng, scale);
    sum += p;
  }
  const Vec3 c = sum * (1.0 / static_cast<double>(n));
  for (auto& p : pts) p -= c;
  return pts;
}

}  // namespace rndop::test
