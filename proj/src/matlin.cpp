#include "rndop/matlin.hpp"

#include <algorithm>
#include <cmath>

namespace rndop {

namespace {

const char* kErrcNames[] = {
    "NonFinite",        "SingularUpdate", "NotPositiveDefinite", "NonPositiveTrace",
    "DegenerateGeometry", "NotCentered",  "SingularC",           "SingularE",
    "ZeroFeasible",     "EmptyRegion",    "NoFeasibleInit",      "TooFewRecords",
    "InsufficientSweep", "InvalidConfig",
};

template <int N>
using Full = std::array<std::array<double, N>, N>;

template <int N>
void jacobi(Full<N>& a, Full<N>& v) {
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) v[i][j] = (i == j) ? 1.0 : 0.0;

  double scale = 1.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) scale = std::max(scale, std::abs(a[i][j]));
  const double tol = 1e-15 * scale;

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < N - 1; ++p)
      for (int q = p + 1; q < N; ++q) off = std::max(off, std::abs(a[p][q]));
    if (off <= tol) break;

    for (int p = 0; p < N - 1; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const double apq = a[p][q];
        if (std::abs(apq) <= tol * 1e-2) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = a[p][p], aqq = a[q][q];
        a[p][p] = app - t * apq;
        a[q][q] = aqq + t * apq;
        a[p][q] = 0.0;
        a[q][p] = 0.0;
        for (int r = 0; r < N; ++r) {
          if (r == p || r == q) continue;
          const double arp = a[r][p], arq = a[r][q];
          a[r][p] = a[p][r] = c * arp - s * arq;
          a[r][q] = a[q][r] = s * arp + c * arq;
        }
        for (int r = 0; r < N; ++r) {
          const double vrp = v[r][p], vrq = v[r][q];
          v[r][p] = c * vrp - s * vrq;
          v[r][q] = s * vrp + c * vrq;
        }
      }
    }
  }
}

template <int N>
void sort_and_fix_signs(std::array<double, N>& values, Full<N>& vectors_cols) {
  std::array<int, N> order{};
  for (int i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });

  std::array<double, N> sorted_vals{};
  Full<N> sorted_vecs{};
  for (int k = 0; k < N; ++k) {
    sorted_vals[k] = values[order[k]];
    for (int r = 0; r < N; ++r) sorted_vecs[r][k] = vectors_cols[r][order[k]];
    // first component with |.| > 1e-12 made positive
    for (int r = 0; r < N; ++r) {
      if (std::abs(sorted_vecs[r][k]) > 1e-12) {
        if (sorted_vecs[r][k] < 0.0)
          for (int rr = 0; rr < N; ++rr) sorted_vecs[rr][k] = -sorted_vecs[rr][k];
        break;
      }
    }
  }
  values = sorted_vals;
  vectors_cols = sorted_vecs;
}

}  // namespace

const char* errc_name(Errc code) { return kErrcNames[static_cast<int>(code)]; }

double SymMat2::max_abs() const {
  return std::max({std::abs(xx_), std::abs(xy_), std::abs(yy_)});
}

bool SymMat2::finite() const {
  return std::isfinite(xx_) && std::isfinite(xy_) && std::isfinite(yy_);
}

double SymMat3::max_abs() const {
  return std::max({std::abs(xx_), std::abs(xy_), std::abs(xz_), std::abs(yy_), std::abs(yz_),
                   std::abs(zz_)});
}

bool SymMat3::finite() const {
  return std::isfinite(xx_) && std::isfinite(xy_) && std::isfinite(xz_) && std::isfinite(yy_) &&
         std::isfinite(yz_) && std::isfinite(zz_);
}

EigDecomp3 eig_sym(const SymMat3& m) {
  if (!m.finite()) throw Error(Errc::non_finite, "eig_sym input has NaN/Inf entries");
  Full<3> a{}, v{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = m(i, j);
  jacobi<3>(a, v);
  std::array<double, 3> vals = {a[0][0], a[1][1], a[2][2]};
  sort_and_fix_signs<3>(vals, v);
  EigDecomp3 out;
  out.values = vals;
  for (int k = 0; k < 3; ++k) out.vectors[k] = {v[0][k], v[1][k], v[2][k]};
  return out;
}

EigDecomp2 eig_sym(const SymMat2& m) {
  if (!m.finite()) throw Error(Errc::non_finite, "eig_sym input has NaN/Inf entries");
  Full<2> a{}, v{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a[i][j] = m(i, j);
  jacobi<2>(a, v);
  std::array<double, 2> vals = {a[0][0], a[1][1]};
  sort_and_fix_signs<2>(vals, v);
  EigDecomp2 out;
  out.values = vals;
  for (int k = 0; k < 2; ++k) out.vectors[k] = {v[0][k], v[1][k]};
  return out;
}

SymMat3 sherman_morrison_inv(const SymMat3& xinv, const Vec3& y, double scale) {
  const Vec3 u = xinv * y;
  const double denom = 1.0 + scale * y.dot(u);
  if (std::abs(denom) <= 1e-14)
    throw Error(Errc::singular_update, "rank-1 inverse update denominator near zero");
  return xinv - SymMat3::outer(u) * (scale / denom);
}

GeneralizedExtremes generalized_eig_extremes(const SymMat3& x, const SymMat3& y) {
  const EigDecomp3 ey = eig_sym(y);
  if (ey.values[0] <= 1e-12 * std::max(1.0, y.trace()))
    throw Error(Errc::not_positive_definite, "Y in generalized eigenproblem");

  // Y^{-1/2} from the eigensystem of Y
  SymMat3 yis{};
  for (int k = 0; k < 3; ++k) yis += SymMat3::outer(ey.vectors[k]) * (1.0 / std::sqrt(ey.values[k]));

  // Z = Y^{-1/2} X Y^{-1/2}, symmetrized against rounding
  const Vec3 c0 = x * Vec3{yis(0, 0), yis(0, 1), yis(0, 2)};
  const Vec3 c1 = x * Vec3{yis(0, 1), yis(1, 1), yis(1, 2)};
  const Vec3 c2 = x * Vec3{yis(0, 2), yis(1, 2), yis(2, 2)};
  const Vec3 z0 = {yis(0, 0) * c0.x + yis(0, 1) * c0.y + yis(0, 2) * c0.z,
                   yis(0, 0) * c1.x + yis(0, 1) * c1.y + yis(0, 2) * c1.z,
                   yis(0, 0) * c2.x + yis(0, 1) * c2.y + yis(0, 2) * c2.z};
  const Vec3 z1 = {yis(0, 1) * c0.x + yis(1, 1) * c0.y + yis(1, 2) * c0.z,
                   yis(0, 1) * c1.x + yis(1, 1) * c1.y + yis(1, 2) * c1.z,
                   yis(0, 1) * c2.x + yis(1, 1) * c2.y + yis(1, 2) * c2.z};
  const Vec3 z2 = {yis(0, 2) * c0.x + yis(1, 2) * c0.y + yis(2, 2) * c0.z,
                   yis(0, 2) * c1.x + yis(1, 2) * c1.y + yis(2, 2) * c1.z,
                   yis(0, 2) * c2.x + yis(1, 2) * c2.y + yis(2, 2) * c2.z};
  const SymMat3 z{z0.x, 0.5 * (z0.y + z1.x), 0.5 * (z0.z + z2.x),
                  z1.y, 0.5 * (z1.z + z2.y), z2.z};

  const EigDecomp3 ez = eig_sym(z);
  return {ez.values[0], ez.values[2], ez.vectors[0], ez.vectors[2]};
}

bool interlacing_check(const EigDecomp3& before, const EigDecomp3& after, double epsilon) {
  const auto& lx = before.values;
  const auto& ly = after.values;
  double scale = std::abs(epsilon);
  for (double v : lx) scale = std::max(scale, std::abs(v));
  const double tol = 1e-9 * std::max(1.0, scale);

  if (epsilon >= 0.0) {
    // lambda_i(X) <= lambda_i(Y) <= lambda_{i+1}(X), lambda_n(Y) <= lambda_n(X) + eps
    for (int i = 0; i < 3; ++i)
      if (lx[i] > ly[i] + tol) return false;
    for (int i = 0; i < 2; ++i)
      if (ly[i] > lx[i + 1] + tol) return false;
    return ly[2] <= lx[2] + epsilon + tol;
  }
  // epsilon < 0: lambda_1(X) + eps <= lambda_1(Y), lambda_i(Y) <= lambda_i(X),
  // lambda_i(X) <= lambda_{i+1}(Y)
  if (ly[0] < lx[0] + epsilon - tol) return false;
  for (int i = 0; i < 3; ++i)
    if (ly[i] > lx[i] + tol) return false;
  for (int i = 0; i < 2; ++i)
    if (lx[i] > ly[i + 1] + tol) return false;
  return true;
}

double trace_constrained_optimum(double trace_k) {
  if (!(trace_k > 0.0))
    throw Error(Errc::non_positive_trace, "trace constraint must be positive");
  return 6.0 / trace_k;
}

SymMat3 inverse_spd(const SymMat3& a, Errc code) {
  const EigDecomp3 e = eig_sym(a);
  if (e.values[0] <= 1e-12 * std::max(1.0, a.trace()))
    throw Error(code, "matrix not positive definite within tolerance");
  SymMat3 inv{};
  for (int k = 0; k < 3; ++k) inv += SymMat3::outer(e.vectors[k]) * (1.0 / e.values[k]);
  return inv;
}

SymMat2 inverse_spd(const SymMat2& a, Errc code) {
  const EigDecomp2 e = eig_sym(a);
  if (e.values[0] <= 1e-12 * std::max(1.0, a.trace()))
    throw Error(code, "matrix not positive definite within tolerance");
  return SymMat2::outer(e.vectors[0]) * (1.0 / e.values[0]) +
         SymMat2::outer(e.vectors[1]) * (1.0 / e.values[1]);
}

}  // namespace rndop
