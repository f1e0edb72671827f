#include "sldg/sldg1d.hpp"

#include <cmath>
#include <string>

#include "sldg/error.hpp"
#include "sldg/quadrature.hpp"

namespace sldg {
namespace {

constexpr double kSnap = 1e-12;

inline double snap(double X) {
  const double r = std::nearbyint(X);
  return std::abs(X - r) <= kSnap ? r : X;
}

// Solve V beta_m = Psi_m(nodes) for all m; V_{qp} = s_q^p. beta[m][p].
void vandermonde_solve(int k, const double* s, const double* gl_nodes, double beta[][kMaxDegree + 1]) {
  const int n = k + 1;
  double A[kMaxDegree + 1][kMaxDegree + 1];
  double B[kMaxDegree + 1][kMaxDegree + 1];
  for (int q = 0; q < n; ++q) {
    double pw = 1.0;
    for (int p = 0; p < n; ++p) {
      A[q][p] = pw;
      pw *= s[q];
    }
    legendre_all(k, gl_nodes[q], B[q]);
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (piv != col)
      for (int c = 0; c < n; ++c) {
        std::swap(A[col][c], A[piv][c]);
        std::swap(B[col][c], B[piv][c]);
      }
    const double d = A[col][col];
    for (int r = col + 1; r < n; ++r) {
      const double f = A[r][col] / d;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      for (int m = 0; m < n; ++m) B[r][m] -= f * B[col][m];
    }
  }
  for (int m = 0; m < n; ++m)
    for (int r = n - 1; r >= 0; --r) {
      double v = B[r][m];
      for (int c = r + 1; c < n; ++c) v -= A[r][c] * beta[m][c];
      beta[m][r] = v / A[r][r];
    }
  // Constants are flow-invariant; keep Psi*_0 exact for conservation.
  beta[0][0] = 1.0;
  for (int p = 1; p < n; ++p) beta[0][p] = 0.0;
}

void check_feet(const double* X, int k, int cell) {
  for (int q = 0; q < k; ++q) {
    const double gap = X[q + 1] - X[q];
    if (!(gap > 0.0))
      throw CharacteristicCrossingError("characteristic feet cross in cell " + std::to_string(cell));
    if (gap < kSnap) throw ConditioningError("near-coincident characteristic feet in cell " + std::to_string(cell));
  }
}

// Feet in index coordinates, X[0] and X[k] are the face feet. Writes k+1
// coefficients of the updated cell.
void cell_update(int k, int n, const double* X, const double* in, double* out, int cell) {
  check_feet(X, k, cell);
  const QuadratureRule& gl = gauss_lobatto(k + 1);
  const QuadratureRule& g = gauss_legendre(k + 1);
  const double Xc = 0.5 * (X[0] + X[k]);
  double s[kMaxDegree + 1];
  for (int q = 0; q <= k; ++q) s[q] = 2.0 * (X[q] - Xc);
  double beta[kMaxDegree + 1][kMaxDegree + 1];
  if (k == 0) {
    beta[0][0] = 1.0;
  } else {
    vandermonde_solve(k, s, gl.nodes.data(), beta);
  }
  double rhs[kMaxDegree + 1] = {};
  const double Xa = X[0], Xb = X[k];
  for (int l = static_cast<int>(std::floor(Xa)); l < Xb; ++l) {
    const double a = std::max(Xa, static_cast<double>(l));
    const double b = std::min(Xb, static_cast<double>(l + 1));
    const double len = b - a;
    if (len < kSnap) continue;
    const double* ul = in + static_cast<size_t>(wrap_index(l, n)) * (k + 1);
    for (int q = 0; q < g.size(); ++q) {
      const double Xq = 0.5 * (a + b) + 0.5 * len * g.nodes[q];
      const double uval = eval_1d(ul, k, 2.0 * (Xq - l) - 1.0);
      const double sq = 2.0 * (Xq - Xc);
      const double w = 0.5 * len * g.weights[q] * uval;
      for (int m = 0; m <= k; ++m) {
        double psi = beta[m][k];
        for (int p = k - 1; p >= 0; --p) psi = psi * sq + beta[m][p];
        rhs[m] += w * psi;
      }
    }
  }
  for (int m = 0; m <= k; ++m) out[m] = rhs[m] * (2 * m + 1);
}

}  // namespace

LineVelocity LineVelocity::constant(double value) {
  LineVelocity v;
  v.kind = Kind::constant;
  v.c = value;
  return v;
}

LineVelocity LineVelocity::piecewise(const Mesh1D& m, int degree, std::vector<double> coefficients) {
  LineVelocity v;
  v.kind = Kind::piecewise;
  v.mesh = m;
  v.deg = degree;
  v.coef = std::move(coefficients);
  return v;
}

LineVelocity LineVelocity::function(Field1D fn) {
  LineVelocity v;
  v.kind = Kind::function;
  v.f = std::move(fn);
  return v;
}

double TestPolyStar1D::eval(double x) const {
  const double s = (x - center) / half;
  double v = mono[k];
  for (int p = k - 1; p >= 0; --p) v = v * s + mono[p];
  return v;
}

namespace {

double foot_index(const Mesh1D& mesh, const LineVelocity& a, double X, double t_end, double dt, int substeps) {
  if (a.kind == LineVelocity::Kind::constant) return snap(X - a.c * dt / mesh.dx);
  const double x = mesh.lo + X * mesh.dx;
  const double xf = rk4_back_1d(a, x, t_end, t_end - dt, substeps);
  return snap(mesh.to_index(xf));
}

}  // namespace

UpstreamInterval build_upstream_interval(const Mesh1D& mesh, int j, const LineVelocity& a, double t_end, double dt,
                                         int k, int substeps) {
  const QuadratureRule& gl = gauss_lobatto(std::max(2, k + 1));
  UpstreamInterval up;
  up.cell = j;
  std::vector<double> X(k + 1);
  for (int q = 0; q <= k; ++q) {
    const double Xn = k == 0 ? (q == 0 ? j : j + 1.0) : j + 0.5 * (gl.nodes[q] + 1.0);
    up.nodes.push_back(mesh.lo + Xn * mesh.dx);
    X[q] = foot_index(mesh, a, Xn, t_end, dt, substeps);
  }
  if (k == 0) X.push_back(foot_index(mesh, a, j + 1.0, t_end, dt, substeps));
  check_feet(X.data(), static_cast<int>(X.size()) - 1, j);
  for (double v : X) up.feet.push_back(mesh.lo + v * mesh.dx);
  const double Xa = X.front(), Xb = X.back();
  up.left = mesh.lo + Xa * mesh.dx;
  up.right = mesh.lo + Xb * mesh.dx;
  for (int l = static_cast<int>(std::floor(Xa)); l < Xb; ++l) {
    const double s0 = std::max(Xa, static_cast<double>(l));
    const double s1 = std::min(Xb, static_cast<double>(l + 1));
    if (s1 - s0 < kSnap) continue;
    up.subs.push_back({wrap_index(l, mesh.n), l, mesh.lo + s0 * mesh.dx, mesh.lo + s1 * mesh.dx});
  }
  return up;
}

TestPolyStar1D interpolate_test_poly(const UpstreamInterval& up, const Mesh1D& mesh, int k, int m) {
  TestPolyStar1D t;
  t.k = k;
  t.half = 0.5 * mesh.dx;
  t.center = 0.5 * (up.left + up.right);
  if (k == 0) {
    t.mono[0] = 1.0;
    return t;
  }
  const QuadratureRule& gl = gauss_lobatto(k + 1);
  double s[kMaxDegree + 1] = {};
  for (int q = 0; q <= k; ++q) s[q] = (up.feet[q] - t.center) / t.half;
  for (int q = 0; q < k; ++q)
    if (s[q + 1] - s[q] < kSnap) throw ConditioningError("near-coincident feet in cell " + std::to_string(up.cell));
  double beta[kMaxDegree + 1][kMaxDegree + 1];
  vandermonde_solve(k, s, gl.nodes.data(), beta);
  for (int p = 0; p <= k; ++p) t.mono[p] = beta[m][p];
  return t;
}

void advance_line(const Mesh1D& mesh, int k, const double* in, double* out, const LineVelocity& a, double t0,
                  double dt, int substeps, Workspace1D& ws) {
  const int n = mesh.n;
  const double t_end = t0 + dt;
  ws.faces.resize(n + 1);
  for (int j = 0; j < n; ++j) ws.faces[j] = foot_index(mesh, a, j, t_end, dt, substeps);
  ws.faces[n] = ws.faces[0] + n;
  const int ni = std::max(0, k - 1);
  ws.interior.resize(static_cast<size_t>(n) * ni);
  if (ni > 0) {
    const QuadratureRule& gl = gauss_lobatto(k + 1);
    for (int j = 0; j < n; ++j)
      for (int q = 1; q < k; ++q)
        ws.interior[static_cast<size_t>(j) * ni + q - 1] =
            foot_index(mesh, a, j + 0.5 * (gl.nodes[q] + 1.0), t_end, dt, substeps);
  }
  double X[kMaxDegree + 2];
  for (int j = 0; j < n; ++j) {
    X[0] = ws.faces[j];
    for (int q = 1; q < k; ++q) X[q] = ws.interior[static_cast<size_t>(j) * ni + q - 1];
    X[std::max(k, 1)] = ws.faces[j + 1];
    if (k == 0) {
      // Degree 0: only the face feet matter.
      if (!(X[1] > X[0])) throw CharacteristicCrossingError("characteristic feet cross in cell " + std::to_string(j));
      double rhs = 0.0;
      for (int l = static_cast<int>(std::floor(X[0])); l < X[1]; ++l) {
        const double len = std::min(X[1], l + 1.0) - std::max(X[0], static_cast<double>(l));
        if (len >= kSnap) rhs += len * in[wrap_index(l, n)];
      }
      out[j] = rhs;
      continue;
    }
    cell_update(k, n, X, in, out + static_cast<size_t>(j) * (k + 1), j);
  }
}

Solution1D step_1d(const Solution1D& u, const LineVelocity& a, double dt, int substeps) {
  Solution1D v(u.mesh, u.k);
  Workspace1D ws;
  advance_line(u.mesh, u.k, u.c.data(), v.c.data(), a, u.time, dt, substeps, ws);
  v.time = u.time + dt;
  return v;
}

}  // namespace sldg
