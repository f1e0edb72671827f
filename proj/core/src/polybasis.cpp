#include "sldg/polybasis.hpp"

#include <algorithm>
#include <string>

#include "sldg/error.hpp"
#include "sldg/quadrature.hpp"

namespace sldg {
namespace {

constexpr int kTable = 12;

struct MonomialTable {
  double v[kTable][kTable] = {};
  MonomialTable() {
    v[0][0] = 1.0;
    v[1][1] = 1.0;
    for (int m = 2; m < kTable; ++m)
      for (int p = 0; p <= m; ++p) {
        const double up = p > 0 ? v[m - 1][p - 1] : 0.0;
        v[m][p] = ((2 * m - 1) * up - (m - 1) * v[m - 2][p]) / m;
      }
  }
};

const MonomialTable& table() {
  static const MonomialTable t;
  return t;
}

}  // namespace

double legendre_monomial(int m, int p) {
  if (m < 0 || m >= kTable || p < 0 || p >= kTable) return 0.0;
  return table().v[m][p];
}

Basis2D Basis2D::make(Space space, int k) {
  if (k < 0 || k > kMaxDegree) throw ConfigError("polynomial degree must be in [0, 3], got " + std::to_string(k));
  Basis2D B;
  B.space = space;
  B.k = k;
  int m = 0;
  if (space == Space::P) {
    for (int d = 0; d <= k; ++d)
      for (int a = d; a >= 0; --a) {
        B.a[m] = a;
        B.b[m] = d - a;
        ++m;
      }
  } else {
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b) {
        B.a[m] = a;
        B.b[m] = b;
        ++m;
      }
  }
  B.n = m;
  return B;
}

int Basis2D::find(int da, int db) const {
  for (int m = 0; m < n; ++m)
    if (a[m] == da && b[m] == db) return m;
  return -1;
}

void Basis2D::eval_all(double xi, double eta, double* out) const {
  double px[kMaxDegree + 1], py[kMaxDegree + 1];
  legendre_all(k, xi, px);
  legendre_all(k, eta, py);
  for (int m = 0; m < n; ++m) out[m] = px[a[m]] * py[b[m]];
}

double eval_1d(const double* c, int k, double xi) {
  double p[kMaxDegree + 1];
  legendre_all(k, xi, p);
  double s = 0.0;
  for (int m = 0; m <= k; ++m) s += c[m] * p[m];
  return s;
}

double eval_2d(const Basis2D& basis, const double* c, double xi, double eta) {
  double phi[kMaxBasis];
  basis.eval_all(xi, eta, phi);
  double s = 0.0;
  for (int m = 0; m < basis.n; ++m) s += c[m] * phi[m];
  return s;
}

// Fixed and generous: the quadrature error of a projection of smooth data on
// coarse cells then sits far below round-off of the coefficients.
constexpr int kProjectionPoints = 10;

ModalPoly1D l2_project(const std::function<double(double)>& f, double x0, double x1, int k) {
  if (k < 0 || k > kMaxDegree) throw ConfigError("polynomial degree must be in [0, 3]");
  ModalPoly1D p(k);
  const QuadratureRule& g = gauss_legendre(kProjectionPoints);
  double phi[kMaxDegree + 1];
  for (int q = 0; q < g.size(); ++q) {
    const double xi = g.nodes[q];
    const double v = f(0.5 * (x0 + x1) + 0.5 * (x1 - x0) * xi);
    legendre_all(k, xi, phi);
    for (int m = 0; m <= k; ++m) p.c[m] += g.weights[q] * v * phi[m];
  }
  for (int m = 0; m <= k; ++m) p.c[m] /= legendre_norm2(m);
  return p;
}

void l2_project_into(const std::function<double(double, double)>& f, double x0, double x1, double y0, double y1,
                     const Basis2D& basis, double* out) {
  const QuadratureRule& g = gauss_legendre(kProjectionPoints);
  std::fill(out, out + basis.n, 0.0);
  double phi[kMaxBasis];
  for (int qx = 0; qx < g.size(); ++qx)
    for (int qy = 0; qy < g.size(); ++qy) {
      const double xi = g.nodes[qx], eta = g.nodes[qy];
      const double v = f(0.5 * (x0 + x1) + 0.5 * (x1 - x0) * xi, 0.5 * (y0 + y1) + 0.5 * (y1 - y0) * eta);
      const double w = g.weights[qx] * g.weights[qy] * v;
      basis.eval_all(xi, eta, phi);
      for (int m = 0; m < basis.n; ++m) out[m] += w * phi[m];
    }
  for (int m = 0; m < basis.n; ++m) out[m] /= basis.norm2(m);
}

ModalPoly2D l2_project(const std::function<double(double, double)>& f, double x0, double x1, double y0, double y1,
                       int k, Space space) {
  ModalPoly2D p(space, k);
  l2_project_into(f, x0, x1, y0, y1, p.basis, p.c.data());
  return p;
}

double integrate_product(const ModalPoly1D& pA, const ModalPoly1D& pB, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  const QuadratureRule& g = gauss_legendre((pA.k + pB.k) / 2 + 1);
  double s = 0.0;
  for (int q = 0; q < g.size(); ++q) {
    const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * g.nodes[q];
    s += g.weights[q] * pA.eval(x) * pB.eval(x);
  }
  return 0.5 * (hi - lo) * s;
}

double integrate_product(const ModalPoly2D& pA, const ModalPoly2D& pB, double x0, double x1, double y0, double y1) {
  if (!(x1 > x0) || !(y1 > y0)) return 0.0;
  const QuadratureRule& g = gauss_legendre((pA.basis.k + pB.basis.k) / 2 + 1);
  double s = 0.0;
  for (int qx = 0; qx < g.size(); ++qx)
    for (int qy = 0; qy < g.size(); ++qy) {
      const double x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * g.nodes[qx];
      const double y = 0.5 * (y0 + y1) + 0.5 * (y1 - y0) * g.nodes[qy];
      s += g.weights[qx] * g.weights[qy] * pA.eval(x, y) * pB.eval(x, y);
    }
  return 0.25 * (x1 - x0) * (y1 - y0) * s;
}

void legendre_to_monomial_1d(int k, const double* c, double* mono) {
  for (int p = 0; p <= k; ++p) {
    double s = 0.0;
    for (int m = p; m <= k; ++m) s += c[m] * table().v[m][p];
    mono[p] = s;
  }
}

void legendre_to_monomial_2d(const Basis2D& basis, const double* c, double* mono) {
  const int K = basis.k + 1;
  std::fill(mono, mono + K * K, 0.0);
  const auto& L = table().v;
  for (int m = 0; m < basis.n; ++m) {
    const int a = basis.a[m], b = basis.b[m];
    if (c[m] == 0.0) continue;
    for (int p = 0; p <= a; ++p) {
      if (L[a][p] == 0.0) continue;
      for (int q = 0; q <= b; ++q) mono[p * K + q] += c[m] * L[a][p] * L[b][q];
    }
  }
}

void project_between(const Basis2D& from, const double* c, const Basis2D& to, double* out) {
  for (int m = 0; m < to.n; ++m) {
    const int src = from.find(to.a[m], to.b[m]);
    out[m] = src >= 0 ? c[src] : 0.0;
  }
}

}  // namespace sldg
