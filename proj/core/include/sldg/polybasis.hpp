#pragma once

#include <array>
#include <functional>
#include <vector>

namespace sldg {

// Modal Legendre bases. 1D: P_m(xi), m = 0..k. 2D: P_a(xi) P_b(eta) with
// a + b <= k (space P, graded: (0,0),(1,0),(0,1),(2,0),(1,1),(0,2),...) or
// a, b <= k (space Q, index a*(k+1) + b).
inline constexpr int kMaxDegree = 3;
inline constexpr int kMaxBasis = (kMaxDegree + 1) * (kMaxDegree + 1);

enum class Space { P, Q };

inline void legendre_all(int k, double x, double* out) {
  out[0] = 1.0;
  if (k >= 1) out[1] = x;
  for (int m = 2; m <= k; ++m) out[m] = ((2 * m - 1) * x * out[m - 1] - (m - 1) * out[m - 2]) / m;
}

inline double legendre_norm2(int m) { return 2.0 / (2 * m + 1); }

// Coefficient of x^p in P_m(x).
double legendre_monomial(int m, int p);

struct Basis2D {
  Space space = Space::P;
  int k = 0;
  int n = 1;
  std::array<int, kMaxBasis> a{};
  std::array<int, kMaxBasis> b{};

  static Basis2D make(Space space, int k);
  static int size(Space space, int k) { return space == Space::P ? (k + 1) * (k + 2) / 2 : (k + 1) * (k + 1); }
  double norm2(int m) const { return legendre_norm2(a[m]) * legendre_norm2(b[m]); }
  int find(int da, int db) const;
  void eval_all(double xi, double eta, double* out) const;
};

double eval_1d(const double* c, int k, double xi);
double eval_2d(const Basis2D& basis, const double* c, double xi, double eta);

struct ModalPoly1D {
  int k = 0;
  std::vector<double> c;

  ModalPoly1D() = default;
  explicit ModalPoly1D(int degree) : k(degree), c(degree + 1, 0.0) {}
  double eval(double xi) const { return eval_1d(c.data(), k, xi); }
};

struct ModalPoly2D {
  Basis2D basis;
  std::vector<double> c;

  ModalPoly2D() = default;
  ModalPoly2D(Space space, int k) : basis(Basis2D::make(space, k)), c(basis.n, 0.0) {}
  double eval(double xi, double eta) const { return eval_2d(basis, c.data(), xi, eta); }
};

// L2 projection onto the cell [x0,x1] (or [x0,x1]x[y0,y1]) with 10 Gauss
// points per direction. f takes physical coordinates.
ModalPoly1D l2_project(const std::function<double(double)>& f, double x0, double x1, int k);
ModalPoly2D l2_project(const std::function<double(double, double)>& f, double x0, double x1, double y0, double y1,
                       int k, Space space);
void l2_project_into(const std::function<double(double, double)>& f, double x0, double x1, double y0, double y1,
                     const Basis2D& basis, double* out);

// Exact integral of pA*pB over a sub-interval / sub-rectangle in reference
// coordinates. Inverted or empty regions give 0.
double integrate_product(const ModalPoly1D& pA, const ModalPoly1D& pB, double lo, double hi);
double integrate_product(const ModalPoly2D& pA, const ModalPoly2D& pB, double x0, double x1, double y0, double y1);

// Monomial form: mono[p] is the coefficient of xi^p.
void legendre_to_monomial_1d(int k, const double* c, double* mono);
// mono[a*(k+1)+b] is the coefficient of xi^a eta^b; size (k+1)^2.
void legendre_to_monomial_2d(const Basis2D& basis, const double* c, double* mono);

// Coefficients of a Q polynomial restricted to P^r: modes with a+b <= r are
// kept (orthogonality makes this the L2 projection), missing ones are zero.
void project_between(const Basis2D& from, const double* c, const Basis2D& to, double* out);

}  // namespace sldg
