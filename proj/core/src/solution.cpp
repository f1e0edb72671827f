#include "sldg/solution.hpp"

#include <cmath>

#include "sldg/quadrature.hpp"

namespace sldg {

Solution1D::Solution1D(const Mesh1D& m, int degree) : mesh(m), k(degree), c(static_cast<size_t>(m.n) * (degree + 1)) {}

ModalPoly1D Solution1D::poly(int j) const {
  ModalPoly1D p(k);
  for (int m = 0; m <= k; ++m) p.c[m] = cell(j)[m];
  return p;
}

double Solution1D::eval(double x) const {
  const CellLocation loc = locate_cell(x, mesh);
  return eval_1d(cell(loc.cell), k, loc.local);
}

double Solution1D::mass() const {
  double s = 0.0;
  for (int j = 0; j < mesh.n; ++j) s += cell(j)[0];
  return s * mesh.dx;
}

double Solution1D::l2_norm() const {
  double s = 0.0;
  for (int j = 0; j < mesh.n; ++j)
    for (int m = 0; m <= k; ++m) s += cell(j)[m] * cell(j)[m] * legendre_norm2(m);
  return std::sqrt(0.5 * mesh.dx * s);
}

Solution1D project_1d(const std::function<double(double)>& f, const Mesh1D& m, int k) {
  Solution1D u(m, k);
  for (int j = 0; j < m.n; ++j) {
    const ModalPoly1D p = l2_project(f, m.face(j), m.face(j + 1), k);
    for (int q = 0; q <= k; ++q) u.cell(j)[q] = p.c[q];
  }
  return u;
}

Solution2D::Solution2D(const Mesh2D& m, Space space, int k)
    : mesh(m), basis(Basis2D::make(space, k)), c(static_cast<size_t>(m.ncells()) * basis.n) {}

ModalPoly2D Solution2D::poly(int i, int j) const {
  ModalPoly2D p(basis.space, basis.k);
  for (int m = 0; m < basis.n; ++m) p.c[m] = cell(i, j)[m];
  return p;
}

double Solution2D::eval(double x, double y) const {
  const CellLocation2D loc = locate_cell(x, y, mesh);
  return eval_2d(basis, cell(loc.i, loc.j), loc.xi, loc.eta);
}

double Solution2D::mass() const {
  double s = 0.0;
  const size_t n = static_cast<size_t>(mesh.ncells());
  for (size_t q = 0; q < n; ++q) s += c[q * nb()];
  return s * mesh.cell_area();
}

double Solution2D::abs_mass() const {
  const QuadratureRule& g = gauss_legendre(k() + 3);
  double s = 0.0;
  for (int j = 0; j < mesh.ny(); ++j)
    for (int i = 0; i < mesh.nx(); ++i)
      for (int a = 0; a < g.size(); ++a)
        for (int b = 0; b < g.size(); ++b)
          s += g.weights[a] * g.weights[b] * std::abs(eval_2d(basis, cell(i, j), g.nodes[a], g.nodes[b]));
  return 0.25 * mesh.cell_area() * s;
}

double Solution2D::l2_norm() const {
  double s = 0.0;
  const size_t n = static_cast<size_t>(mesh.ncells());
  for (size_t q = 0; q < n; ++q)
    for (int m = 0; m < nb(); ++m) s += c[q * nb() + m] * c[q * nb() + m] * basis.norm2(m);
  return std::sqrt(0.25 * mesh.cell_area() * s);
}

Solution2D project_2d(const std::function<double(double, double)>& f, const Mesh2D& m, Space space, int k) {
  Solution2D u(m, space, k);
  for (int j = 0; j < m.ny(); ++j)
    for (int i = 0; i < m.nx(); ++i)
      l2_project_into(f, m.x.face(i), m.x.face(i + 1), m.y.face(j), m.y.face(j + 1), u.basis, u.cell(i, j));
  return u;
}

}  // namespace sldg
