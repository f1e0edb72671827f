#pragma once

#include <functional>
#include <vector>

#include "sldg/mesh.hpp"
#include "sldg/polybasis.hpp"

namespace sldg {

struct Solution1D {
  Mesh1D mesh;
  int k = 0;
  double time = 0.0;
  std::vector<double> c;  // n*(k+1), cell-major

  Solution1D() = default;
  Solution1D(const Mesh1D& m, int degree);

  int nb() const { return k + 1; }
  double* cell(int j) { return c.data() + static_cast<size_t>(j) * nb(); }
  const double* cell(int j) const { return c.data() + static_cast<size_t>(j) * nb(); }
  ModalPoly1D poly(int j) const;
  double eval(double x) const;
  double mass() const;
  double l2_norm() const;
};

Solution1D project_1d(const std::function<double(double)>& f, const Mesh1D& m, int k);

// One modal polynomial per cell of a Cartesian mesh, in P^k or Q^k.
struct Solution2D {
  Mesh2D mesh;
  Basis2D basis;
  double time = 0.0;
  std::vector<double> c;  // ncells*nb, cell index j*nx+i

  Solution2D() = default;
  Solution2D(const Mesh2D& m, Space space, int k);

  int k() const { return basis.k; }
  Space space() const { return basis.space; }
  int nb() const { return basis.n; }
  double* cell(int i, int j) { return c.data() + static_cast<size_t>(mesh.index(i, j)) * nb(); }
  const double* cell(int i, int j) const { return c.data() + static_cast<size_t>(mesh.index(i, j)) * nb(); }
  ModalPoly2D poly(int i, int j) const;
  double eval(double x, double y) const;
  double mass() const;
  // Integral of |u| with (k+3)^2 Gauss points per cell.
  double abs_mass() const;
  double l2_norm() const;
};

Solution2D project_2d(const std::function<double(double, double)>& f, const Mesh2D& m, Space space, int k);

}  // namespace sldg
