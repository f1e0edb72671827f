#pragma once

#include <algorithm>
#include <cmath>

namespace sldg {

struct Mesh1D {
  double lo = 0.0;
  double hi = 1.0;
  int n = 1;
  double dx = 1.0;

  double length() const { return hi - lo; }
  // x_{j-1/2}; face(n) == hi.
  double face(int j) const { return j == n ? hi : lo + j * dx; }
  double center(int j) const { return lo + (j + 0.5) * dx; }
  double eps() const { return 1e-12 * dx; }
  double to_physical(int j, double xi) const { return center(j) + 0.5 * dx * xi; }
  // Index coordinate: grid faces sit at integers.
  double to_index(double x) const { return (x - lo) / dx; }
};

Mesh1D build_mesh_1d(double lo, double hi, int n);

inline int wrap_index(int i, int n) {
  int r = i % n;
  return r < 0 ? r + n : r;
}

double wrap_periodic(double x, const Mesh1D& m);

struct CellLocation {
  int cell = 0;
  double local = 0.0;  // in [-1, 1)
};

CellLocation locate_cell(double x, const Mesh1D& m);

struct Mesh2D {
  Mesh1D x;
  Mesh1D y;

  int nx() const { return x.n; }
  int ny() const { return y.n; }
  int ncells() const { return x.n * y.n; }
  int index(int i, int j) const { return j * x.n + i; }
  double area() const { return x.length() * y.length(); }
  double cell_area() const { return x.dx * y.dx; }
  double eps() const { return 1e-12 * std::max(x.dx, y.dx); }
};

Mesh2D build_mesh_2d(double xlo, double xhi, int nx, double ylo, double yhi, int ny);

struct CellLocation2D {
  int i = 0;
  int j = 0;
  double xi = 0.0;
  double eta = 0.0;
};

CellLocation2D locate_cell(double x, double y, const Mesh2D& m);

}  // namespace sldg
