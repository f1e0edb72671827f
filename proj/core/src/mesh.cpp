#include "sldg/mesh.hpp"

#include <string>

#include "sldg/error.hpp"

namespace sldg {

Mesh1D build_mesh_1d(double lo, double hi, int n) {
  if (n < 1) throw ConfigError("mesh needs at least one cell, got " + std::to_string(n));
  if (!(lo < hi)) throw ConfigError("mesh interval is empty");
  Mesh1D m;
  m.lo = lo;
  m.hi = hi;
  m.n = n;
  m.dx = (hi - lo) / n;
  return m;
}

double wrap_periodic(double x, const Mesh1D& m) {
  const double L = m.length();
  double r = std::fmod(x - m.lo, L);
  if (r < 0) r += L;
  if (r >= L) r -= L;
  double out = m.lo + r;
  if (out >= m.hi) out = m.lo;
  return out;
}

CellLocation locate_cell(double x, const Mesh1D& m) {
  double s = m.to_index(x);
  const double near = std::nearbyint(s);
  if (std::abs(s - near) <= 1e-12) s = near;
  double fl = std::floor(s);
  CellLocation loc;
  loc.cell = wrap_index(static_cast<int>(fl), m.n);
  loc.local = 2.0 * (s - fl) - 1.0;
  return loc;
}

Mesh2D build_mesh_2d(double xlo, double xhi, int nx, double ylo, double yhi, int ny) {
  Mesh2D m;
  m.x = build_mesh_1d(xlo, xhi, nx);
  m.y = build_mesh_1d(ylo, yhi, ny);
  return m;
}

CellLocation2D locate_cell(double x, double y, const Mesh2D& m) {
  const CellLocation a = locate_cell(x, m.x);
  const CellLocation b = locate_cell(y, m.y);
  return {a.cell, b.cell, a.local, b.local};
}

}  // namespace sldg
