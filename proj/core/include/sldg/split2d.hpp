#pragma once

#include <functional>
#include <vector>

#include "sldg/sldg1d.hpp"
#include "sldg/solution.hpp"

namespace sldg {

enum class Axis { x, y };

using Scalar2D = std::function<double(double x, double y, double t)>;

// Lines along `axis`, one per (transverse cell, transverse Gauss node).
struct LineFamily {
  Axis axis = Axis::x;
  int k = 0;
  std::vector<double> transverse;  // physical coordinate of each line
  std::vector<Solution1D> lines;    // index = cell * (k+1) + q
};

LineFamily extract_lines(const Solution2D& u, Axis axis);
// `like` supplies mesh and basis; the family must be complete.
Solution2D insert_lines(const LineFamily& family, const Solution2D& like);

// Builds the velocity of the line at transverse cell `cell`, node `q`,
// physical transverse coordinate `pos`.
using LineVelocityFactory = std::function<LineVelocity(int cell, int q, double pos)>;

// One 1D SLDG sweep of every line along `axis` over [t0, t0+dt], in place.
void sweep(Solution2D& u, Axis axis, const LineVelocityFactory& vel, double t0, double dt, int substeps);

// a(x, y_q, t) along x-lines and b(x_p, y, t) along y-lines.
LineVelocityFactory line_velocity_from(const Scalar2D& a, Axis axis, const Mesh2D& mesh);

// Half x, full y, half x. u must be a Q^k solution.
Solution2D strang_step(const Solution2D& u, const Scalar2D& a, const Scalar2D& b, double t0, double dt,
                       int substeps);
Solution2D strang_step(const Solution2D& u, const LineVelocityFactory& ax, const LineVelocityFactory& by, double t0,
                       double dt, int substeps);

}  // namespace sldg
