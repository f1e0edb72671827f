#pragma once

#include <array>
#include <vector>

#include "sldg/solution.hpp"
#include "sldg/trace.hpp"
#include "sldg/upstream.hpp"

namespace sldg {

enum class UpstreamMode { quad, qc };

// Traced geometry of the upstream cell of (i, j), in index coordinates.
// Corners are counterclockwise from (i, j); edge e runs corner e -> e+1 and
// mids[e] is the foot of its midpoint.
struct UpstreamCell {
  int i = 0, j = 0;
  UpstreamMode mode = UpstreamMode::quad;
  bool has_mids = false;
  std::array<Point, 4> corners{};
  std::array<Point, 4> mids{};
  Point center{};

  std::vector<Piece> boundary() const;
  double corner_area() const;  // shoelace of the corner polygon
};

// Psi*(X, Y) = sum p[m] Z^a W^b, (a, b) in the graded P^k order, with
// Z = 2(X - Xc), W = 2(Y - Yc) and (Xc, Yc) the centroid of the corner feet.
struct TestPolyStar2D {
  int k = 0;
  double Xc = 0.0, Yc = 0.0;
  std::array<double, kMaxBasis> p{};
  double residual = 0.0;  // max abs misfit at the constraint points

  double eval_index(double X, double Y) const;
};

// Traces one cell's corners (and, when needed, edge midpoints and centre).
// need_nine forces the 9-point set in quad mode (used for k = 2).
UpstreamCell trace_upstream_cell(const Mesh2D& mesh, int i, int j, const VelocityField2D& field, double t_end,
                                 double dt, UpstreamMode mode, int substeps, bool need_nine = false);

// Throws CharacteristicCrossingError if the corner polygon is not simple with
// positive area.
void check_upstream_cell(const UpstreamCell& uc);

std::vector<SubRegion> clip_upstream(const UpstreamCell& uc, const Mesh2D& mesh);

// Least-squares fit of Psi* for basis function m of P^k on the target cell:
// 4 corners for k <= 1, 9 points for k = 2.
TestPolyStar2D reconstruct_test_poly(const UpstreamCell& uc, int k, int m);

// Integral of u_l * Psi* over the subregion, physical units.
double green_integral(const Basis2D& basis, const double* u_l, const TestPolyStar2D& psi, const SubRegion& sr,
                      const Mesh2D& mesh);

struct NonsplitOptions {
  UpstreamMode mode = UpstreamMode::quad;
  int substeps = 1;
  bool euler_feet = false;  // one forward-Euler step per foot instead of RK4
};

// One step from u.time to u.time + dt. u must be a P^k solution, k in {0,1,2}.
Solution2D step_2d(const Solution2D& u, const VelocityField2D& field, double dt, const NonsplitOptions& opt);

}  // namespace sldg
