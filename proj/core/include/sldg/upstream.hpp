#pragma once

#include <array>
#include <vector>

namespace sldg {

// Geometry of upstream cells lives in index coordinates X = (x - x_lo)/dx,
// Y = (y - y_lo)/dy, so background cell (l, m) is [l, l+1] x [m, m+1].
// Coordinates are unwrapped; cell indices are wrapped only when data is read.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

// A straight segment p0 -> p1, or the arc s in [s0, s1] of the quadratic
// curve P(s) = A + B s + C s^2 (p0 = P(s0), p1 = P(s1) up to snapping).
struct Piece {
  bool curved = false;
  Point p0, p1;
  Point A, B, C;
  double s0 = 0.0, s1 = 1.0;

  Point at(double s) const { return {A.x + s * (B.x + s * C.x), A.y + s * (B.y + s * C.y)}; }
  Point mid() const;
};

Piece line_piece(Point a, Point b);
// Quadratic through q0 (s=0), qm (s=1/2), q1 (s=1).
Piece curve_piece(Point q0, Point qm, Point q1);

struct SubRegion {
  int lx = 0, ly = 0;  // unwrapped background cell
  int i = 0, j = 0;    // wrapped background cell
  std::vector<Piece> boundary;  // closed, counterclockwise
};

// Splits every piece where it crosses an integer grid line, so each output
// piece lies in one closed background cell.
void subdivide_at_grid(const std::vector<Piece>& chain, std::vector<Piece>& out);

// Sutherland-Hodgman pass keeping the side X >= m (axis 0, keep_ge) etc.
// Gaps are closed by straight connectors on the clip line.
void clip_halfplane(const std::vector<Piece>& in, int axis, double m, bool keep_ge, std::vector<Piece>& out);

// Decomposes a closed chain into per-background-cell subregions: vertical
// grid lines first, then horizontal; output ordered by (lx, ly).
std::vector<SubRegion> clip_chain(const std::vector<Piece>& chain, int nx, int ny);

struct ClipWorkspace {
  std::vector<Piece> sub, col_a, col_b, row_a, row_b, conn;
  std::vector<SubRegion> regions;
  int nregions = 0;
};
// Same as clip_chain but reuses buffers; regions[0..nregions) are valid.
void clip_chain(const std::vector<Piece>& chain, int nx, int ny, ClipWorkspace& ws);

// Moments M[a*(D+1)+b] = integral of xi^a eta^b dxi deta over the region
// bounded by `boundary`, in reference coordinates of cell (lx, ly), for
// a + b <= D. Computed as boundary integrals of xi^(a+1)/(a+1) eta^b d eta.
void region_moments(const std::vector<Piece>& boundary, int lx, int ly, int D, double* M);

// Area in index units (a background cell has area 1).
double region_area(const std::vector<Piece>& boundary);

}  // namespace sldg
