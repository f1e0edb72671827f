#include "sldg/upstream.hpp"

#include <algorithm>
#include <cmath>

#include "sldg/quadrature.hpp"

namespace sldg {
namespace {

constexpr double kOnLine = 1e-12;
constexpr double kSame = 1e-14;

struct Cut {
  double s;
  bool fix_x, fix_y;
  double x, y;
};

inline double coord(const Point& p, int axis) { return axis == 0 ? p.x : p.y; }

inline bool same(const Point& a, const Point& b) {
  return std::abs(a.x - b.x) <= kSame && std::abs(a.y - b.y) <= kSame;
}

// Parameter in [sa, sb] where a + b s + c s^2, monotone there, crosses m.
double monotone_root(double a, double b, double c, double m, double sa, double sb) {
  const double a0 = a - m;
  double s;
  if (std::abs(c) * (std::abs(sa) + std::abs(sb) + 1.0) <= 1e-14 * std::abs(b)) {
    s = -a0 / b;
  } else {
    const double disc = std::max(0.0, b * b - 4.0 * c * a0);
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    const double r1 = q / c, r2 = q != 0.0 ? a0 / q : r1;
    const double mid = 0.5 * (sa + sb);
    s = std::abs(r1 - mid) <= std::abs(r2 - mid) ? r1 : r2;
  }
  s = std::clamp(s, sa, sb);
  // One Newton polish against cancellation in the closed form.
  const double d = b + 2.0 * c * s;
  if (d != 0.0) s = std::clamp(s - (a0 + s * (b + c * s)) / d, sa, sb);
  return s;
}

void add_level_cuts(double va, double vb, double sa, double sb, int axis, std::vector<Cut>& cuts,
                    const Piece& p) {
  const double lo = std::min(va, vb), hi = std::max(va, vb);
  for (double m = std::floor(lo) + 1.0; m < hi; m += 1.0) {
    if (m - lo <= kOnLine || hi - m <= kOnLine) continue;
    double s;
    if (!p.curved) {
      s = (m - va) / (vb - va);
    } else {
      s = monotone_root(coord(p.A, axis), coord(p.B, axis), coord(p.C, axis), m, sa, sb);
    }
    Cut c{s, axis == 0, axis == 1, axis == 0 ? m : 0.0, axis == 1 ? m : 0.0};
    cuts.push_back(c);
  }
}

void curve_spans(const Piece& p, int axis, std::vector<double>& out) {
  out.clear();
  out.push_back(p.s0);
  const double b = coord(p.B, axis), c = coord(p.C, axis);
  if (c != 0.0) {
    const double s = -b / (2.0 * c);
    if (s > p.s0 && s < p.s1) out.push_back(s);
  }
  out.push_back(p.s1);
}

}  // namespace

Point Piece::mid() const {
  if (!curved) return {0.5 * (p0.x + p1.x), 0.5 * (p0.y + p1.y)};
  return at(0.5 * (s0 + s1));
}

Piece line_piece(Point a, Point b) {
  Piece p;
  p.p0 = a;
  p.p1 = b;
  return p;
}

Piece curve_piece(Point q0, Point qm, Point q1) {
  Piece p;
  p.curved = true;
  p.A = q0;
  p.B = {4.0 * qm.x - 3.0 * q0.x - q1.x, 4.0 * qm.y - 3.0 * q0.y - q1.y};
  p.C = {2.0 * q0.x + 2.0 * q1.x - 4.0 * qm.x, 2.0 * q0.y + 2.0 * q1.y - 4.0 * qm.y};
  p.p0 = q0;
  p.p1 = q1;
  return p;
}

void subdivide_at_grid(const std::vector<Piece>& chain, std::vector<Piece>& out) {
  out.clear();
  std::vector<Cut> cuts;
  std::vector<double> spans;
  for (const Piece& p : chain) {
    if (same(p.p0, p.p1) && !p.curved) continue;
    cuts.clear();
    if (!p.curved) {
      add_level_cuts(p.p0.x, p.p1.x, 0.0, 1.0, 0, cuts, p);
      add_level_cuts(p.p0.y, p.p1.y, 0.0, 1.0, 1, cuts, p);
    } else {
      for (int axis = 0; axis < 2; ++axis) {
        curve_spans(p, axis, spans);
        for (size_t k = 0; k + 1 < spans.size(); ++k) {
          const double sa = spans[k], sb = spans[k + 1];
          const double va = k == 0 ? coord(p.p0, axis) : coord(p.at(sa), axis);
          const double vb = k + 2 == spans.size() ? coord(p.p1, axis) : coord(p.at(sb), axis);
          add_level_cuts(va, vb, sa, sb, axis, cuts, p);
        }
      }
    }
    if (cuts.empty()) {
      out.push_back(p);
      continue;
    }
    std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.s < b.s; });
    // Merge cuts at (numerically) the same parameter: a grid corner crossing.
    size_t w = 0;
    for (size_t r = 1; r < cuts.size(); ++r) {
      if (std::abs(cuts[r].s - cuts[w].s) <= 1e-13) {
        if (cuts[r].fix_x) {
          cuts[w].fix_x = true;
          cuts[w].x = cuts[r].x;
        }
        if (cuts[r].fix_y) {
          cuts[w].fix_y = true;
          cuts[w].y = cuts[r].y;
        }
      } else {
        cuts[++w] = cuts[r];
      }
    }
    cuts.resize(w + 1);
    Point prev = p.p0;
    double sprev = p.curved ? p.s0 : 0.0;
    for (const Cut& c : cuts) {
      double s = c.s;
      Point q;
      if (p.curved) {
        q = p.at(s);
      } else {
        q = {p.p0.x + s * (p.p1.x - p.p0.x), p.p0.y + s * (p.p1.y - p.p0.y)};
      }
      if (c.fix_x) q.x = c.x;
      if (c.fix_y) q.y = c.y;
      Piece sp = p;
      sp.p0 = prev;
      sp.p1 = q;
      if (p.curved) {
        sp.s0 = sprev;
        sp.s1 = s;
      }
      out.push_back(sp);
      prev = q;
      sprev = s;
    }
    Piece sp = p;
    sp.p0 = prev;
    sp.p1 = p.p1;
    if (p.curved) {
      sp.s0 = sprev;
      sp.s1 = p.s1;
    }
    out.push_back(sp);
  }
}

void clip_halfplane(const std::vector<Piece>& in, int axis, double m, bool keep_ge, std::vector<Piece>& out) {
  out.clear();
  for (const Piece& p : in) {
    const double c = coord(p.mid(), axis);
    const bool inside = keep_ge ? c >= m - kOnLine : c <= m + kOnLine;
    if (!inside) continue;
    if (!out.empty() && !same(out.back().p1, p.p0)) out.push_back(line_piece(out.back().p1, p.p0));
    out.push_back(p);
  }
  if (!out.empty() && !same(out.back().p1, out.front().p0)) out.push_back(line_piece(out.back().p1, out.front().p0));
}

namespace {

// Connectors from a vertical pass can span several rows; split them.
void split_connectors(std::vector<Piece>& chain, std::vector<Piece>& scratch) {
  bool any = false;
  for (const Piece& p : chain)
    if (!p.curved && std::floor(std::min(p.p0.y, p.p1.y)) + 1.0 < std::max(p.p0.y, p.p1.y) - kOnLine) {
      any = true;
      break;
    }
  if (!any) return;
  subdivide_at_grid(chain, scratch);
  chain.swap(scratch);
}

inline int cell_floor(double lo) {
  const double r = std::nearbyint(lo);
  return static_cast<int>(std::abs(lo - r) <= kOnLine ? r : std::floor(lo));
}

inline int cell_ceil(double hi) {
  const double r = std::nearbyint(hi);
  return static_cast<int>(std::abs(hi - r) <= kOnLine ? r : std::ceil(hi));
}

}  // namespace

void clip_chain(const std::vector<Piece>& chain, int nx, int ny, ClipWorkspace& ws) {
  ws.nregions = 0;
  subdivide_at_grid(chain, ws.sub);
  if (ws.sub.empty()) return;
  double xmin = 1e300, xmax = -1e300;
  for (const Piece& p : ws.sub) {
    const Point m = p.mid();
    for (const Point& q : {p.p0, p.p1, m}) {
      xmin = std::min(xmin, q.x);
      xmax = std::max(xmax, q.x);
    }
  }
  const int c0 = cell_floor(xmin), c1 = cell_ceil(xmax);
  for (int cx = c0; cx < c1; ++cx) {
    const std::vector<Piece>* col = &ws.sub;
    if (c1 - c0 > 1) {
      clip_halfplane(ws.sub, 0, cx, true, ws.col_a);
      clip_halfplane(ws.col_a, 0, cx + 1, false, ws.col_b);
      split_connectors(ws.col_b, ws.conn);
      col = &ws.col_b;
    }
    if (col->empty()) continue;
    double ymin = 1e300, ymax = -1e300;
    for (const Piece& p : *col) {
      const Point m = p.mid();
      for (const Point& q : {p.p0, p.p1, m}) {
        ymin = std::min(ymin, q.y);
        ymax = std::max(ymax, q.y);
      }
    }
    const int r0 = cell_floor(ymin), r1 = cell_ceil(ymax);
    for (int cy = r0; cy < r1; ++cy) {
      const std::vector<Piece>* reg = col;
      if (r1 - r0 > 1) {
        clip_halfplane(*col, 1, cy, true, ws.row_a);
        clip_halfplane(ws.row_a, 1, cy + 1, false, ws.row_b);
        reg = &ws.row_b;
      }
      if (reg->size() < 2) continue;
      if (static_cast<int>(ws.regions.size()) <= ws.nregions) ws.regions.emplace_back();
      SubRegion& sr = ws.regions[ws.nregions++];
      sr.lx = cx;
      sr.ly = cy;
      sr.i = ((cx % nx) + nx) % nx;
      sr.j = ((cy % ny) + ny) % ny;
      sr.boundary.assign(reg->begin(), reg->end());
    }
  }
}

std::vector<SubRegion> clip_chain(const std::vector<Piece>& chain, int nx, int ny) {
  ClipWorkspace ws;
  clip_chain(chain, nx, ny, ws);
  ws.regions.resize(ws.nregions);
  return ws.regions;
}

void region_moments(const std::vector<Piece>& boundary, int lx, int ly, int D, double* M) {
  const int S = D + 1;
  std::fill(M, M + S * S, 0.0);
  const QuadratureRule& gs = gauss_legendre(D / 2 + 1);
  const QuadratureRule& gc = gauss_legendre(D + 2);
  double xp[16], yp[16];
  for (const Piece& p : boundary) {
    const QuadratureRule& g = p.curved ? gc : gs;
    if (!p.curved && p.p0.y == p.p1.y) continue;
    for (int q = 0; q < g.size(); ++q) {
      double X, Y, dY;
      if (!p.curved) {
        const double t = 0.5 * (1.0 + g.nodes[q]);
        X = p.p0.x + t * (p.p1.x - p.p0.x);
        Y = p.p0.y + t * (p.p1.y - p.p0.y);
        dY = 0.5 * (p.p1.y - p.p0.y);
      } else {
        const double h = 0.5 * (p.s1 - p.s0);
        const double s = p.s0 + h * (1.0 + g.nodes[q]);
        const Point P = p.at(s);
        X = P.x;
        Y = P.y;
        dY = h * (p.B.y + 2.0 * s * p.C.y);
      }
      const double xi = 2.0 * (X - lx) - 1.0, eta = 2.0 * (Y - ly) - 1.0;
      const double w = g.weights[q] * 2.0 * dY;  // d eta = 2 dY
      xp[0] = xi;
      for (int a = 1; a <= D; ++a) xp[a] = xp[a - 1] * xi;
      yp[0] = w;
      for (int b = 1; b <= D; ++b) yp[b] = yp[b - 1] * eta;
      for (int a = 0; a <= D; ++a) {
        const double fa = xp[a] / (a + 1);
        for (int b = 0; a + b <= D; ++b) M[a * S + b] += fa * yp[b];
      }
    }
  }
}

double region_area(const std::vector<Piece>& boundary) {
  double M = 0.0;
  region_moments(boundary, 0, 0, 0, &M);
  return 0.25 * M;
}

}  // namespace sldg
