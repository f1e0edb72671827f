#include "sldg/nonsplit2d.hpp"

#include <cmath>
#include <exception>
#include <string>

#include "sldg/error.hpp"

namespace sldg {
namespace {

constexpr double kSnap = 1e-12;
constexpr double kSliver = 4e-12;  // reference-area units (a cell has 4)

inline double snap(double X) {
  const double r = std::nearbyint(X);
  return std::abs(X - r) <= kSnap ? r : X;
}

// Reference coordinates of the 9 traced points: corners, edge mids, centre.
constexpr double kRefXi[9] = {-1, 1, 1, -1, 0, 1, 0, -1, 0};
constexpr double kRefEta[9] = {-1, -1, 1, 1, -1, 0, 1, 0, 0};

constexpr double kBinom[7][7] = {{1, 0, 0, 0, 0, 0, 0},  {1, 1, 0, 0, 0, 0, 0},   {1, 2, 1, 0, 0, 0, 0},
                                 {1, 3, 3, 1, 0, 0, 0},  {1, 4, 6, 4, 1, 0, 0},   {1, 5, 10, 10, 5, 1, 0},
                                 {1, 6, 15, 20, 15, 6, 1}};

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool segments_cross(Point a, Point b, Point c, Point d) {
  const double d1 = cross(c, d, a), d2 = cross(c, d, b), d3 = cross(a, b, c), d4 = cross(a, b, d);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

// Least-squares fit of all basis functions at once. feet[q] pairs with the
// reference point q of kRefXi/kRefEta.
void fit_test_polys(int k, int npts, const Point* feet, double Xc, double Yc, double P[][kMaxBasis],
                    double* residual) {
  const Basis2D basis = Basis2D::make(Space::P, k);
  const int nb = basis.n;
  for (int m = 0; m < nb; ++m)
    for (int c = 0; c < nb; ++c) P[m][c] = 0.0;
  P[0][0] = 1.0;
  if (residual) *residual = 0.0;
  if (nb == 1) return;
  double A[9][kMaxBasis];
  double scale[kMaxBasis];
  for (int c = 0; c < nb; ++c) scale[c] = 0.0;
  for (int q = 0; q < npts; ++q) {
    const double Z = 2.0 * (feet[q].x - Xc), W = 2.0 * (feet[q].y - Yc);
    double zp[kMaxDegree + 1], wp[kMaxDegree + 1];
    zp[0] = wp[0] = 1.0;
    for (int e = 1; e <= k; ++e) {
      zp[e] = zp[e - 1] * Z;
      wp[e] = wp[e - 1] * W;
    }
    for (int c = 0; c < nb; ++c) {
      A[q][c] = zp[basis.a[c]] * wp[basis.b[c]];
      scale[c] = std::max(scale[c], std::abs(A[q][c]));
    }
  }
  for (int c = 0; c < nb; ++c) {
    if (!(scale[c] > 0.0)) throw ConditioningError("degenerate least-squares constraints");
    for (int q = 0; q < npts; ++q) A[q][c] /= scale[c];
  }
  double N[kMaxBasis][kMaxBasis];
  for (int r = 0; r < nb; ++r)
    for (int c = 0; c < nb; ++c) {
      double s = 0.0;
      for (int q = 0; q < npts; ++q) s += A[q][r] * A[q][c];
      N[r][c] = s;
    }
  // Cholesky, N = L L^T in place (lower part).
  double tr = 0.0;
  for (int r = 0; r < nb; ++r) tr = std::max(tr, N[r][r]);
  for (int c = 0; c < nb; ++c) {
    double d = N[c][c];
    for (int p = 0; p < c; ++p) d -= N[c][p] * N[c][p];
    if (!(d > 1e-13 * tr)) throw ConditioningError("rank-deficient least-squares constraints");
    N[c][c] = std::sqrt(d);
    for (int r = c + 1; r < nb; ++r) {
      double v = N[r][c];
      for (int p = 0; p < c; ++p) v -= N[r][p] * N[c][p];
      N[r][c] = v / N[c][c];
    }
  }
  double phi[kMaxBasis];
  double vals[9][kMaxBasis];
  for (int q = 0; q < npts; ++q) {
    basis.eval_all(kRefXi[q], kRefEta[q], phi);
    for (int m = 0; m < nb; ++m) vals[q][m] = phi[m];
  }
  for (int m = 1; m < nb; ++m) {
    double y[kMaxBasis];
    for (int r = 0; r < nb; ++r) {
      double s = 0.0;
      for (int q = 0; q < npts; ++q) s += A[q][r] * vals[q][m];
      for (int p = 0; p < r; ++p) s -= N[r][p] * y[p];
      y[r] = s / N[r][r];
    }
    for (int r = nb - 1; r >= 0; --r) {
      double s = y[r];
      for (int p = r + 1; p < nb; ++p) s -= N[p][r] * P[m][p];
      P[m][r] = s / N[r][r];
    }
    if (residual) {
      for (int q = 0; q < npts; ++q) {
        double s = 0.0;
        for (int c = 0; c < nb; ++c) s += A[q][c] * P[m][c];
        *residual = std::max(*residual, std::abs(s - vals[q][m]));
      }
    }
    for (int c = 0; c < nb; ++c) P[m][c] /= scale[c];
  }
}

int fit_points(const UpstreamCell& uc, int k, Point* feet) {
  for (int q = 0; q < 4; ++q) feet[q] = uc.corners[q];
  if (k < 2) return 4;
  if (!uc.has_mids) throw ConfigError("P2 reconstruction needs edge-midpoint and centre feet");
  for (int q = 0; q < 4; ++q) feet[4 + q] = uc.mids[q];
  feet[8] = uc.center;
  return 9;
}

// Accumulates the P^k basis moments of u_l * Z^a W^b over one subregion.
// um: monomials of u_l, (ku+1)^2 layout. W indexed like the P^kp basis.
void accumulate(const Basis2D& pb, int ku, const double* um, const double* M, int D, double dz, double dw,
                double* W) {
  const int S = D + 1;
  const int kp = pb.k;
  const int KU = ku + 1;
  double w[kMaxDegree + 1][kMaxDegree + 1] = {};
  for (int e = 0; e <= kp; ++e)
    for (int f = 0; e + f <= kp; ++f) {
      double s = 0.0;
      for (int c = 0; c <= ku; ++c)
        for (int d = 0; d <= ku; ++d) {
          const double v = um[c * KU + d];
          if (v != 0.0) s += v * M[(c + e) * S + (d + f)];
        }
      w[e][f] = s;
    }
  double pz[kMaxDegree + 1], pw[kMaxDegree + 1];
  pz[0] = pw[0] = 1.0;
  for (int p = 1; p <= kp; ++p) {
    pz[p] = pz[p - 1] * dz;
    pw[p] = pw[p - 1] * dw;
  }
  for (int m = 0; m < pb.n; ++m) {
    const int a = pb.a[m], b = pb.b[m];
    double s = 0.0;
    for (int e = 0; e <= a; ++e)
      for (int f = 0; f <= b; ++f) s += kBinom[a][e] * kBinom[b][f] * pz[a - e] * pw[b - f] * w[e][f];
    W[m] += s;
  }
}

}  // namespace

std::vector<Piece> UpstreamCell::boundary() const {
  std::vector<Piece> out;
  out.reserve(4);
  for (int e = 0; e < 4; ++e) {
    const Point a = corners[e], b = corners[(e + 1) % 4];
    if (mode == UpstreamMode::qc && has_mids)
      out.push_back(curve_piece(a, mids[e], b));
    else
      out.push_back(line_piece(a, b));
  }
  return out;
}

double UpstreamCell::corner_area() const {
  double s = 0.0;
  for (int e = 0; e < 4; ++e) {
    const Point a = corners[e], b = corners[(e + 1) % 4];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

double TestPolyStar2D::eval_index(double X, double Y) const {
  const Basis2D basis = Basis2D::make(Space::P, k);
  const double Z = 2.0 * (X - Xc), W = 2.0 * (Y - Yc);
  double s = 0.0;
  for (int m = 0; m < basis.n; ++m) s += p[m] * std::pow(Z, basis.a[m]) * std::pow(W, basis.b[m]);
  return s;
}

void check_upstream_cell(const UpstreamCell& uc) {
  const auto& c = uc.corners;
  if (!(uc.corner_area() > 0.0) || segments_cross(c[0], c[1], c[2], c[3]) || segments_cross(c[1], c[2], c[3], c[0]))
    throw CharacteristicCrossingError("upstream cell of (" + std::to_string(uc.i) + "," + std::to_string(uc.j) +
                                      ") is not a simple positively oriented quadrilateral");
}

UpstreamCell trace_upstream_cell(const Mesh2D& mesh, int i, int j, const VelocityField2D& field, double t_end,
                                 double dt, UpstreamMode mode, int substeps, bool need_nine) {
  UpstreamCell uc;
  uc.i = i;
  uc.j = j;
  uc.mode = mode;
  auto foot = [&](double hx, double hy) {
    const double x = mesh.x.lo + hx * mesh.x.dx, y = mesh.y.lo + hy * mesh.y.dx;
    const TracedPoint tp = trace_back_2d(field, x, y, t_end, t_end - dt, substeps);
    return Point{snap(mesh.x.to_index(tp.x_foot)), snap(mesh.y.to_index(tp.y_foot))};
  };
  for (int q = 0; q < 4; ++q) uc.corners[q] = foot(i + 0.5 * (kRefXi[q] + 1), j + 0.5 * (kRefEta[q] + 1));
  if (mode == UpstreamMode::qc || need_nine) {
    uc.has_mids = true;
    for (int q = 0; q < 4; ++q) uc.mids[q] = foot(i + 0.5 * (kRefXi[4 + q] + 1), j + 0.5 * (kRefEta[4 + q] + 1));
    uc.center = foot(i + 0.5, j + 0.5);
  }
  return uc;
}

std::vector<SubRegion> clip_upstream(const UpstreamCell& uc, const Mesh2D& mesh) {
  return clip_chain(uc.boundary(), mesh.nx(), mesh.ny());
}

TestPolyStar2D reconstruct_test_poly(const UpstreamCell& uc, int k, int m) {
  Point feet[9];
  const int npts = fit_points(uc, k, feet);
  TestPolyStar2D t;
  t.k = k;
  for (int q = 0; q < 4; ++q) {
    t.Xc += 0.25 * uc.corners[q].x;
    t.Yc += 0.25 * uc.corners[q].y;
  }
  double P[kMaxBasis][kMaxBasis];
  fit_test_polys(k, npts, feet, t.Xc, t.Yc, P, &t.residual);
  const int nb = Basis2D::size(Space::P, k);
  for (int c = 0; c < nb; ++c) t.p[c] = P[m][c];
  return t;
}

double green_integral(const Basis2D& basis, const double* u_l, const TestPolyStar2D& psi, const SubRegion& sr,
                      const Mesh2D& mesh) {
  const int ku = basis.k;
  double um[kMaxBasis];
  legendre_to_monomial_2d(basis, u_l, um);
  const int D = 2 * ku + psi.k;
  std::vector<double> M((D + 1) * (D + 1));
  region_moments(sr.boundary, sr.lx, sr.ly, D, M.data());
  const Basis2D pb = Basis2D::make(Space::P, psi.k);
  double W[kMaxBasis] = {};
  accumulate(pb, ku, um, M.data(), D, 2.0 * sr.lx + 1.0 - 2.0 * psi.Xc, 2.0 * sr.ly + 1.0 - 2.0 * psi.Yc, W);
  double s = 0.0;
  for (int c = 0; c < pb.n; ++c) s += psi.p[c] * W[c];
  return 0.25 * mesh.cell_area() * s;
}

Solution2D step_2d(const Solution2D& u, const VelocityField2D& field, double dt, const NonsplitOptions& opt) {
  if (u.space() != Space::P) throw ConfigError("non-splitting SLDG needs a P^k solution");
  const int k = u.k();
  if (k > 2) throw ConfigError("non-splitting SLDG supports k <= 2");
  const Mesh2D& mesh = u.mesh;
  const int nx = mesh.nx(), ny = mesh.ny();
  const int NX = 2 * nx, NY = 2 * ny;
  const bool nine = opt.mode == UpstreamMode::qc || k == 2;
  const double t0 = u.time, t_end = u.time + dt;
  const int substeps = std::max(1, opt.substeps);

  // Feet on the half-index lattice, shared by neighbouring cells. The closing
  // row and column are traced too rather than wrapped: the VP field (v, E)
  // is not periodic in v.
  const int LX = NX + 1, LY = NY + 1;
  std::vector<Point> feet(static_cast<size_t>(LX) * LY);
  const int stride = nine ? 1 : 2;
#pragma omp parallel for schedule(static)
  for (int q = 0; q < LY; q += stride)
    for (int p = 0; p < LX; p += stride) {
      const double x = mesh.x.lo + 0.5 * p * mesh.x.dx, y = mesh.y.lo + 0.5 * q * mesh.y.dx;
      Vec2 f;
      if (opt.euler_feet) {
        const Vec2 a = field(x, y, t_end);
        f = {x - dt * a.x, y - dt * a.y};
      } else {
        f = rk4_back_2d(field, Vec2{x, y}, t_end, t0, substeps);
      }
      feet[static_cast<size_t>(q) * LX + p] = {snap(mesh.x.to_index(f.x)), snap(mesh.y.to_index(f.y))};
    }
  auto foot = [&](int p, int q) { return feet[static_cast<size_t>(q) * LX + p]; };

  const int nb = u.nb();
  const int KU = k + 1;
  std::vector<double> umono(static_cast<size_t>(mesh.ncells()) * KU * KU);
  for (int c = 0; c < mesh.ncells(); ++c)
    legendre_to_monomial_2d(u.basis, u.c.data() + static_cast<size_t>(c) * nb, umono.data() + static_cast<size_t>(c) * KU * KU);

  Solution2D out(mesh, Space::P, k);
  out.time = t_end;
  const int D = 2 * k;
  std::exception_ptr failure;

#pragma omp parallel
  {
    ClipWorkspace ws;
    std::vector<Piece> chain;
    double M[(2 * kMaxDegree + 1) * (2 * kMaxDegree + 1)];
#pragma omp for schedule(dynamic, 16)
    for (int cell = 0; cell < nx * ny; ++cell) {
      if (failure) continue;
      try {
        const int i = cell % nx, j = cell / nx;
        UpstreamCell uc;
        uc.i = i;
        uc.j = j;
        uc.mode = opt.mode;
        uc.corners = {foot(2 * i, 2 * j), foot(2 * i + 2, 2 * j), foot(2 * i + 2, 2 * j + 2), foot(2 * i, 2 * j + 2)};
        if (nine) {
          uc.has_mids = true;
          uc.mids = {foot(2 * i + 1, 2 * j), foot(2 * i + 2, 2 * j + 1), foot(2 * i + 1, 2 * j + 2),
                     foot(2 * i, 2 * j + 1)};
          uc.center = foot(2 * i + 1, 2 * j + 1);
        }
        check_upstream_cell(uc);
        Point pts[9];
        const int npts = fit_points(uc, k, pts);
        double Xc = 0.0, Yc = 0.0;
        for (int q = 0; q < 4; ++q) {
          Xc += 0.25 * uc.corners[q].x;
          Yc += 0.25 * uc.corners[q].y;
        }
        double P[kMaxBasis][kMaxBasis];
        fit_test_polys(k, npts, pts, Xc, Yc, P, nullptr);

        chain = uc.boundary();
        clip_chain(chain, nx, ny, ws);
        double W[kMaxBasis] = {};
        for (int r = 0; r < ws.nregions; ++r) {
          const SubRegion& sr = ws.regions[r];
          region_moments(sr.boundary, sr.lx, sr.ly, D, M);
          if (std::abs(M[0]) < kSliver) continue;
          const double* um = umono.data() + static_cast<size_t>(mesh.index(sr.i, sr.j)) * KU * KU;
          accumulate(u.basis, k, um, M, D, 2.0 * sr.lx + 1.0 - 2.0 * Xc, 2.0 * sr.ly + 1.0 - 2.0 * Yc, W);
        }
        double* o = out.cell(i, j);
        for (int m = 0; m < nb; ++m) {
          double s = 0.0;
          for (int c = 0; c < nb; ++c) s += P[m][c] * W[c];
          o[m] = s / u.basis.norm2(m);
        }
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace sldg
