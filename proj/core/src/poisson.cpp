#include "sldg/poisson.hpp"

#include <Eigen/Dense>
#include <complex>
#include <list>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <unsupported/Eigen/FFT>

#include "sldg/error.hpp"
#include "sldg/quadrature.hpp"

namespace sldg {
namespace {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

// Local LDG operators along one direction for a (possibly tensor) modal
// basis. `phi_at(side, t, out)` evaluates all basis functions on the face
// xi = side (or eta = side) at transverse node t; `dphi` the derivative along
// the direction at interior points.
struct DirOps {
  Mat G0, Gm;  // q = (2/h) N^{-1} (G0 phi_c + Gm phi_{c-1})
  Mat B0, Bp;  // divergence part: B0 q_c + Bp q_{c+1}
  Mat K0, Km, Kp;
};

struct BasisOps {
  int nb = 0;
  Eigen::VectorXd N;  // reference norms
  DirOps dir[2];
  int ndir = 1;
};

BasisOps build_ops_1d(int r) {
  BasisOps ops;
  const int nb = r + 1;
  ops.nb = nb;
  ops.ndir = 1;
  ops.N.resize(nb);
  for (int m = 0; m < nb; ++m) ops.N[m] = legendre_norm2(m);
  const QuadratureRule& g = gauss_legendre(r + 2);
  Mat S = Mat::Zero(nb, nb);  // S[n][m] = int P_m P_n'
  for (int q = 0; q < g.size(); ++q) {
    double p[kMaxDegree + 2], dp[kMaxDegree + 2];
    legendre_all(r, g.nodes[q], p);
    // P_n' via P'_{n} = sum over lower modes; use finite formula from table.
    for (int n = 0; n < nb; ++n) {
      double d = 0.0;
      for (int pw = 1; pw <= n; ++pw) d += pw * legendre_monomial(n, pw) * std::pow(g.nodes[q], pw - 1);
      dp[n] = d;
    }
    for (int n = 0; n < nb; ++n)
      for (int m = 0; m < nb; ++m) S(n, m) += g.weights[q] * p[m] * dp[n];
  }
  Eigen::VectorXd R(nb), L(nb);
  for (int m = 0; m < nb; ++m) {
    R[m] = 1.0;
    L[m] = (m % 2 == 0) ? 1.0 : -1.0;
  }
  DirOps& d = ops.dir[0];
  d.G0 = -S + R * R.transpose();
  d.Gm = -(L * R.transpose());
  d.B0 = S + L * L.transpose();
  d.Bp = -(R * L.transpose());
  return ops;
}

BasisOps build_ops_2d(const Basis2D& basis) {
  BasisOps ops;
  const int nb = basis.n;
  ops.nb = nb;
  ops.ndir = 2;
  ops.N.resize(nb);
  for (int m = 0; m < nb; ++m) ops.N[m] = basis.norm2(m);
  const QuadratureRule& g = gauss_legendre(basis.k + 2);
  auto der1d = [](int n, double x) {
    double d = 0.0;
    for (int pw = 1; pw <= n; ++pw) d += pw * legendre_monomial(n, pw) * std::pow(x, pw - 1);
    return d;
  };
  for (int axis = 0; axis < 2; ++axis) {
    Mat S = Mat::Zero(nb, nb), F0 = Mat::Zero(nb, nb), Fm = Mat::Zero(nb, nb), E0 = Mat::Zero(nb, nb),
        Ep = Mat::Zero(nb, nb);
    // deg along axis of mode m: a (axis 0) or b (axis 1).
    auto along = [&](int m) { return axis == 0 ? basis.a[m] : basis.b[m]; };
    auto across = [&](int m) { return axis == 0 ? basis.b[m] : basis.a[m]; };
    for (int q = 0; q < g.size(); ++q)
      for (int t = 0; t < g.size(); ++t) {
        double ps[kMaxDegree + 1], pt[kMaxDegree + 1];
        legendre_all(basis.k, g.nodes[q], ps);
        legendre_all(basis.k, g.nodes[t], pt);
        const double w = g.weights[q] * g.weights[t];
        for (int n = 0; n < nb; ++n)
          for (int m = 0; m < nb; ++m)
            S(n, m) += w * ps[along(m)] * pt[across(m)] * der1d(along(n), g.nodes[q]) * pt[across(n)];
      }
    for (int t = 0; t < g.size(); ++t) {
      double pt[kMaxDegree + 1];
      legendre_all(basis.k, g.nodes[t], pt);
      const double w = g.weights[t];
      for (int n = 0; n < nb; ++n)
        for (int m = 0; m < nb; ++m) {
          const double tr = w * pt[across(m)] * pt[across(n)];
          const double Rm = 1.0, Rn = 1.0;
          const double Lm = along(m) % 2 == 0 ? 1.0 : -1.0, Ln = along(n) % 2 == 0 ? 1.0 : -1.0;
          F0(n, m) += tr * Rm * Rn;
          Fm(n, m) -= tr * Rm * Ln;
          E0(n, m) += tr * Lm * Ln;
          Ep(n, m) += tr * Lm * Rn;
        }
    }
    DirOps& d = ops.dir[axis];
    d.G0 = -S + F0;
    d.Gm = Fm;
    d.B0 = S + E0;
    d.Bp = -Ep;
  }
  return ops;
}

void finish_ops(BasisOps& ops) {
  const Eigen::VectorXd Ninv = ops.N.cwiseInverse();
  for (int a = 0; a < ops.ndir; ++a) {
    DirOps& d = ops.dir[a];
    const Mat NG0 = Ninv.asDiagonal() * d.G0, NGm = Ninv.asDiagonal() * d.Gm;
    d.K0 = d.B0 * NG0 + d.Bp * NGm;
    d.Km = d.B0 * NGm;
    d.Kp = d.Bp * NG0;
  }
}

// Block-circulant solver on an nx-by-ny periodic grid of nb-blocks.
class CirculantSolver {
 public:
  CirculantSolver(const BasisOps& ops, int nx, int ny, double hx, double hy) : nx_(nx), ny_(ny), nb_(ops.nb) {
    const double cx = 4.0 / (hx * hx), cy = ops.ndir > 1 ? 4.0 / (hy * hy) : 0.0;
    inv_.resize(static_cast<size_t>(nx) * ny);
    for (int ky = 0; ky < ny; ++ky)
      for (int kx = 0; kx < nx; ++kx) {
        const double tx = 2.0 * std::numbers::pi * kx / nx, ty = 2.0 * std::numbers::pi * ky / ny;
        const cplx ex(std::cos(tx), std::sin(tx)), ey(std::cos(ty), std::sin(ty));
        const DirOps& X = ops.dir[0];
        CMat K = cx * (X.K0.cast<cplx>() + X.Km.cast<cplx>() * std::conj(ex) + X.Kp.cast<cplx>() * ex);
        if (ops.ndir > 1) {
          const DirOps& Y = ops.dir[1];
          K += cy * (Y.K0.cast<cplx>() + Y.Km.cast<cplx>() * std::conj(ey) + Y.Kp.cast<cplx>() * ey);
        }
        CMat& out = inv_[static_cast<size_t>(ky) * nx + kx];
        if (kx == 0 && ky == 0) {
          // Bordered with the mean-zero constraint on the constant mode.
          CMat Kb = CMat::Zero(nb_ + 1, nb_ + 1);
          Kb.topLeftCorner(nb_, nb_) = K;
          Kb(0, nb_) = Kb(nb_, 0) = 1.0;
          out = Kb.fullPivLu().inverse().topLeftCorner(nb_, nb_);
        } else {
          Eigen::FullPivLU<CMat> lu(K);
          if (!lu.isInvertible()) throw SolverError("singular LDG block at wavenumber " + std::to_string(kx) + "," + std::to_string(ky));
          out = lu.inverse();
        }
      }
  }

  // rhs and x are cell-major (cell*nb + m), cell = j*nx + i.
  void solve(const std::vector<double>& rhs, std::vector<double>& x) const {
    const size_t nc = static_cast<size_t>(nx_) * ny_;
    std::vector<std::vector<cplx>> hat(nb_, std::vector<cplx>(nc));
    for (int m = 0; m < nb_; ++m) {
      for (size_t c = 0; c < nc; ++c) hat[m][c] = rhs[c * nb_ + m];
      fft2(hat[m], false);
    }
    Eigen::VectorXcd v(nb_);
    for (size_t c = 0; c < nc; ++c) {
      for (int m = 0; m < nb_; ++m) v[m] = hat[m][c];
      const Eigen::VectorXcd s = inv_[c] * v;
      for (int m = 0; m < nb_; ++m) hat[m][c] = s[m];
    }
    x.assign(nc * nb_, 0.0);
    for (int m = 0; m < nb_; ++m) {
      fft2(hat[m], true);
      for (size_t c = 0; c < nc; ++c) x[c * nb_ + m] = hat[m][c].real();
    }
  }

 private:
  void fft2(std::vector<cplx>& a, bool inverse) const {
    Eigen::FFT<double> fft;
    std::vector<cplx> in(nx_), out(nx_);
    for (int j = 0; j < ny_; ++j) {
      for (int i = 0; i < nx_; ++i) in[i] = a[static_cast<size_t>(j) * nx_ + i];
      if (inverse) fft.inv(out, in); else fft.fwd(out, in);
      for (int i = 0; i < nx_; ++i) a[static_cast<size_t>(j) * nx_ + i] = out[i];
    }
    if (ny_ == 1) return;
    std::vector<cplx> iny(ny_), outy(ny_);
    for (int i = 0; i < nx_; ++i) {
      for (int j = 0; j < ny_; ++j) iny[j] = a[static_cast<size_t>(j) * nx_ + i];
      if (inverse) fft.inv(outy, iny); else fft.fwd(outy, iny);
      for (int j = 0; j < ny_; ++j) a[static_cast<size_t>(j) * nx_ + i] = outy[j];
    }
  }

  int nx_, ny_, nb_;
  std::vector<CMat> inv_;
};

struct CacheEntry {
  int dim, nx, ny, r;
  double hx, hy;
  std::shared_ptr<const BasisOps> ops;
  std::shared_ptr<const CirculantSolver> solver;
};

std::mutex g_cache_mu;
std::list<CacheEntry> g_cache;

const CacheEntry& lookup(int dim, int nx, int ny, double hx, double hy, int r) {
  std::lock_guard<std::mutex> lock(g_cache_mu);
  for (auto it = g_cache.begin(); it != g_cache.end(); ++it)
    if (it->dim == dim && it->nx == nx && it->ny == ny && it->r == r && it->hx == hx && it->hy == hy) {
      g_cache.splice(g_cache.begin(), g_cache, it);
      return g_cache.front();
    }
  auto ops = std::make_shared<BasisOps>(dim == 1 ? build_ops_1d(r) : build_ops_2d(Basis2D::make(Space::P, r)));
  finish_ops(*ops);
  auto solver = std::make_shared<CirculantSolver>(*ops, nx, ny, hx, hy);
  g_cache.push_front({dim, nx, ny, r, hx, hy, ops, solver});
  while (g_cache.size() > 4) g_cache.pop_back();
  return g_cache.front();
}

void check_degree(int r) {
  if (r < 0 || r > kMaxDegree) throw ConfigError("Poisson degree must be in [0, 3], got " + std::to_string(r));
}

// q = (2/h) N^{-1} (G0 phi_c + Gm phi_{c-1}) along one direction.
void gradient(const BasisOps& ops, int axis, int nx, int ny, double h, const std::vector<double>& phi,
              std::vector<double>& q) {
  const int nb = ops.nb;
  const DirOps& d = ops.dir[axis];
  q.assign(phi.size(), 0.0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int im = axis == 0 ? wrap_index(i - 1, nx) : i;
      const int jm = axis == 1 ? wrap_index(j - 1, ny) : j;
      const double* pc = phi.data() + static_cast<size_t>(j * nx + i) * nb;
      const double* pm = phi.data() + static_cast<size_t>(jm * nx + im) * nb;
      double* out = q.data() + static_cast<size_t>(j * nx + i) * nb;
      for (int n = 0; n < nb; ++n) {
        double s = 0.0;
        for (int m = 0; m < nb; ++m) s += d.G0(n, m) * pc[m] + d.Gm(n, m) * pm[m];
        out[n] = 2.0 / h * s / ops.N[n];
      }
    }
}

}  // namespace

Vec2 FieldSolution2D::velocity(double x, double y) const {
  const CellLocation2D loc = locate_cell(x, y, vx.mesh);
  return {eval_2d(vx.basis, vx.cell(loc.i, loc.j), loc.xi, loc.eta),
          eval_2d(vy.basis, vy.cell(loc.i, loc.j), loc.xi, loc.eta)};
}

FieldSolution1D solve_poisson_1d(const Solution1D& rho, int r) {
  check_degree(r);
  const Mesh1D& mesh = rho.mesh;
  const double mean = rho.mass() / mesh.length();
  if (std::abs(mean) > 1e-10)
    throw PoissonIncompatibilityError("Poisson source has nonzero mean " + std::to_string(mean));
  const CacheEntry& e = lookup(1, mesh.n, 1, mesh.dx, 1.0, r);
  const BasisOps& ops = *e.ops;
  const int nb = r + 1;
  std::vector<double> rhs(static_cast<size_t>(mesh.n) * nb, 0.0), phi;
  for (int j = 0; j < mesh.n; ++j)
    for (int m = 0; m <= std::min(r, rho.k); ++m) rhs[j * nb + m] = ops.N[m] * rho.cell(j)[m];
  e.solver->solve(rhs, phi);
  std::vector<double> q;
  gradient(ops, 0, mesh.n, 1, mesh.dx, phi, q);
  FieldSolution1D f;
  f.phi = Solution1D(mesh, r);
  f.E = Solution1D(mesh, r);
  f.phi.c = phi;
  for (size_t i = 0; i < q.size(); ++i) f.E.c[i] = -q[i];
  f.phi.time = f.E.time = rho.time;
  return f;
}

FieldSolution2D solve_poisson_2d(const Solution2D& source, PoissonSign sign, int r) {
  check_degree(r);
  const Mesh2D& mesh = source.mesh;
  const double mean = source.mass() / mesh.area();
  if (std::abs(mean) > 1e-10)
    throw PoissonIncompatibilityError("Poisson source has nonzero mean " + std::to_string(mean));
  const CacheEntry& e = lookup(2, mesh.nx(), mesh.ny(), mesh.x.dx, mesh.y.dx, r);
  const BasisOps& ops = *e.ops;
  const Basis2D pb = Basis2D::make(Space::P, r);
  const int nb = pb.n;
  const size_t nc = static_cast<size_t>(mesh.ncells());
  std::vector<double> rhs(nc * nb), phi;
  const double sgn = sign == PoissonSign::guiding ? 1.0 : -1.0;
  double tmp[kMaxBasis];
  for (size_t c = 0; c < nc; ++c) {
    project_between(source.basis, source.c.data() + c * source.nb(), pb, tmp);
    for (int m = 0; m < nb; ++m) rhs[c * nb + m] = sgn * ops.N[m] * tmp[m];
  }
  e.solver->solve(rhs, phi);
  FieldSolution2D f;
  f.phi = Solution2D(mesh, Space::P, r);
  f.phi.c = phi;
  std::vector<double> q;
  f.q1 = f.phi;
  gradient(ops, 0, mesh.nx(), mesh.ny(), mesh.x.dx, phi, q);
  f.q1.c = q;
  f.q2 = f.phi;
  gradient(ops, 1, mesh.nx(), mesh.ny(), mesh.y.dx, phi, q);
  f.q2.c = q;
  f.vx = f.q2;
  for (double& v : f.vx.c) v = -v;
  f.vy = f.q1;
  f.phi.time = f.q1.time = f.q2.time = f.vx.time = f.vy.time = source.time;
  return f;
}

double poisson_residual_2d(const Solution2D& source_pr, PoissonSign sign, const Solution2D& phi) {
  const Mesh2D& mesh = phi.mesh;
  const int r = phi.k();
  const CacheEntry& e = lookup(2, mesh.nx(), mesh.ny(), mesh.x.dx, mesh.y.dx, r);
  const BasisOps& ops = *e.ops;
  const int nb = ops.nb;
  const int nx = mesh.nx(), ny = mesh.ny();
  const double sgn = sign == PoissonSign::guiding ? 1.0 : -1.0;
  const double c[2] = {4.0 / (mesh.x.dx * mesh.x.dx), 4.0 / (mesh.y.dx * mesh.y.dx)};
  double worst = 0.0, scale = 1.0;
  const Basis2D pb = Basis2D::make(Space::P, r);
  double tmp[kMaxBasis];
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      project_between(source_pr.basis, source_pr.cell(i, j), pb, tmp);
      for (int n = 0; n < nb; ++n) {
        double s = 0.0;
        for (int axis = 0; axis < 2; ++axis) {
          const DirOps& d = ops.dir[axis];
          const double* pc = phi.cell(i, j);
          const double* pm = axis == 0 ? phi.cell(wrap_index(i - 1, nx), j) : phi.cell(i, wrap_index(j - 1, ny));
          const double* pp = axis == 0 ? phi.cell(wrap_index(i + 1, nx), j) : phi.cell(i, wrap_index(j + 1, ny));
          for (int m = 0; m < nb; ++m) s += c[axis] * (d.K0(n, m) * pc[m] + d.Km(n, m) * pm[m] + d.Kp(n, m) * pp[m]);
        }
        const double b = sgn * ops.N[n] * tmp[n];
        scale = std::max(scale, std::abs(b));
        worst = std::max(worst, std::abs(s - b));
      }
    }
  return worst / scale;
}

}  // namespace sldg
