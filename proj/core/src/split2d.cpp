#include "sldg/split2d.hpp"

#include "sldg/error.hpp"
#include "sldg/quadrature.hpp"

namespace sldg {
namespace {

struct LineMaps {
  int k;
  int K;
  // restrict[q][b] = P_b(node_q); lift[q][b] = w_q P_b(node_q) (2b+1)/2
  double restrict_[kMaxDegree + 1][kMaxDegree + 1];
  double lift[kMaxDegree + 1][kMaxDegree + 1];
  explicit LineMaps(int degree) : k(degree), K(degree + 1) {
    const QuadratureRule& g = gauss_legendre(K);
    for (int q = 0; q < K; ++q) {
      legendre_all(k, g.nodes[q], restrict_[q]);
      for (int b = 0; b < K; ++b) lift[q][b] = g.weights[q] * restrict_[q][b] / legendre_norm2(b);
    }
  }
};

// Along-line index s, transverse index t for the Q index a*K+b.
inline int q_index(Axis axis, int along, int across, int K) {
  return axis == Axis::x ? along * K + across : across * K + along;
}

void require_q(const Solution2D& u) {
  if (u.space() != Space::Q) throw ConfigError("dimensional splitting needs a Q^k solution");
}

}  // namespace

LineFamily extract_lines(const Solution2D& u, Axis axis) {
  require_q(u);
  const int k = u.k(), K = k + 1;
  const LineMaps maps(k);
  const QuadratureRule& g = gauss_legendre(K);
  const Mesh1D& along = axis == Axis::x ? u.mesh.x : u.mesh.y;
  const Mesh1D& across = axis == Axis::x ? u.mesh.y : u.mesh.x;
  LineFamily fam;
  fam.axis = axis;
  fam.k = k;
  for (int t = 0; t < across.n; ++t)
    for (int q = 0; q < K; ++q) {
      fam.transverse.push_back(across.to_physical(t, g.nodes[q]));
      Solution1D line(along, k);
      line.time = u.time;
      for (int s = 0; s < along.n; ++s) {
        const double* c = axis == Axis::x ? u.cell(s, t) : u.cell(t, s);
        for (int p = 0; p < K; ++p) {
          double v = 0.0;
          for (int b = 0; b < K; ++b) v += c[q_index(axis, p, b, K)] * maps.restrict_[q][b];
          line.cell(s)[p] = v;
        }
      }
      fam.lines.push_back(std::move(line));
    }
  return fam;
}

Solution2D insert_lines(const LineFamily& fam, const Solution2D& like) {
  require_q(like);
  const int k = like.k(), K = k + 1;
  const Mesh1D& along = fam.axis == Axis::x ? like.mesh.x : like.mesh.y;
  const Mesh1D& across = fam.axis == Axis::x ? like.mesh.y : like.mesh.x;
  if (static_cast<int>(fam.lines.size()) != across.n * K || fam.k != k)
    throw ConfigError("line family is incomplete");
  const LineMaps maps(k);
  Solution2D u = like;
  for (int t = 0; t < across.n; ++t)
    for (int s = 0; s < along.n; ++s) {
      double* c = fam.axis == Axis::x ? u.cell(s, t) : u.cell(t, s);
      for (int p = 0; p < K; ++p)
        for (int b = 0; b < K; ++b) {
          double v = 0.0;
          for (int q = 0; q < K; ++q) v += maps.lift[q][b] * fam.lines[t * K + q].cell(s)[p];
          c[q_index(fam.axis, p, b, K)] = v;
        }
    }
  if (!fam.lines.empty()) u.time = fam.lines.front().time;
  return u;
}

void sweep(Solution2D& u, Axis axis, const LineVelocityFactory& vel, double t0, double dt, int substeps) {
  require_q(u);
  const int k = u.k(), K = k + 1;
  const LineMaps maps(k);
  const QuadratureRule& g = gauss_legendre(K);
  const Mesh1D& along = axis == Axis::x ? u.mesh.x : u.mesh.y;
  const Mesh1D& across = axis == Axis::x ? u.mesh.y : u.mesh.x;
  const int n = along.n;
  const size_t line_size = static_cast<size_t>(n) * K;

#pragma omp parallel
  {
    Workspace1D ws;
    std::vector<double> in(line_size * K), out(line_size * K);
#pragma omp for schedule(static)
    for (int t = 0; t < across.n; ++t) {
      for (int s = 0; s < n; ++s) {
        const double* c = axis == Axis::x ? u.cell(s, t) : u.cell(t, s);
        for (int q = 0; q < K; ++q)
          for (int p = 0; p < K; ++p) {
            double v = 0.0;
            for (int b = 0; b < K; ++b) v += c[q_index(axis, p, b, K)] * maps.restrict_[q][b];
            in[q * line_size + s * K + p] = v;
          }
      }
      for (int q = 0; q < K; ++q) {
        const LineVelocity a = vel(t, q, across.to_physical(t, g.nodes[q]));
        advance_line(along, k, in.data() + q * line_size, out.data() + q * line_size, a, t0, dt, substeps, ws);
      }
      for (int s = 0; s < n; ++s) {
        double* c = axis == Axis::x ? u.cell(s, t) : u.cell(t, s);
        for (int p = 0; p < K; ++p)
          for (int b = 0; b < K; ++b) {
            double v = 0.0;
            for (int q = 0; q < K; ++q) v += maps.lift[q][b] * out[q * line_size + s * K + p];
            c[q_index(axis, p, b, K)] = v;
          }
      }
    }
  }
}

LineVelocityFactory line_velocity_from(const Scalar2D& a, Axis axis, const Mesh2D&) {
  if (axis == Axis::x)
    return [a](int, int, double y) { return LineVelocity::function([a, y](double x, double t) { return a(x, y, t); }); };
  return [a](int, int, double x) { return LineVelocity::function([a, x](double y, double t) { return a(x, y, t); }); };
}

Solution2D strang_step(const Solution2D& u, const LineVelocityFactory& ax, const LineVelocityFactory& by, double t0,
                       double dt, int substeps) {
  Solution2D v = u;
  sweep(v, Axis::x, ax, t0, 0.5 * dt, substeps);
  sweep(v, Axis::y, by, t0, dt, substeps);
  sweep(v, Axis::x, ax, t0 + 0.5 * dt, 0.5 * dt, substeps);
  v.time = t0 + dt;
  return v;
}

Solution2D strang_step(const Solution2D& u, const Scalar2D& a, const Scalar2D& b, double t0, double dt,
                       int substeps) {
  return strang_step(u, line_velocity_from(a, Axis::x, u.mesh), line_velocity_from(b, Axis::y, u.mesh), t0, dt,
                     substeps);
}

}  // namespace sldg
