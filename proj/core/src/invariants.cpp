#include "sldg/invariants.hpp"

#include <algorithm>

#include "sldg/quadrature.hpp"

namespace sldg {
namespace {

struct Sums {
  double mass = 0, l1 = 0, l2 = 0, v2 = 0, ent = 0;
};

Sums integrate(const Solution2D& u, bool with_v2) {
  const QuadratureRule& g = gauss_legendre(u.k() + 3);
  const int ng = g.size();
  std::vector<double> phi(static_cast<size_t>(ng) * ng * u.nb());
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < ng; ++b) u.basis.eval_all(g.nodes[a], g.nodes[b], phi.data() + (a * ng + b) * u.nb());
  Sums s;
  const double J = 0.25 * u.mesh.cell_area();
  for (int j = 0; j < u.mesh.ny(); ++j)
    for (int i = 0; i < u.mesh.nx(); ++i) {
      const double* c = u.cell(i, j);
      for (int a = 0; a < ng; ++a)
        for (int b = 0; b < ng; ++b) {
          const double* p = phi.data() + (a * ng + b) * u.nb();
          double v = 0.0;
          for (int m = 0; m < u.nb(); ++m) v += c[m] * p[m];
          const double w = J * g.weights[a] * g.weights[b];
          s.mass += w * v;
          s.l1 += w * std::abs(v);
          s.l2 += w * v * v;
          if (with_v2) {
            const double y = u.mesh.y.to_physical(j, g.nodes[b]);
            s.v2 += w * v * y * y;
            s.ent += w * v * std::log(std::max(v, 1e-14));
          }
        }
    }
  return s;
}

}  // namespace

double InvariantRecord::mass_dev() const {
  // Signed unknowns can have zero mass; measure against the L1 norm then.
  const double ref = std::max(std::abs(initial.mass), initial.l1);
  return ref != 0.0 ? (value.mass - initial.mass) / ref : value.mass - initial.mass;
}

InvariantValues vp_invariants(const Solution2D& f, const FieldSolution1D& field, double time) {
  const Sums s = integrate(f, true);
  double e2 = 0.0;
  const Solution1D& E = field.E;
  for (int j = 0; j < E.mesh.n; ++j)
    for (int m = 0; m <= E.k; ++m) e2 += E.cell(j)[m] * E.cell(j)[m] * legendre_norm2(m);
  e2 *= 0.5 * E.mesh.dx;
  InvariantValues v;
  v.time = time;
  v.mass = s.mass;
  v.l1 = s.l1;
  v.l2 = std::sqrt(s.l2);
  v.energy = s.v2 + e2;
  v.entropy_or_enstrophy = s.ent;
  return v;
}

InvariantValues fluid_invariants(const Solution2D& w, const FieldSolution2D& field, double time) {
  const Sums s = integrate(w, false);
  const double ux = field.vx.l2_norm(), uy = field.vy.l2_norm();
  InvariantValues v;
  v.time = time;
  v.mass = s.mass;
  v.l1 = s.l1;
  v.l2 = std::sqrt(s.l2);
  v.energy = ux * ux + uy * uy;
  v.entropy_or_enstrophy = s.l2;
  return v;
}

InvariantValues linear_invariants(const Solution2D& u, double time) {
  const Sums s = integrate(u, false);
  InvariantValues v;
  v.time = time;
  v.mass = s.mass;
  v.l1 = s.l1;
  v.l2 = std::sqrt(s.l2);
  return v;
}

}  // namespace sldg
