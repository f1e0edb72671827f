#include "sldg/models.hpp"

#include <cmath>
#include <memory>

#include "sldg/error.hpp"
#include "sldg/limiter.hpp"
#include "sldg/quadrature.hpp"

namespace sldg {
namespace {

constexpr double kMaxIonDrift = 1e-8;

void maybe_limit(Solution2D& u, const ModelOptions& opt) {
  if (opt.limiter) apply_positivity_limiter(u);
}

void require_finite(const Solution2D& u, const char* what) {
  for (double v : u.c)
    if (!std::isfinite(v)) throw SolverError(std::string("non-finite values in predicted ") + what);
}

// Shared prediction-correction driver for the non-split models.
using FieldOf = std::function<FrozenField2D(const Solution2D&)>;

Solution2D transport(const Solution2D& u, const VelocityField2D& field, double dt, const ModelOptions& opt,
                     bool euler_feet = false) {
  NonsplitOptions no;
  no.mode = opt.mode;
  no.substeps = opt.substeps;
  no.euler_feet = euler_feet;
  Solution2D v = step_2d(u, field, dt, no);
  maybe_limit(v, opt);
  return v;
}

Solution2D order2(const Solution2D& u, const FrozenField2D& Fn, double dt, const ModelOptions& opt,
                  const FieldOf& field_of) {
  const double t0 = u.time;
  const Solution2D pred = transport(u, VelocityField2D::snapshots({t0}, {Fn}), dt, opt, true);
  require_finite(pred, "state");
  const FrozenField2D F1 = field_of(pred);
  return transport(u, VelocityField2D::snapshots({t0, t0 + dt}, {Fn, F1}), dt, opt);
}

Solution2D pc_step(const Solution2D& u, const FrozenField2D& Fn, double dt, const ModelOptions& opt,
                   const FieldOf& field_of) {
  if (opt.order == 2) return order2(u, Fn, dt, opt, field_of);
  if (opt.order != 3) throw ConfigError("tracing order must be 2 or 3");
  const double t0 = u.time;
  const Solution2D half = order2(u, Fn, 0.5 * dt, opt, field_of);
  const Solution2D full = order2(u, Fn, dt, opt, field_of);
  require_finite(half, "state");
  require_finite(full, "state");
  const FrozenField2D Fh = field_of(half), F1 = field_of(full);
  return transport(u, VelocityField2D::snapshots({t0, t0 + 0.5 * dt, t0 + dt}, {Fn, Fh, F1}), dt, opt);
}

FrozenField2D vp_sample(const FieldSolution1D& field) {
  auto E = std::make_shared<const Solution1D>(field.E);
  return [E](double x, double v) { return Vec2{v, E->eval(x)}; };
}

FrozenField2D fluid_sample(const FieldSolution2D& field) {
  auto F = std::make_shared<const FieldSolution2D>(field);
  return [F](double x, double y) { return F->velocity(x, y); };
}

}  // namespace

Solution1D vp_charge(const Solution2D& f, double rho_ion) {
  const int k = f.k();
  Solution1D rho(f.mesh.x, k);
  rho.time = f.time;
  for (int i = 0; i < f.mesh.nx(); ++i)
    for (int a = 0; a <= k; ++a) {
      const int m = f.basis.find(a, 0);
      double s = 0.0;
      for (int j = 0; j < f.mesh.ny(); ++j) s += f.cell(i, j)[m];
      rho.cell(i)[a] = s * f.mesh.y.dx - (a == 0 ? rho_ion : 0.0);
    }
  return rho;
}

FieldSolution1D vp_field(const Solution2D& f, const ModelOptions& opt) {
  // The truncated v-interval lets a tail-sized amount of mass through its
  // ends in the non-split scheme, so neutrality is restored against the
  // current mass. Anything beyond tail size is a real drift.
  const double ion = f.mass() / f.mesh.x.length();
  if (std::abs(ion - opt.rho_ion) > kMaxIonDrift * std::abs(opt.rho_ion))
    throw PoissonIncompatibilityError("phase-space mass drifted by " + std::to_string(ion / opt.rho_ion - 1.0));
  return solve_poisson_1d(vp_charge(f, ion), opt.r);
}

Solution2D vp_strang_step(const Solution2D& f, double dt, const ModelOptions& opt) {
  const double t0 = f.time;
  Solution2D u = f;
  const LineVelocityFactory along_x = [](int, int, double v) { return LineVelocity::constant(v); };
  sweep(u, Axis::x, along_x, t0, 0.5 * dt, opt.substeps);
  maybe_limit(u, opt);
  std::shared_ptr<const Solution1D> E;
  if (opt.frozen) {
    const FrozenField2D fr = opt.frozen;
    const LineVelocityFactory along_v = [fr](int, int, double x) { return LineVelocity::constant(fr(x, 0.0).y); };
    sweep(u, Axis::y, along_v, t0, dt, opt.substeps);
  } else {
    E = std::make_shared<const Solution1D>(vp_field(u, opt).E);
    const LineVelocityFactory along_v = [E](int, int, double x) { return LineVelocity::constant(E->eval(x)); };
    sweep(u, Axis::y, along_v, t0, dt, opt.substeps);
  }
  maybe_limit(u, opt);
  sweep(u, Axis::x, along_x, t0 + 0.5 * dt, 0.5 * dt, opt.substeps);
  maybe_limit(u, opt);
  u.time = t0 + dt;
  return u;
}

Solution2D vp_nonsplit_step(const Solution2D& f, double dt, const ModelOptions& opt, const FieldSolution1D* En) {
  FieldOf field_of;
  FrozenField2D Fn;
  if (opt.frozen) {
    field_of = [fr = opt.frozen](const Solution2D&) { return fr; };
    Fn = opt.frozen;
  } else {
    field_of = [opt](const Solution2D& s) { return vp_sample(vp_field(s, opt)); };
    Fn = En ? vp_sample(*En) : vp_sample(vp_field(f, opt));
  }
  return pc_step(f, Fn, dt, opt, field_of);
}

FieldSolution2D fluid_field(const Solution2D& w, FluidKind kind, int r) {
  return solve_poisson_2d(w, kind == FluidKind::euler ? PoissonSign::euler : PoissonSign::guiding, r);
}

LineVelocity restrict_to_line(const Solution2D& comp, Axis axis, int cell, double local) {
  const int r = comp.k();
  const Mesh1D& along = axis == Axis::x ? comp.mesh.x : comp.mesh.y;
  std::vector<double> coef(static_cast<size_t>(along.n) * (r + 1), 0.0);
  double p[kMaxDegree + 1];
  legendre_all(r, local, p);
  for (int s = 0; s < along.n; ++s) {
    const double* c = axis == Axis::x ? comp.cell(s, cell) : comp.cell(cell, s);
    for (int m = 0; m < comp.nb(); ++m) {
      const int da = axis == Axis::x ? comp.basis.a[m] : comp.basis.b[m];
      const int dt = axis == Axis::x ? comp.basis.b[m] : comp.basis.a[m];
      coef[static_cast<size_t>(s) * (r + 1) + da] += c[m] * p[dt];
    }
  }
  return LineVelocity::piecewise(along, r, std::move(coef));
}

Solution2D gc_split_step(const Solution2D& w, double dt, FluidKind kind, const ModelOptions& opt) {
  const double t0 = w.time;
  const int K = w.k() + 1;
  const QuadratureRule& g = gauss_legendre(K);
  Solution2D u = w;
  auto sweep_with = [&](Axis axis, double ts, double h) {
    if (opt.frozen) {
      const FrozenField2D fr = opt.frozen;
      const LineVelocityFactory vel = [fr, axis](int, int, double pos) {
        return LineVelocity::function([fr, axis, pos](double s, double) {
          return axis == Axis::x ? fr(s, pos).x : fr(pos, s).y;
        });
      };
      sweep(u, axis, vel, ts, h, opt.substeps);
    } else {
      const FieldSolution2D F = fluid_field(u, kind, opt.r);
      const Solution2D& comp = axis == Axis::x ? F.vx : F.vy;
      const LineVelocityFactory vel = [&comp, &g, axis](int cell, int q, double) {
        return restrict_to_line(comp, axis, cell, g.nodes[q]);
      };
      sweep(u, axis, vel, ts, h, opt.substeps);
    }
    maybe_limit(u, opt);
  };
  sweep_with(Axis::x, t0, 0.5 * dt);
  sweep_with(Axis::y, t0, dt);
  sweep_with(Axis::x, t0 + 0.5 * dt, 0.5 * dt);
  u.time = t0 + dt;
  return u;
}

Solution2D gc_nonsplit_step(const Solution2D& w, double dt, FluidKind kind, const ModelOptions& opt,
                            const FieldSolution2D* Fn) {
  FieldOf field_of;
  FrozenField2D F0;
  if (opt.frozen) {
    field_of = [fr = opt.frozen](const Solution2D&) { return fr; };
    F0 = opt.frozen;
  } else {
    field_of = [kind, r = opt.r](const Solution2D& s) { return fluid_sample(fluid_field(s, kind, r)); };
    F0 = Fn ? fluid_sample(*Fn) : fluid_sample(fluid_field(w, kind, opt.r));
  }
  return pc_step(w, F0, dt, opt, field_of);
}

double max_speed(const Solution2D& comp) {
  const QuadratureRule& gl = gauss_lobatto(comp.k() + 2);
  double mx = 0.0;
  double phi[kMaxBasis];
  for (int a = 0; a < gl.size(); ++a)
    for (int b = 0; b < gl.size(); ++b) {
      comp.basis.eval_all(gl.nodes[a], gl.nodes[b], phi);
      for (int c = 0; c < comp.mesh.ncells(); ++c) {
        const double* cc = comp.c.data() + static_cast<size_t>(c) * comp.nb();
        double v = 0.0;
        for (int m = 0; m < comp.nb(); ++m) v += cc[m] * phi[m];
        mx = std::max(mx, std::abs(v));
      }
    }
  return mx;
}

double max_speed(const Solution1D& comp) {
  const QuadratureRule& gl = gauss_lobatto(comp.k + 2);
  double mx = 0.0;
  for (int j = 0; j < comp.mesh.n; ++j)
    for (int q = 0; q < gl.size(); ++q) mx = std::max(mx, std::abs(eval_1d(comp.cell(j), comp.k, gl.nodes[q])));
  return mx;
}

}  // namespace sldg
