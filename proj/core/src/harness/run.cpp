#include "sldg/harness/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "sldg/models.hpp"
#include "sldg/nonsplit2d.hpp"
#include "sldg/split2d.hpp"

namespace sldg::harness {

double compute_dt(double cfl, const Mesh2D& mesh, double a_max, double b_max) {
  const double rate = std::abs(a_max) / mesh.x.dx + std::abs(b_max) / mesh.y.dx;
  if (!(rate > 0.0)) throw ConfigError("zero transport speed in both directions");
  return cfl / rate;
}

double truncate_dt(double t, double dt, double stop) {
  const double left = stop - t;
  if (dt >= left - 1e-12 * std::max(1.0, std::abs(stop))) return left;
  return dt;
}

Space space_of(const CaseConfig& cfg) { return cfg.is_split() ? Space::Q : Space::P; }

namespace {

using Clock = std::chrono::steady_clock;

struct Stepper {
  const CaseSetup& s;
  const CaseConfig& cfg;
  ModelOptions mo;
  FieldSolution1D vp;
  FieldSolution2D fluid;

  Stepper(const CaseSetup& setup, const CaseConfig& c, const Solution2D& u0) : s(setup), cfg(c) {
    mo.r = cfg.r;
    mo.limiter = cfg.limiter;
    mo.substeps = std::max(1, cfg.substeps);
    mo.order = cfg.order;
    mo.mode = cfg.qc ? UpstreamMode::qc : UpstreamMode::quad;
    if (s.info.model == Model::vlasov_poisson) mo.rho_ion = u0.mass() / s.mesh.x.length();
    update_field(u0);
  }

  FluidKind kind() const { return s.info.model == Model::euler ? FluidKind::euler : FluidKind::guiding; }

  void update_field(const Solution2D& u) {
    switch (s.info.model) {
      case Model::linear: break;
      case Model::vlasov_poisson: vp = vp_field(u, mo); break;
      default: fluid = fluid_field(u, kind(), cfg.r);
    }
  }

  void speeds(double& a, double& b) const {
    switch (s.info.model) {
      case Model::linear:
        a = s.a_max;
        b = s.b_max;
        break;
      case Model::vlasov_poisson:
        a = std::max(std::abs(s.mesh.y.lo), std::abs(s.mesh.y.hi));
        b = max_speed(vp.E);
        break;
      default:
        a = max_speed(fluid.vx);
        b = max_speed(fluid.vy);
    }
  }

  Solution2D step(const Solution2D& u, double dt) const {
    const bool split = cfg.is_split();
    switch (s.info.model) {
      case Model::linear: {
        if (split) {
          if (s.constant_velocity) {
            const Vec2 c = s.velocity(0.0, 0.0, u.time);
            const LineVelocityFactory ax = [c](int, int, double) { return LineVelocity::constant(c.x); };
            const LineVelocityFactory by = [c](int, int, double) { return LineVelocity::constant(c.y); };
            return strang_step(u, ax, by, u.time, dt, mo.substeps);
          }
          const Field2D& v = s.velocity;
          const Scalar2D a = [v](double x, double y, double t) { return v(x, y, t).x; };
          const Scalar2D b = [v](double x, double y, double t) { return v(x, y, t).y; };
          return strang_step(u, a, b, u.time, dt, mo.substeps);
        }
        NonsplitOptions no;
        no.mode = mo.mode;
        no.substeps = mo.substeps;
        return step_2d(u, VelocityField2D::analytic(s.velocity), dt, no);
      }
      case Model::vlasov_poisson:
        return split ? vp_strang_step(u, dt, mo) : vp_nonsplit_step(u, dt, mo, &vp);
      default:
        return split ? gc_split_step(u, dt, kind(), mo) : gc_nonsplit_step(u, dt, kind(), mo, &fluid);
    }
  }

  double lipschitz(const Solution2D& u) const {
    if (s.info.model == Model::euler || s.info.model == Model::guiding_center) return max_speed(u);
    return s.lipschitz;
  }

  InvariantValues invariants(const Solution2D& u) const {
    switch (s.info.model) {
      case Model::linear: return linear_invariants(u, u.time);
      case Model::vlasov_poisson: return vp_invariants(u, vp, u.time);
      default: return fluid_invariants(u, fluid, u.time);
    }
  }
};

}  // namespace

RunResult run_case(const CaseConfig& cfg_in) {
  const CaseSetup s = make_case(cfg_in);
  RunResult res;
  res.cfg = resolved(cfg_in);
  const CaseConfig& cfg = res.cfg;

  Solution2D u = project_2d(s.initial, s.mesh, space_of(cfg), cfg.k);
  u.time = 0.0;
  res.initial = u;

  std::vector<double> stops;
  for (double t : cfg.snapshot_times)
    if (t < s.T) stops.push_back(t);
  std::sort(stops.begin(), stops.end());
  stops.push_back(s.T);

  Stepper st(s, cfg, u);
  InvariantRecord rec;
  rec.initial = rec.value = st.invariants(u);
  res.invariants.push_back(rec);

  double t = 0.0;
  double cpu = 0.0;
  size_t next = 0;
  int step = 0;
  while (next < stops.size()) {
    const double stop = stops[next];
    const auto t0 = Clock::now();
    double a = 0.0, b = 0.0;
    st.speeds(a, b);
    const double dt = truncate_dt(t, compute_dt(cfg.cfl, s.mesh, a, b), stop);
    const bool hits = dt == stop - t;
    if (cfg.substeps <= 0) st.mo.substeps = tracing_substeps(dt, st.lipschitz(u));
    try {
      u = st.step(u, dt);
      t = hits ? stop : t + dt;
      u.time = t;
      st.update_field(u);
    } catch (const NumericalError& e) {
      throw RunAborted(step, e.what());
    }
    cpu += std::chrono::duration<double>(Clock::now() - t0).count();
    ++step;
    res.dts.push_back(dt);
    rec.value = st.invariants(u);
    res.invariants.push_back(rec);
    if (hits) {
      if (next + 1 < stops.size()) res.snapshots.push_back({t, u});
      ++next;
    }
  }
  res.final = std::move(u);
  res.cpu_seconds = cpu;
  res.steps = step;
  return res;
}

}  // namespace sldg::harness
