// Acceptance checks, one criterion per invocation:
//   sldg_acceptance <1..9> [--cache DIR]
// Prints one line per measured quantity and a final
// "[PRIMARY] Cn <title>: PASS|FAIL" line; exit status 1 on FAIL.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#ifdef SLDG_HAVE_OPENMP
#include <omp.h>
#endif

#include "sldg/harness/case_config.hpp"
#include "sldg/harness/cases.hpp"
#include "sldg/harness/io.hpp"
#include "sldg/harness/run.hpp"
#include "sldg/harness/table.hpp"
#include "sldg/limiter.hpp"
#include "sldg/nonsplit2d.hpp"
#include "sldg/poisson.hpp"
#include "sldg/quadrature.hpp"
#include "sldg/sldg1d.hpp"

using namespace sldg;
using namespace sldg::harness;

namespace {

std::string g_cache = ".";

struct Report {
  bool ok = true;
  void check(bool cond, const std::string& what) {
    std::printf("  %-4s %s\n", cond ? "ok" : "FAIL", what.c_str());
    std::fflush(stdout);
    ok = ok && cond;
  }
  void note(const std::string& what) {
    std::printf("       %s\n", what.c_str());
    std::fflush(stdout);
  }
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool within_factor(double e, double paper, double f) { return e >= paper / f && e <= paper * f; }
bool near(double v, double target, double tol) { return std::abs(v - target) <= tol; }

CaseConfig config(const std::string& id, const std::string& scheme, int k, int n, double cfl, bool qc = false) {
  CaseConfig c;
  c.case_id = id;
  c.scheme = scheme;
  c.k = k;
  c.nx = c.ny = n;
  c.cfl = cfl;
  c.qc = qc;
  return c;
}

std::string label(const CaseConfig& c) {
  if (c.is_split()) return fmt("Q%d split", c.k);
  return fmt("P%d%s", c.k, c.qc ? " QC" : "");
}

double exact_error(const RunResult& r, int npts = 0) {
  const CaseSetup s = make_case(r.cfg);
  const double t = r.final.time;
  return compare_solutions(r.final, [&](double x, double y) { return s.exact(x, y, t); }, npts).l2;
}

// Spatial orders between consecutive entries.
std::vector<double> spatial_orders(const std::vector<int>& ns, const std::vector<double>& e) {
  std::vector<double> o;
  for (size_t i = 1; i < e.size(); ++i) o.push_back(*observed_order(Refinement::spatial, ns[i - 1], e[i - 1], ns[i], e[i]));
  return o;
}

std::vector<double> temporal_orders(const std::vector<double>& cfl, const std::vector<double>& e) {
  std::vector<double> o;
  for (size_t i = 1; i < e.size(); ++i)
    o.push_back(*observed_order(Refinement::temporal, cfl[i - 1], e[i - 1], cfl[i], e[i]));
  return o;
}

std::string join(const std::vector<double>& v, const char* f = "%.2f") {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(f, v[i]);
  return s;
}

// Runs cfg, or reloads the final state from the cache when present.
Solution2D cached_run(const CaseConfig& cfg, const std::string& name, Report& rep) {
  const std::string path = (std::filesystem::path(g_cache) / (name + ".csv")).string();
  if (std::filesystem::exists(path)) {
    rep.note("reference " + name + " loaded from " + path);
    return read_snapshot(path);
  }
  const auto t0 = std::chrono::steady_clock::now();
  const RunResult r = run_case(cfg);
  const std::string tmp = path + ".tmp";
  write_snapshot(tmp, r.final);
  std::filesystem::rename(tmp, path);
  rep.note(fmt("reference %s computed in %.0f s (%d steps)", name.c_str(), seconds_since(t0), r.steps));
  return r.final;
}

// ---------------------------------------------------------------------------

bool c1(Report& rep) {
  const std::vector<int> ns = {20, 40, 80, 160};
  struct Seq {
    CaseConfig base;
    int npts;
  };
  // Split rows are measured on their own line nodes ((k+1)-point rule).
  const Seq seqs[] = {{config("linear-const", "nonsplit", 1, 0, 2.5), 0},
                      {config("linear-const", "split", 1, 0, 2.5), 2},
                      {config("linear-const", "split", 2, 0, 2.5), 3}};
  for (const Seq& s : seqs) {
    std::vector<double> e, e_full;
    const auto t0 = std::chrono::steady_clock::now();
    for (int n : ns) {
      CaseConfig c = s.base;
      c.nx = c.ny = n;
      const RunResult r = run_case(c);
      e.push_back(exact_error(r, s.npts));
      e_full.push_back(exact_error(r));
    }
    const double wall = seconds_since(t0);
    const std::vector<double> o = spatial_orders(ns, e);
    const std::string name = label(s.base);
    rep.note(name + " L2: " + join(e, "%.3e") + "  orders: " + join(o));
    if (s.npts > 0) rep.note(name + " L2 with (k+3) points: " + join(e_full, "%.3e"));
    rep.check(wall <= 120.0, fmt("%s sequence runtime %.1f s <= 120 s", name.c_str(), wall));
    if (s.base.k == 1) {
      bool all = true;
      for (double v : o) all = all && near(v, 2.0, 0.1);
      rep.check(all, name + " orders 2.0 +- 0.1 across 20..160");
    }
    if (!s.base.is_split())
      rep.check(within_factor(e.back(), 1.14e-4, 2.0), fmt("P1 160^2 L2 %.3e within factor 2 of 1.14e-4", e.back()));
    if (s.base.k == 2) {
      rep.check(within_factor(e.back(), 8.49e-8, 2.0),
                fmt("Q2 split 160^2 L2 %.3e within factor 2 of 8.49e-8", e.back()));
      rep.check(near(o.back(), 3.0, 0.1), fmt("Q2 split order 80->160 %.2f = 3.0 +- 0.1", o.back()));
    }
  }
  return rep.ok;
}

bool c2(Report& rep) {
  auto run = [](const std::string& scheme, int k, double cfl) {
    CaseConfig c = config("rigid-body", scheme, k, 160, cfl);
    c.gaussian = "elongated";
    const RunResult r = run_case(c);
    return std::pair{exact_error(r), r.cpu_seconds};
  };
  const std::vector<double> qc = {10, 15, 20, 25};
  std::vector<double> eq;
  for (double cfl : qc) {
    const auto [e, cpu] = run("split", 2, cfl);
    eq.push_back(e);
    rep.note(fmt("Q2 split CFL %g: L2 %.3e (cpu %.1f s)", cfl, e, cpu));
  }
  const std::vector<double> oq = temporal_orders(qc, eq);
  bool all = true;
  for (double v : oq) all = all && near(v, 2.0, 0.2);
  rep.check(all, "Q2 split temporal orders " + join(oq) + " within 2.0 +- 0.2");

  const std::vector<double> pc = {5, 10, 15, 20, 25};
  std::vector<double> ep;
  for (double cfl : pc) {
    const auto [e, cpu] = run("nonsplit", 2, cfl);
    ep.push_back(e);
    rep.note(fmt("P2 CFL %g: L2 %.3e (cpu %.1f s)", cfl, e, cpu));
  }
  const double mx = *std::max_element(ep.begin(), ep.end()), mn = *std::min_element(ep.begin(), ep.end());
  rep.check(mx / mn < 3.0, fmt("P2 error spread max/min = %.2f < 3", mx / mn));
  rep.check(mx < 1.2e-4, fmt("P2 max L2 %.3e < 1.2e-4", mx));
  return rep.ok;
}

// Swirling reference: P2 QC, 320^2, CFL 2.5 at T/2.
Solution2D swirl_reference(Report& rep) {
  CaseConfig c = config("swirling", "nonsplit", 2, 320, 2.5, true);
  c.T = 0.75;
  return cached_run(c, "swirling_p2qc_320_T0.75", rep);
}

bool c3(Report& rep) {
  const Solution2D ref = swirl_reference(rep);
  const std::vector<int> ns = {20, 40, 80, 160};
  auto spatial = [&](CaseConfig base) {
    std::vector<double> e;
    for (int n : ns) {
      base.nx = base.ny = n;
      base.T = 0.75;
      e.push_back(compare_solutions(run_case(base).final, ref).l2);
    }
    return e;
  };
  const std::vector<double> ep = spatial(config("swirling", "nonsplit", 2, 0, 2.5, true));
  const std::vector<double> op = spatial_orders(ns, ep);
  rep.note("P2 QC CFL 2.5 L2: " + join(ep, "%.3e") + "  orders: " + join(op));
  bool all = true;
  for (double v : op) all = all && near(v, 3.0, 0.3);
  rep.check(all, "P2 QC orders within 3.0 +- 0.3");

  const std::vector<double> es = spatial(config("swirling", "split", 2, 0, 10.5));
  const std::vector<double> os = spatial_orders(ns, es);
  rep.note("Q2 split CFL 10.5 L2: " + join(es, "%.3e") + "  orders: " + join(os));
  rep.check(near(os[1], 2.0, 0.3) && near(os[2], 2.0, 0.3),
            "Q2 split CFL 10.5 settles on order 2 (40->80, 80->160 within 2.0 +- 0.3)");

  // Time refinement at 160^2 against the same scheme at CFL 0.1.
  CaseConfig rc = config("swirling", "split", 2, 160, 0.1);
  rc.T = 0.75;
  const Solution2D tref = cached_run(rc, "swirling_q2split_160_cfl0.1_T0.75", rep);
  const std::vector<double> cfls = {10, 15, 20, 25};
  std::vector<double> et;
  for (double cfl : cfls) {
    CaseConfig c = config("swirling", "split", 2, 160, cfl);
    c.T = 0.75;
    et.push_back(compare_solutions(run_case(c).final, tref).l2);
  }
  const std::vector<double> ot = temporal_orders(cfls, et);
  rep.note("Q2 split 160^2 vs CFL 0.1: L2 " + join(et, "%.3e") + "  orders: " + join(ot));
  all = true;
  for (double v : ot) all = all && v >= 1.99 - 0.3 && v <= 2.11 + 0.3;
  rep.check(all, "Q2 split temporal orders within [1.69, 2.41]");
  return rep.ok;
}

bool c4(Report& rep) {
  const Solution2D ref = swirl_reference(rep);
  const CaseConfig schemes[] = {config("swirling", "nonsplit", 1, 0, 2.5), config("swirling", "split", 1, 0, 2.5),
                                config("swirling", "nonsplit", 2, 0, 2.5, true),
                                config("swirling", "split", 2, 0, 2.5)};
  for (CaseConfig c : schemes)
    for (int n : {20, 40, 80, 160}) {
      c.nx = c.ny = n;
      c.snapshot_times = {0.75};
      const RunResult r = run_case(c);
      const double half = compare_solutions(r.snapshots.at(0).u, ref).l2;
      const double full = exact_error(r);
      rep.check(full < half, fmt("%s %d^2: error(T) %.3e < error(T/2) %.3e", label(c).c_str(), n, full, half));
    }
  return rep.ok;
}

bool c5(Report& rep) {
  const char* ids[] = {"linear-const", "rigid-body", "swirling"};
  for (const char* id : ids)
    for (const char* scheme : {"split", "nonsplit"})
      for (int k : {1, 2}) {
        // rigid-body is posed on 160^2; coarser meshes let dispersive ripples
        // reach the seam, where the rotation field is not periodic
        const bool rb = std::string(id) == "rigid-body";
        CaseConfig c = config(id, scheme, k, rb ? 160 : 40, rb ? 10.0 : 2.5, std::string(scheme) == "nonsplit" && k == 2);
        const RunResult r = run_case(c);
        double worst = 0.0;
        for (const InvariantRecord& rec : r.invariants) worst = std::max(worst, std::abs(rec.mass_dev()));
        rep.check(worst <= 1e-10, fmt("%s %s k=%d %d^2 CFL %g to T=%.4g: max relative mass deviation %.2e", id, scheme,
                                      k, c.nx, c.cfl, r.cfg.T, worst));
      }

  const Mesh1D m = build_mesh_1d(0.0, 1.0, 40);
  for (int k = 0; k <= 3; ++k)
    for (double cfl : {0.4, 1.7, 6.3}) {
      Solution1D u = project_1d([](double x) { return x > 0.2 && x < 0.45 ? 1.0 : std::sin(2 * M_PI * x); }, m, k);
      double prev = u.l2_norm(), worst = -INFINITY;
      for (int n = 0; n < 100; ++n) {
        u = step_1d(u, LineVelocity::constant(1.0), cfl * m.dx, 1);
        const double now = u.l2_norm();
        worst = std::max(worst, now - prev);
        prev = now;
      }
      rep.check(worst <= 1e-12, fmt("1D k=%d CFL %.1f: largest L2 increase per step %.1e", k, cfl, worst));
    }
  return rep.ok;
}

bool c6(Report& rep) {
  struct Scheme {
    CaseConfig cfg;
    std::string tag;
    double lo, hi;
  };
  const Scheme schemes[] = {
      {config("landau", "split", 1, 200, 0), "q1split", 1.7, 2.3},
      {config("landau", "nonsplit", 1, 200, 0), "p1time2", 1.7, 2.3},
      {config("landau", "split", 2, 200, 0), "q2split", 1.7, 2.3},
      {config("landau", "nonsplit", 2, 200, 0, true), "p2qctime3", 2.5, INFINITY},
  };
  const std::vector<double> cfls = {5, 10, 15, 20, 25};
  for (const Scheme& s : schemes) {
    CaseConfig rc = s.cfg;
    rc.cfl = 0.5;
    const Solution2D ref = cached_run(rc, "landau_" + s.tag + "_200_cfl0.5", rep);
    std::vector<double> e;
    for (double cfl : cfls) {
      CaseConfig c = s.cfg;
      c.cfl = cfl;
      const RunResult r = run_case(c);
      e.push_back(compare_solutions(r.final, ref).l2);
      rep.note(fmt("%s CFL %g: L2 %.3e (cpu %.1f s)", label(c).c_str(), cfl, e.back(), r.cpu_seconds));
    }
    const std::vector<double> o = temporal_orders(cfls, e);
    const double o1 = o[o.size() - 2], o2 = o.back();
    const std::string name = label(s.cfg) + (s.cfg.is_split() ? "" : fmt("-time%d", s.cfg.k + 1));
    rep.check(o1 >= s.lo && o1 <= s.hi && o2 >= s.lo && o2 <= s.hi,
              fmt("%s orders %s; last two within [%.1f, %s]", name.c_str(), join(o).c_str(), s.lo,
                  std::isinf(s.hi) ? "inf" : fmt("%.1f", s.hi).c_str()));
  }

  // Long run with the limiter.
  const CaseConfig longs[] = {config("landau", "split", 1, 160, 10), config("landau", "split", 2, 160, 10),
                              config("landau", "nonsplit", 1, 160, 10)};
  for (CaseConfig c : longs) {
    c.T = 40.0;
    c.limiter = true;
    const RunResult r = run_case(c);
    double l1 = 0.0, l2 = -INFINITY;
    for (const InvariantRecord& rec : r.invariants) {
      l1 = std::max(l1, std::abs(rec.l1_dev()));
      l2 = std::max(l2, rec.l2_dev());
    }
    rep.check(l1 <= 1e-8, fmt("%s T=40: max |L1 deviation| %.2e <= 1e-8", label(c).c_str(), l1));
    rep.check(l2 <= 1e-10, fmt("%s T=40: max L2 deviation %.2e <= 1e-10", label(c).c_str(), l2));
  }
  return rep.ok;
}

bool c7(Report& rep) {
  const std::vector<int> ns = {20, 40, 80};
  struct Row {
    CaseConfig cfg;
    double lo, hi;
  };
  const Row rows[] = {{config("euler-stationary", "split", 1, 0, 1.0), 0.8, 1.2},
                      {config("euler-stationary", "split", 2, 0, 1.0), 0.8, 1.2},
                      {config("euler-stationary", "nonsplit", 1, 0, 1.0), 1.7, 2.3},
                      {config("euler-stationary", "nonsplit", 2, 0, 1.0, true), 2.6, 3.4}};
  for (const Row& row : rows) {
    std::vector<double> e;
    for (int n : ns) {
      CaseConfig c = row.cfg;
      c.nx = c.ny = n;
      e.push_back(exact_error(run_case(c)));
    }
    const std::vector<double> o = spatial_orders(ns, e);
    bool all = true;
    for (double v : o) all = all && v >= row.lo && v <= row.hi;
    rep.check(all, fmt("%s L2 %s orders %s within [%.1f, %.1f]", label(row.cfg).c_str(), join(e, "%.3e").c_str(),
                       join(o).c_str(), row.lo, row.hi));
    if (row.cfg.qc)
      rep.check(within_factor(e[1], 3.56e-4, 2.0), fmt("P2 QC time3 40^2 L2 %.3e within factor 2 of 3.56e-4", e[1]));
  }
  return rep.ok;
}

bool c8(Report& rep) {
  for (const char* id : {"shear-layer", "kelvin-helmholtz"}) {
    double ens[2] = {0, 0};
    int idx = 0;
    for (const char* scheme : {"split", "nonsplit"}) {
      CaseConfig c = config(id, scheme, 1, 100, 1.0);
      c.r = 1;  // structure runs use r = k
      RunResult r;
      try {
        r = run_case(c);
      } catch (const NumericalError& e) {
        rep.check(false, fmt("%s %s aborted: %s", id, scheme, e.what()));
        return false;
      }
      double mass = 0.0;
      for (const InvariantRecord& rec : r.invariants) mass = std::max(mass, std::abs(rec.mass_dev()));
      ens[idx++] = std::abs(r.invariants.back().entropy_or_enstrophy_dev());
      rep.check(mass <= 1e-9, fmt("%s %s: completed %d steps to T=%g, max relative mass deviation %.2e", id,
                                  label(c).c_str(), r.steps, r.cfg.T, mass));
    }
    rep.check(ens[1] < ens[0],
              fmt("%s: |enstrophy deviation| non-split %.3e < split %.3e", id, ens[1], ens[0]));
  }
  return rep.ok;
}

// --- property suites --------------------------------------------------------

double shoelace(const std::vector<Point>& p) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) s += p[i].x * p[(i + 1) % p.size()].y - p[(i + 1) % p.size()].x * p[i].y;
  return 0.5 * s;
}

std::vector<Piece> polygon(const std::vector<Point>& p) {
  std::vector<Piece> out;
  for (size_t i = 0; i < p.size(); ++i) out.push_back(line_piece(p[i], p[(i + 1) % p.size()]));
  return out;
}

bool c9(Report& rep) {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0), coef(-1.0, 1.0);

  {
    const Mesh2D mesh = build_mesh_2d(0.0, 2.0, 10, 0.0, 3.0, 12);
    const QuadratureRule& g = gauss_legendre(8);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const Basis2D basis = Basis2D::make(t % 2 ? Space::P : Space::Q, 1 + t % 2);
      double u[kMaxBasis];
      for (int m = 0; m < basis.n; ++m) u[m] = coef(rng);
      TestPolyStar2D psi;
      psi.k = 2;
      psi.Xc = 4.0 + 2.0 * unit(rng);
      psi.Yc = 7.0 + 2.0 * unit(rng);
      for (int m = 0; m < 6; ++m) psi.p[m] = coef(rng);
      const int lx = 4 + t % 2, ly = 7 + t % 3;
      auto f = [&](double X, double Y) {
        return eval_2d(basis, u, 2.0 * (X - lx) - 1.0, 2.0 * (Y - ly) - 1.0) * psi.eval_index(X, Y);
      };
      SubRegion sr;
      sr.lx = sr.i = lx;
      sr.ly = sr.j = ly;
      double direct = 0.0;
      if (t < 500) {
        double x0 = lx + unit(rng), x1 = lx + unit(rng), y0 = ly + unit(rng), y1 = ly + unit(rng);
        if (x1 < x0) std::swap(x0, x1);
        if (y1 < y0) std::swap(y0, y1);
        sr.boundary = polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
        for (int a = 0; a < g.size(); ++a)
          for (int b = 0; b < g.size(); ++b)
            direct += 0.25 * (x1 - x0) * (y1 - y0) * g.weights[a] * g.weights[b] *
                      f(0.5 * (x0 + x1) + 0.5 * (x1 - x0) * g.nodes[a], 0.5 * (y0 + y1) + 0.5 * (y1 - y0) * g.nodes[b]);
      } else {
        Point A{lx + unit(rng), ly + unit(rng)}, B{lx + unit(rng), ly + unit(rng)}, C{lx + unit(rng), ly + unit(rng)};
        if (shoelace({A, B, C}) < 0.0) std::swap(B, C);
        sr.boundary = polygon({A, B, C});
        const double det = (B.x - A.x) * (C.y - B.y) - (B.y - A.y) * (C.x - B.x);
        for (int a = 0; a < g.size(); ++a)
          for (int b = 0; b < g.size(); ++b) {
            const double s = 0.5 * (1.0 + g.nodes[a]), r = 0.5 * (1.0 + g.nodes[b]);
            direct += 0.25 * g.weights[a] * g.weights[b] * s * det *
                      f(A.x + s * (B.x - A.x) + s * r * (C.x - B.x), A.y + s * (B.y - A.y) + s * r * (C.y - B.y));
          }
      }
      direct *= mesh.cell_area();
      worst = std::max(worst, std::abs(green_integral(basis, u, psi, sr, mesh) - direct));
    }
    rep.check(worst <= 1e-12, fmt("Green integrals vs direct quadrature, 1000 regions: max error %.1e", worst));
  }

  {
    std::uniform_real_distribution<double> jitter(-0.35, 0.35), scale(0.4, 3.0), shift(-5.0, 25.0);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const double s = scale(rng), ox = shift(rng), oy = shift(rng);
      std::vector<Point> q;
      for (const Point& c : {Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}})
        q.push_back({ox + s * (c.x + jitter(rng)), oy + s * (c.y + jitter(rng))});
      double total = 0.0;
      for (const SubRegion& r : clip_chain(polygon(q), 30, 30)) total += region_area(r.boundary);
      worst = std::max(worst, std::abs(total - shoelace(q)));
    }
    rep.check(worst <= 1e-10, fmt("clipped areas vs shoelace, 1000 quadrilaterals: max error %.1e", worst));
  }

  {
    const Mesh1D m = build_mesh_1d(-M_PI, M_PI, 20);
    const QuadratureRule& g = gauss_legendre(12);
    double worst = 0.0;
    for (int k = 0; k <= 3; ++k)
      for (double cfl : {0.3, 2.7, 11.45}) {
        const Solution1D u = project_1d([](double x) { return std::exp(std::sin(x)); }, m, k);
        const double shift = cfl * m.dx;
        const Solution1D v = step_1d(u, LineVelocity::constant(1.0), shift, 1);
        for (int j = 0; j < m.n; ++j) {
          // pieces of cell j cut by the shifted faces
          std::vector<double> cuts = {m.face(j), m.face(j + 1)};
          const double frac = std::fmod(shift, m.dx);
          if (frac > 1e-14 * m.dx && m.dx - frac > 1e-14 * m.dx) cuts.insert(cuts.begin() + 1, m.face(j) + frac);
          for (int p = 0; p <= k; ++p) {
            double s = 0.0;
            for (size_t c = 0; c + 1 < cuts.size(); ++c)
              for (int q = 0; q < g.size(); ++q) {
                const double x = 0.5 * (cuts[c] + cuts[c + 1]) + 0.5 * (cuts[c + 1] - cuts[c]) * g.nodes[q];
                double P[kMaxDegree + 1];
                legendre_all(k, (x - m.center(j)) / (0.5 * m.dx), P);
                s += 0.5 * (cuts[c + 1] - cuts[c]) * g.weights[q] * u.eval(x - shift) * P[p];
              }
            worst = std::max(worst, std::abs(v.cell(j)[p] - s / (0.5 * m.dx * legendre_norm2(p))));
          }
        }
      }
    rep.check(worst <= 1e-11, fmt("1D step vs shift-projection oracle: max coefficient error %.1e", worst));
  }

  {
    const Mesh2D m = build_mesh_2d(0.0, 1.0, 20, 0.0, 1.0, 20);
    double worst = 0.0, minv = INFINITY;
    for (Space sp : {Space::P, Space::Q})
      for (int k = 1; k <= 3; ++k) {
        Solution2D u(m, sp, k);
        for (int c = 0; c < m.ncells(); ++c) {
          u.c[static_cast<size_t>(c) * u.nb()] = 0.01 + unit(rng);
          for (int q = 1; q < u.nb(); ++q) u.c[static_cast<size_t>(c) * u.nb() + q] = 2.0 * coef(rng);
        }
        const Solution2D raw = u;
        apply_positivity_limiter(u);
        for (int c = 0; c < m.ncells(); ++c)
          worst = std::max(worst, std::abs(u.c[static_cast<size_t>(c) * u.nb()] - raw.c[static_cast<size_t>(c) * u.nb()]));
        minv = std::min(minv, control_point_min(u));
      }
    rep.check(worst <= 1e-14, fmt("limiter cell-average change %.1e (control-point min after %.1e)", worst, minv));
  }

  {
    bool all = true;
    std::string msg;
    for (int r = 1; r <= 3; ++r) {
      double e1[2], e2[2], ev[2];
      for (int l = 0; l < 2; ++l) {
        const int n = 16 << l;
        const Mesh1D m1 = build_mesh_1d(0.0, 2 * M_PI, 2 * n);
        const FieldSolution1D f1 = solve_poisson_1d(project_1d([](double x) { return std::cos(2 * x); }, m1, r), r);
        const QuadratureRule& g = gauss_legendre(r + 4);
        double s = 0.0;
        for (int j = 0; j < m1.n; ++j)
          for (int q = 0; q < g.size(); ++q) {
            const double d = eval_1d(f1.E.cell(j), r, g.nodes[q]) - 0.5 * std::sin(2 * m1.to_physical(j, g.nodes[q]));
            s += 0.5 * m1.dx * g.weights[q] * d * d;
          }
        e1[l] = std::sqrt(s);
        const Mesh2D m2 = build_mesh_2d(0.0, 2 * M_PI, n, 0.0, 2 * M_PI, n);
        const Solution2D w =
            project_2d([](double x, double y) { return -2.0 * std::sin(x) * std::sin(y); }, m2, Space::P, r);
        const FieldSolution2D f2 = solve_poisson_2d(w, PoissonSign::euler, r);
        e2[l] = compare_solutions(f2.phi, [](double x, double y) { return std::sin(x) * std::sin(y); }).l2;
        ev[l] = compare_solutions(f2.vx, [](double x, double y) { return -std::sin(x) * std::cos(y); }).l2;
      }
      const double o1 = std::log2(e1[0] / e1[1]), o2 = std::log2(e2[0] / e2[1]), ov = std::log2(ev[0] / ev[1]);
      all = all && o1 >= r + 1 - 0.15 && o2 >= r + 1 - 0.15;
      msg += fmt(" r=%d: 1D E %.2f, 2D Phi %.2f (2D velocity %.2f);", r, o1, o2, ov);
    }
    rep.check(all, "Poisson orders >= r+1 (-0.15):" + msg);
  }
  return rep.ok;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <criterion 1..9> [--cache DIR]\n", argv[0]);
    return 2;
  }
  const int which = std::atoi(argv[1]);
  for (int i = 2; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cache") g_cache = argv[i + 1];
  std::filesystem::create_directories(g_cache);
#ifdef SLDG_HAVE_OPENMP
  omp_set_num_threads(1);
#endif

  struct Crit {
    const char* title;
    bool (*fn)(Report&);
  };
  const Crit crits[] = {
      {"constant-coefficient transport orders and errors", c1},
      {"rigid-body rotation, fixed 160^2 mesh, CFL study", c2},
      {"swirling deformation at T/2 vs 320^2 reference", c3},
      {"swirling full evolution beats half evolution", c4},
      {"mass conservation and 1D L2 stability", c5},
      {"strong Landau damping temporal orders and norms", c6},
      {"stationary Euler flow orders", c7},
      {"shear layer and Kelvin-Helmholtz structure runs", c8},
      {"property suites", c9},
  };
  if (which < 1 || which > 9) {
    std::fprintf(stderr, "criterion must be 1..9\n");
    return 2;
  }
  const Crit& c = crits[which - 1];
  std::printf("C%d %s\n", which, c.title);
  Report rep;
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = c.fn(rep);
  } catch (const std::exception& e) {
    rep.check(false, std::string("exception: ") + e.what());
  }
  std::printf("  (%.0f s)\n", seconds_since(t0));
  std::printf("[PRIMARY] C%d %s: %s\n", which, c.title, ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}
