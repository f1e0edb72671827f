#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sldg/error.hpp"
#include "sldg/harness/case_config.hpp"
#include "sldg/harness/cases.hpp"
#include "sldg/harness/io.hpp"
#include "sldg/harness/run.hpp"
#include "sldg/harness/table.hpp"
#include "sldg/quadrature.hpp"

using namespace sldg;
using namespace sldg::harness;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "sldg_unit";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

double max_diff(const Solution2D& a, const Solution2D& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.c.size(); ++i) d = std::max(d, std::abs(a.c[i] - b.c[i]));
  return d;
}

}  // namespace

TEST_CASE("config parsing") {
  const CaseConfig c = parse_config(
      "# comment\n"
      "case = swirling\n"
      "scheme=nonsplit\n"
      "k=2\nqc=true\n"
      "n = 40\n"
      "cfl=2.5\n"
      "T=0.5pi   # trailing comment\n"
      "snapshot_times=0.75\n");
  CHECK(c.case_id == "swirling");
  CHECK(!c.is_split());
  CHECK(c.qc);
  CHECK(c.nx == 40);
  CHECK(c.ny == 40);
  CHECK(c.T == doctest::Approx(0.5 * M_PI));
  REQUIRE(c.snapshot_times.size() == 1);
  CHECK(parse_config(to_text(c)).T == c.T);

  CaseConfig d;
  apply_override(d, "cfl=10.5");
  CHECK(d.cfl == 10.5);
  CHECK_THROWS_AS(apply_override(d, "bogus=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(d, "k=two"), ConfigError);
  CHECK_THROWS_AS(apply_override(d, "cfl"), ConfigError);

  CaseConfig bad;
  bad.case_id = "shear-layer";
  bad.limiter = true;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad.case_id = "nope";
  bad.limiter = false;
  CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("case registry initial data") {
  CaseConfig c;
  c.case_id = "rigid-body";
  c.gaussian = "elongated";
  CHECK(make_case(c).initial(0.3, -0.2) == doctest::Approx(std::exp(-0.09 - 10.0 * 0.04)));
  c.case_id = "landau";
  const CaseSetup l = make_case(c);
  CHECK(l.initial(1.0, 0.5) ==
        doctest::Approx((1.0 + 0.5 * std::cos(0.5)) * std::exp(-0.125) / std::sqrt(2.0 * M_PI)));
  CHECK(l.mesh.x.hi == doctest::Approx(4.0 * M_PI));
  c.case_id = "kelvin-helmholtz";
  const CaseSetup kh = make_case(c);
  CHECK(kh.initial(1.0, 2.0) == doctest::Approx(std::sin(2.0) + 0.015 * std::cos(0.5)));
  c.case_id = "swirling";
  const CaseSetup sw = make_case(c);
  CHECK(sw.initial(0.3 * M_PI, 0.0) == doctest::Approx(0.3 * M_PI));
  CHECK(sw.initial(0.0, 2.0) == 0.0);
  CHECK(std::isnan(sw.exact(0.0, 0.0, 0.4)));
  c.case_id = "shear-layer";
  const CaseSetup sh = make_case(c);
  CHECK(sh.initial(1.0, 1.0) == doctest::Approx(0.05 * std::cos(1.0) - 1.0 / (M_PI / 15.0) /
                                                                          std::pow(std::cosh((1.0 - M_PI / 2) / (M_PI / 15.0)), 2)));
}

TEST_CASE("time steps") {
  const Mesh2D m = build_mesh_2d(0.0, 1.0, 10, 0.0, 1.0, 10);
  CHECK(compute_dt(1.0, m, 1.0, 1.0) == doctest::Approx(0.05));
  const Mesh2D r = build_mesh_2d(-2 * M_PI, 2 * M_PI, 160, -2 * M_PI, 2 * M_PI, 160);
  CHECK(compute_dt(10.5, r, 2 * M_PI, 2 * M_PI) == doctest::Approx(10.5 / (2 * M_PI / r.x.dx + 2 * M_PI / r.y.dx)));
  CHECK_THROWS_AS(compute_dt(1.0, m, 0.0, 0.0), ConfigError);
  const double dt = 0.1, T = 1.0, t = T - 0.3 * dt;
  CHECK(truncate_dt(t, dt, T) == T - t);
  CHECK(truncate_dt(0.0, dt, T) == dt);
  CHECK(tracing_substeps(0.5, 0.0) == 1);
  CHECK(tracing_substeps(0.5, 1.0) == 10);
}

TEST_CASE("periodic return of constant transport") {
  for (const char* scheme : {"split", "nonsplit"}) {
    CaseConfig c;
    c.scheme = scheme;
    c.k = 2;
    c.nx = c.ny = 16;
    c.cfl = 4.0;  // dt = 2 dx: every sweep is a whole-cell shift
    const RunResult r = run_case(c);
    CHECK(r.cfg.T == doctest::Approx(M_PI));
    CHECK(max_diff(r.final, r.initial) <= 1e-10);
    CHECK(r.steps == 4);
    CHECK(r.invariants.size() == 5);
  }
}

TEST_CASE("invariant series follow the step count") {
  CaseConfig c;
  c.case_id = "landau";
  c.k = 2;
  c.nx = c.ny = 24;
  c.T = 0.5;
  c.cfl = 1.0;
  const RunResult a = run_case(c);
  c.cfl = 0.5;
  const RunResult b = run_case(c);
  CHECK(std::abs(a.invariants.back().mass_dev()) <= 1e-10);
  CHECK(std::abs(b.invariants.back().mass_dev()) <= 1e-10);
  CHECK(b.invariants.size() - 1 == doctest::Approx(2.0 * (a.invariants.size() - 1)).epsilon(0.1));
}

TEST_CASE("error measurement") {
  const Mesh2D m = build_mesh_2d(-M_PI, M_PI, 20, -M_PI, M_PI, 20);
  auto f = [](double x, double y) { return std::sin(x + y); };
  const Solution2D u = project_2d(f, m, Space::P, 1);
  const ErrorPair self = compare_solutions(u, u);
  CHECK(self.l2 <= 1e-14);
  CHECK(self.linf <= 1e-14);

  const QuadratureRule& g = gauss_legendre(30);
  double s = 0.0;
  for (int j = 0; j < 20; ++j)
    for (int i = 0; i < 20; ++i)
      for (int a = 0; a < g.size(); ++a)
        for (int b = 0; b < g.size(); ++b) {
          const double x = m.x.to_physical(i, g.nodes[a]), y = m.y.to_physical(j, g.nodes[b]);
          const double e = eval_2d(u.basis, u.cell(i, j), g.nodes[a], g.nodes[b]) - f(x, y);
          s += 0.25 * m.cell_area() * g.weights[a] * g.weights[b] * e * e;
        }
  const double oracle = std::sqrt(s / m.area());
  CHECK(compare_solutions(u, f).l2 == doctest::Approx(oracle).epsilon(0.01));

  // reference on a finer mesh
  const Mesh2D fine = build_mesh_2d(-M_PI, M_PI, 40, -M_PI, M_PI, 40);
  const Solution2D v = project_2d(f, fine, Space::P, 2);
  CHECK(compare_solutions(u, v).l2 == doctest::Approx(compare_solutions(u, f).l2).epsilon(0.01));
  const Mesh2D other = build_mesh_2d(0.0, 1.0, 40, 0.0, 1.0, 40);
  CHECK_THROWS_AS(compare_solutions(u, Solution2D(other, Space::P, 1)), ConfigError);
}

TEST_CASE("observed orders") {
  const double eps = 1e-6;
  CHECK(*observed_order(Refinement::spatial, 20, 4 * eps, 40, eps) == doctest::Approx(2.0));
  CHECK(*observed_order(Refinement::temporal, 5, 2.06e-4, 10, 8.16e-4) == doctest::Approx(1.99).epsilon(0.005));
  CHECK(!observed_order(Refinement::spatial, 20, 0.0, 40, eps));

  std::vector<TableRow> rows;
  for (int n : {10, 20, 40, 80}) rows.push_back({static_cast<double>(n), {std::pow(1.0 / n, 3), 7.0 / n}});
  const ResultTable t = convergence_table(Refinement::spatial, rows);
  CHECK(!t.rows[0].l2_order);
  for (size_t i = 1; i < t.rows.size(); ++i) {
    CHECK(std::abs(*t.rows[i].l2_order - 3.0) <= 1e-12);
    CHECK(std::abs(*t.rows[i].linf_order - 1.0) <= 1e-12);
  }
  for (TableRow& r : rows) r.err.l2 *= 123.0;
  const ResultTable scaled = convergence_table(Refinement::spatial, rows);
  for (size_t i = 1; i < t.rows.size(); ++i) CHECK(*scaled.rows[i].l2_order == doctest::Approx(*t.rows[i].l2_order));
  CHECK_THROWS_AS(convergence_table(Refinement::spatial, {rows[0]}), ConfigError);
}

TEST_CASE("output files") {
  const Mesh2D m = build_mesh_2d(0.0, 2 * M_PI, 8, 0.0, 2 * M_PI, 8);
  Solution2D u = project_2d([](double x, double y) { return std::sin(x) * std::exp(std::cos(y)) / 3.0; }, m,
                            Space::Q, 2);
  u.time = 0.1;
  const std::string snap = temp_path("snap.csv");
  write_snapshot(snap, u);
  const Solution2D back = read_snapshot(snap);
  CHECK(back.space() == Space::Q);
  CHECK(back.time == u.time);
  CHECK(max_diff(back, u) == 0.0);

  const std::vector<GridPoint> grid = surface_grid(u);
  REQUIRE(grid.size() == 64);
  const std::string pts = temp_path("grid.csv");
  write_points(pts, grid);
  const std::vector<GridPoint> again = read_points(pts);
  for (size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(again[i].value - grid[i].value) <= 1e-15);
  CHECK(slurp(pts).rfind("x,y,value\n", 0) == 0);

  const Solution2D lin = project_2d([](double, double y) { return y; }, m, Space::P, 1);
  const std::vector<GridPoint> cut = cut_line(lin, 'x', M_PI);
  REQUIRE(cut.size() == 32);
  for (const GridPoint& p : cut) {
    CHECK(p.x == doctest::Approx(M_PI));
    CHECK(std::abs(p.value - p.y) <= 1e-13);
  }

  InvariantRecord rec;
  rec.initial.l1 = rec.value.l1 = 1.0;
  const std::string inv = temp_path("inv.csv");
  write_invariants(inv, {rec});
  CHECK(slurp(inv).rfind("time,L1_dev,L2_dev,energy_dev,entropy_or_enstrophy_dev\n", 0) == 0);
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("identical configs give identical files") {
  CaseConfig c;
  c.case_id = "swirling";
  c.scheme = "nonsplit";
  c.k = 1;
  c.nx = c.ny = 16;
  c.cfl = 2.5;
  c.T = 0.3;
  const std::string a = temp_path("det_a.csv"), b = temp_path("det_b.csv");
  write_snapshot(a, run_case(c).final);
  write_snapshot(b, run_case(c).final);
  CHECK(slurp(a) == slurp(b));
}
