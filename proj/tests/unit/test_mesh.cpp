#include <doctest.h>

#include <cmath>
#include <random>

#include "sldg/error.hpp"
#include "sldg/mesh.hpp"

using namespace sldg;

TEST_CASE("uniform 1D mesh") {
  const Mesh1D m = build_mesh_1d(0.0, 2.0 * M_PI, 4);
  CHECK(m.dx == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(m.face(1) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(m.face(4) == 2.0 * M_PI);

  const Mesh1D p = build_mesh_1d(-M_PI, M_PI, 20);
  CHECK(p.dx == doctest::Approx(M_PI / 10).epsilon(1e-15));

  const Mesh1D one = build_mesh_1d(0.0, 1.0, 1);
  CHECK(one.n == 1);
  CHECK(one.face(0) == 0.0);
  CHECK(one.face(1) == 1.0);
}

TEST_CASE("bad meshes are rejected") {
  CHECK_THROWS_AS(build_mesh_1d(0.0, 1.0, 0), ConfigError);
  CHECK_THROWS_AS(build_mesh_1d(1.0, 1.0, 4), ConfigError);
  CHECK_THROWS_AS(build_mesh_2d(0.0, 1.0, 4, 0.0, 1.0, -1), ConfigError);
}

TEST_CASE("periodic wrap") {
  const Mesh1D m = build_mesh_1d(0.0, 2.0 * M_PI, 4);
  CHECK(wrap_periodic(2.0 * M_PI, m) == 0.0);
  CHECK(wrap_periodic(-M_PI / 4, m) == doctest::Approx(2.0 * M_PI - M_PI / 4).epsilon(1e-15));
  CHECK(wrap_periodic(3.0 * 2.0 * M_PI + 0.1, m) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(wrap_index(-1, 4) == 3);
  CHECK(wrap_index(9, 4) == 1);
}

TEST_CASE("locate cell") {
  const Mesh1D m = build_mesh_1d(-1.0, 3.0, 8);
  for (int j = 0; j < m.n; ++j) {
    const CellLocation c = locate_cell(m.center(j), m);
    CHECK(c.cell == j);
    CHECK(c.local == doctest::Approx(0.0).epsilon(1e-14));
  }
  // a face belongs to the cell on its right
  const CellLocation f = locate_cell(m.face(3), m);
  CHECK(f.cell == 3);
  CHECK(f.local == -1.0);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(m.lo, m.hi);
  for (int t = 0; t < 1000; ++t) {
    const double x = d(rng);
    int brute = -1;
    for (int j = 0; j < m.n; ++j)
      if (x >= m.face(j) && x < m.face(j + 1)) brute = j;
    const CellLocation c = locate_cell(x, m);
    REQUIRE(c.cell == brute);
    CHECK(m.to_physical(c.cell, c.local) == doctest::Approx(x).epsilon(1e-13));
  }
}

TEST_CASE("2D location wraps both directions") {
  const Mesh2D m = build_mesh_2d(0.0, 1.0, 4, 0.0, 2.0, 8);
  const CellLocation2D c = locate_cell(1.0 + 0.125, -0.125, m);
  CHECK(c.i == 0);
  CHECK(c.j == 7);
  CHECK(c.xi == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(c.eta == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(m.index(3, 7) == 31);
}
