#pragma once

#include <array>
#include <vector>

#include "sldg/mesh.hpp"
#include "sldg/polybasis.hpp"
#include "sldg/solution.hpp"
#include "sldg/trace.hpp"

namespace sldg {

// Velocity along one 1D line: a constant, a time-frozen piecewise polynomial
// on the line mesh, or a general a(x, t).
struct LineVelocity {
  enum class Kind { constant, piecewise, function };

  Kind kind = Kind::constant;
  double c = 0.0;
  Mesh1D mesh;
  int deg = 0;
  std::vector<double> coef;
  Field1D f;

  static LineVelocity constant(double value);
  static LineVelocity piecewise(const Mesh1D& m, int degree, std::vector<double> coefficients);
  static LineVelocity function(Field1D fn);

  double operator()(double x, double t) const {
    switch (kind) {
      case Kind::constant:
        return c;
      case Kind::piecewise: {
        const CellLocation loc = locate_cell(x, mesh);
        return eval_1d(coef.data() + static_cast<size_t>(loc.cell) * (deg + 1), deg, loc.local);
      }
      default:
        return f(x, t);
    }
  }
};

struct SubInterval {
  int cell = 0;      // wrapped background cell
  int unwrapped = 0;  // background cell index before wrapping
  double a = 0.0;    // physical, unwrapped
  double b = 0.0;
};

struct UpstreamInterval {
  int cell = 0;
  double left = 0.0;   // x*_{j-1/2}
  double right = 0.0;  // x*_{j+1/2}
  std::vector<double> nodes;  // x_{j,q}, Gauss-Lobatto
  std::vector<double> feet;   // x*_{j,q}
  std::vector<SubInterval> subs;
};

// Psi*(x) = sum_p mono[p] s^p with s = (x - center) / (dx/2).
struct TestPolyStar1D {
  int k = 0;
  double center = 0.0;
  double half = 1.0;
  std::array<double, kMaxDegree + 1> mono{};

  double eval(double x) const;
};

UpstreamInterval build_upstream_interval(const Mesh1D& mesh, int j, const LineVelocity& a, double t_end, double dt,
                                         int k, int substeps);
// Psi is the m-th Legendre basis function of cell j.
TestPolyStar1D interpolate_test_poly(const UpstreamInterval& up, const Mesh1D& mesh, int k, int m);

struct Workspace1D {
  std::vector<double> faces;
  std::vector<double> interior;
};

// Advances one line of n cells, coefficients cell-major with k+1 per cell.
void advance_line(const Mesh1D& mesh, int k, const double* in, double* out, const LineVelocity& a, double t0,
                  double dt, int substeps, Workspace1D& ws);

Solution1D step_1d(const Solution1D& u, const LineVelocity& a, double dt, int substeps);

}  // namespace sldg
