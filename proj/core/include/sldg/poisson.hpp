#pragma once

#include "sldg/solution.hpp"
#include "sldg/trace.hpp"

namespace sldg {

// phi and E = -phi_x, both of degree r.
struct FieldSolution1D {
  Solution1D phi;
  Solution1D E;

  double eval_E(double x) const { return E.eval(x); }
};

// -phi_xx = rho on a periodic interval, zero-mean phi.
FieldSolution1D solve_poisson_1d(const Solution1D& rho, int r);

enum class PoissonSign {
  euler,    // Laplacian(Phi) = source
  guiding,  // -Laplacian(Phi) = source
};

// Phi, its LDG gradient (q1, q2) and the velocity (vx, vy) = (-q2, q1),
// all P^r.
struct FieldSolution2D {
  Solution2D phi;
  Solution2D q1;
  Solution2D q2;
  Solution2D vx;
  Solution2D vy;

  Vec2 velocity(double x, double y) const;
};

// The source is L2-projected to P^r per cell first.
FieldSolution2D solve_poisson_2d(const Solution2D& source, PoissonSign sign, int r);

// Max over cells of the linear-system residual of the last 2D solve setup,
// for diagnostics: || K Phi - N s ||_inf / max(1, || N s ||_inf).
double poisson_residual_2d(const Solution2D& source_pr, PoissonSign sign, const Solution2D& phi);

}  // namespace sldg
