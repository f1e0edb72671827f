#pragma once

#include "sldg/solution.hpp"

namespace sldg {

// Scales each cell about its average so the values at the control points are
// >= 0: the (k+2)^2 Gauss-Lobatto points plus the (k+3)^2 Gauss points used by
// the invariants, so L1 equals mass there. Returns the number of cells touched.
// Throws NumericalError if a cell average is negative beyond roundoff.
int apply_positivity_limiter(Solution2D& u);

// Minimum over all control points.
double control_point_min(const Solution2D& u);
double control_point_max_abs(const Solution2D& u);

}  // namespace sldg
