#pragma once

#include <cmath>
#include <vector>

#include "sldg/poisson.hpp"
#include "sldg/solution.hpp"

namespace sldg {

// Quantities that do not apply to a model are NaN (energy and entropy for
// linear transport).
struct InvariantValues {
  double time = 0.0;
  double mass = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double energy = NAN;
  double entropy_or_enstrophy = NAN;
};

struct InvariantRecord {
  InvariantValues value;
  InvariantValues initial;

  static double rel(double v, double v0) { return v0 != 0.0 ? (v - v0) / std::abs(v0) : v - v0; }
  double mass_dev() const;
  double l1_dev() const { return rel(value.l1, initial.l1); }
  double l2_dev() const { return rel(value.l2, initial.l2); }
  double energy_dev() const { return rel(value.energy, initial.energy); }
  double entropy_or_enstrophy_dev() const { return rel(value.entropy_or_enstrophy, initial.entropy_or_enstrophy); }
};

using InvariantSeries = std::vector<InvariantRecord>;

// Integrals use (k+3)^2 Gauss points per cell. y plays the role of v for VP.
InvariantValues vp_invariants(const Solution2D& f, const FieldSolution1D& field, double time);
InvariantValues fluid_invariants(const Solution2D& w, const FieldSolution2D& field, double time);
InvariantValues linear_invariants(const Solution2D& u, double time);

}  // namespace sldg
