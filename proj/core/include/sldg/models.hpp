#pragma once

#include <functional>

#include "sldg/nonsplit2d.hpp"
#include "sldg/poisson.hpp"
#include "sldg/split2d.hpp"

namespace sldg {

enum class FluidKind { euler, guiding };

struct ModelOptions {
  int r = 1;             // Poisson degree
  bool limiter = false;  // positivity limiter after every transport step
  int substeps = 1;      // tracing substeps
  int order = 2;         // non-split tracing order, 2 or 3
  UpstreamMode mode = UpstreamMode::quad;
  double rho_ion = 1.0;  // VP neutralizing background
  // When set, replaces the self-consistent field in every stage (testing).
  FrozenField2D frozen;
};

// Phase space: mesh.x is x, mesh.y is v.
Solution1D vp_charge(const Solution2D& f, double rho_ion);
FieldSolution1D vp_field(const Solution2D& f, const ModelOptions& opt);
Solution2D vp_strang_step(const Solution2D& f, double dt, const ModelOptions& opt);
// En: field of f at f.time when already known.
Solution2D vp_nonsplit_step(const Solution2D& f, double dt, const ModelOptions& opt,
                            const FieldSolution1D* En = nullptr);

FieldSolution2D fluid_field(const Solution2D& w, FluidKind kind, int r);
Solution2D gc_split_step(const Solution2D& w, double dt, FluidKind kind, const ModelOptions& opt);
Solution2D gc_nonsplit_step(const Solution2D& w, double dt, FluidKind kind, const ModelOptions& opt,
                            const FieldSolution2D* Fn = nullptr);

// Restriction of a P^r field component to the x-line y = pos (axis x) or
// the y-line x = pos (axis y), as a piecewise velocity.
LineVelocity restrict_to_line(const Solution2D& comp, Axis axis, int cell, double local);

// Max |value| of the field components at Gauss-Lobatto control points.
double max_speed(const Solution2D& comp);
double max_speed(const Solution1D& comp);

}  // namespace sldg
