#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sldg/harness/case_config.hpp"
#include "sldg/mesh.hpp"
#include "sldg/trace.hpp"

namespace sldg::harness {

enum class Model { linear, vlasov_poisson, euler, guiding_center };

struct CaseInfo {
  std::string id;
  Model model;
  bool nonnegative;  // unknown stays >= 0, so the limiter is allowed
  std::string description;
};

const std::vector<CaseInfo>& case_registry();
const CaseInfo& case_info(const std::string& id);  // ConfigError if unknown

using Scalar = std::function<double(double x, double y)>;
using ScalarT = std::function<double(double x, double y, double t)>;

struct CaseSetup {
  CaseInfo info;
  Mesh2D mesh;
  double T = 0.0;
  Scalar initial;
  ScalarT exact;  // empty when no closed form exists
  // Linear cases only.
  Field2D velocity;
  double a_max = 0.0, b_max = 0.0;
  bool constant_velocity = false;
  // Bound on the velocity gradient, used to pick tracing substeps. Fluid
  // cases measure it from the current vorticity instead.
  double lipschitz = 0.0;
};

// Substeps per foot so that each RK4 substep has h * L <= 0.05.
int tracing_substeps(double dt, double lipschitz);

// Fills in the case defaults (T, Poisson degree, order, substeps) of cfg too.
CaseSetup make_case(const CaseConfig& cfg);
CaseConfig resolved(const CaseConfig& cfg);

double default_final_time(const CaseConfig& cfg);

}  // namespace sldg::harness
