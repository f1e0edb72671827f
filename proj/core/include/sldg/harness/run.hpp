#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sldg/error.hpp"
#include "sldg/harness/case_config.hpp"
#include "sldg/harness/cases.hpp"
#include "sldg/invariants.hpp"
#include "sldg/solution.hpp"

namespace sldg::harness {

// Thrown by run_case when a step fails; wraps the original message.
struct RunAborted : NumericalError {
  RunAborted(int step_index, const std::string& what)
      : NumericalError("step " + std::to_string(step_index) + ": " + what), step(step_index), detail(what) {}
  int step;
  std::string detail;
};

// dt = cfl / (a/dx + b/dy). ConfigError when both speeds vanish.
double compute_dt(double cfl, const Mesh2D& mesh, double a_max, double b_max);
// Shortens dt so that t + dt does not pass `stop`; a step within 1e-12 of the
// stop is snapped onto it.
double truncate_dt(double t, double dt, double stop);

struct Snapshot {
  double time = 0.0;
  Solution2D u;
};

struct RunResult {
  CaseConfig cfg;  // resolved
  Solution2D initial;
  Solution2D final;
  std::vector<Snapshot> snapshots;  // one per cfg.snapshot_times entry
  InvariantSeries invariants;       // t = 0 first, then once per full step
  std::vector<double> dts;
  double cpu_seconds = 0.0;
  int steps = 0;
};

RunResult run_case(const CaseConfig& cfg);

Space space_of(const CaseConfig& cfg);

}  // namespace sldg::harness
