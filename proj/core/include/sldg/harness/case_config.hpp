#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace sldg::harness {

// One run of one benchmark case. Values <= 0 in the "auto" fields mean
// "use the case default".
struct CaseConfig {
  std::string case_id = "linear-const";
  std::string scheme = "split";  // split | nonsplit
  int k = 1;
  bool qc = false;
  int r = 0;  // Poisson degree, auto = k+1
  int nx = 20;
  int ny = 20;
  double cfl = 1.0;
  double T = 0.0;  // auto = case default
  bool limiter = false;
  int order = 0;     // non-split tracing order, auto = k+1
  int substeps = 0;  // auto: RK4 substeps with h * |grad a| <= 0.05
  int error_points = 0;  // auto = k+3

  // Initial-condition parameters.
  double alpha = 0.5;
  double k0 = 0.5;
  double delta = 0.05;
  double shear_width = M_PI / 15.0;
  double bell_x0 = 0.3 * M_PI;
  double bell_y0 = 0.0;
  double bell_r0 = 0.3 * M_PI;
  double swirl_period = 1.5;
  double vmax = 2.0 * M_PI;
  std::string gaussian = "round";  // round | elongated

  std::vector<double> snapshot_times;  // extra snapshots taken during the run
  std::string out_dir;
  std::string reference;  // snapshot CSV used instead of an exact solution

  bool is_split() const { return scheme == "split"; }
};

// Throws ConfigError on unknown keys or malformed values.
void set_value(CaseConfig& cfg, const std::string& key, const std::string& value);
// "key=value"
void apply_override(CaseConfig& cfg, const std::string& assignment);
// Flat key=value file; '#' starts a comment.
CaseConfig load_config(const std::string& path);
CaseConfig parse_config(const std::string& text);
// Throws ConfigError when the combination is invalid.
void validate(const CaseConfig& cfg);
std::string to_text(const CaseConfig& cfg);

}  // namespace sldg::harness
