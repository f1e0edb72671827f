#include "sldg/harness/case_config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "sldg/error.hpp"
#include "sldg/harness/cases.hpp"
#include "sldg/harness/io.hpp"

namespace sldg::harness {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  // Accept "pi" multiples such as 20pi or 0.3pi since most domains and times are.
  std::string s = v;
  double scale = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    scale = M_PI;
    s.resize(s.size() - 2);
    if (s.empty()) s = "1";
  }
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError("bad number for " + key + ": '" + v + "'");
  return x * scale;
}

int to_int(const std::string& key, const std::string& v) {
  int x = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("bad integer for " + key + ": '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw ConfigError("bad flag for " + key + ": '" + v + "'");
}

}  // namespace

void set_value(CaseConfig& c, const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  using Setter = std::function<void()>;
  const std::map<std::string, Setter> table = {
      {"case", [&] { c.case_id = v; }},
      {"scheme", [&] { c.scheme = v; }},
      {"k", [&] { c.k = to_int(key, v); }},
      {"qc", [&] { c.qc = to_bool(key, v); }},
      {"r", [&] { c.r = to_int(key, v); }},
      {"nx", [&] { c.nx = to_int(key, v); }},
      {"ny", [&] { c.ny = to_int(key, v); }},
      {"n", [&] { c.nx = c.ny = to_int(key, v); }},
      {"cfl", [&] { c.cfl = to_double(key, v); }},
      {"T", [&] { c.T = to_double(key, v); }},
      {"limiter", [&] { c.limiter = to_bool(key, v); }},
      {"order", [&] { c.order = to_int(key, v); }},
      {"substeps", [&] { c.substeps = to_int(key, v); }},
      {"error_points", [&] { c.error_points = to_int(key, v); }},
      {"alpha", [&] { c.alpha = to_double(key, v); }},
      {"k0", [&] { c.k0 = to_double(key, v); }},
      {"delta", [&] { c.delta = to_double(key, v); }},
      {"shear_width", [&] { c.shear_width = to_double(key, v); }},
      {"bell_x0", [&] { c.bell_x0 = to_double(key, v); }},
      {"bell_y0", [&] { c.bell_y0 = to_double(key, v); }},
      {"bell_r0", [&] { c.bell_r0 = to_double(key, v); }},
      {"swirl_period", [&] { c.swirl_period = to_double(key, v); }},
      {"vmax", [&] { c.vmax = to_double(key, v); }},
      {"gaussian", [&] { c.gaussian = v; }},
      {"out_dir", [&] { c.out_dir = v; }},
      {"reference", [&] { c.reference = v; }},
      {"snapshot_times",
       [&] {
         c.snapshot_times.clear();
         std::stringstream ss(v);
         std::string item;
         while (std::getline(ss, item, ','))
           if (!trim(item).empty()) c.snapshot_times.push_back(to_double(key, trim(item)));
       }},
  };
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second();
}

void apply_override(CaseConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
  set_value(cfg, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

CaseConfig parse_config(const std::string& text) {
  CaseConfig cfg;
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      apply_override(cfg, line);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

CaseConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

void validate(const CaseConfig& c) {
  const CaseInfo& info = case_info(c.case_id);  // throws on unknown id
  if (c.scheme != "split" && c.scheme != "nonsplit") throw ConfigError("scheme must be split or nonsplit");
  if (c.k < 0 || c.k > 2) throw ConfigError("k must be 0, 1 or 2");
  if (c.scheme == "nonsplit" && c.k < 1) throw ConfigError("nonsplit needs k >= 1");
  if (c.qc && c.scheme != "nonsplit") throw ConfigError("qc only applies to the nonsplit scheme");
  if (c.nx <= 0 || c.ny <= 0) throw ConfigError("mesh sizes must be positive");
  if (!(c.cfl > 0.0)) throw ConfigError("cfl must be positive");
  if (c.T < 0.0) throw ConfigError("T must be positive");
  if (c.r < 0 || c.r > 3) throw ConfigError("Poisson degree r must be in 1..3");
  if (c.order != 0 && c.order != 2 && c.order != 3) throw ConfigError("order must be 2 or 3");
  if (c.substeps < 0) throw ConfigError("substeps must be positive");
  if (c.error_points < 0) throw ConfigError("error_points must be positive");
  if (c.limiter && !info.nonnegative)
    throw ConfigError("the positivity limiter needs a nonnegative unknown; not available for " + c.case_id);
  for (double v : {c.alpha, c.k0, c.delta, c.shear_width, c.bell_r0, c.swirl_period, c.vmax})
    if (!(v > 0.0)) throw ConfigError("initial-condition parameters must be positive");
  if (c.gaussian != "round" && c.gaussian != "elongated") throw ConfigError("gaussian must be round or elongated");
  for (double t : c.snapshot_times)
    if (!(t > 0.0)) throw ConfigError("snapshot times must be positive");
}

std::string to_text(const CaseConfig& c) {
  std::ostringstream o;
  o << "case=" << c.case_id << "\nscheme=" << c.scheme << "\nk=" << c.k << "\nqc=" << c.qc << "\nr=" << c.r
    << "\nnx=" << c.nx << "\nny=" << c.ny << "\ncfl=" << format_double(c.cfl) << "\nT=" << format_double(c.T)
    << "\nlimiter=" << c.limiter << "\norder=" << c.order << "\nsubsteps=" << c.substeps
    << "\nerror_points=" << c.error_points << "\nalpha=" << format_double(c.alpha)
    << "\nk0=" << format_double(c.k0) << "\ndelta=" << format_double(c.delta)
    << "\nshear_width=" << format_double(c.shear_width) << "\nbell_x0=" << format_double(c.bell_x0)
    << "\nbell_y0=" << format_double(c.bell_y0) << "\nbell_r0=" << format_double(c.bell_r0)
    << "\nswirl_period=" << format_double(c.swirl_period) << "\nvmax=" << format_double(c.vmax)
    << "\ngaussian=" << c.gaussian << "\n";
  return o.str();
}

}  // namespace sldg::harness
