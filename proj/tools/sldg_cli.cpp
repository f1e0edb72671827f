#include <cstdio>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sldg/error.hpp"
#include "sldg/harness/case_config.hpp"
#include "sldg/harness/cases.hpp"
#include "sldg/harness/io.hpp"
#include "sldg/harness/run.hpp"
#include "sldg/harness/table.hpp"

#ifdef SLDG_HAVE_OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using namespace sldg;
using namespace sldg::harness;

namespace {

CaseConfig build_config(const std::string& file, const std::vector<std::string>& sets) {
  CaseConfig cfg = file.empty() ? CaseConfig{} : load_config(file);
  for (const auto& s : sets) apply_override(cfg, s);
  validate(cfg);
  return cfg;
}

std::string out_dir_of(const CaseConfig& cfg, const std::string& flag) {
  std::string dir = flag.empty() ? cfg.out_dir : flag;
  if (dir.empty()) return {};
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir);
  return dir;
}

// Error of a finished run against the exact solution or cfg.reference.
std::optional<ErrorPair> run_error(const RunResult& r) {
  if (!r.cfg.reference.empty()) return compare_solutions(r.final, read_snapshot(r.cfg.reference), r.cfg.error_points);
  const CaseSetup s = make_case(r.cfg);
  if (!s.exact) return std::nullopt;
  const double T = r.final.time;
  const ErrorPair e =
      compare_solutions(r.final, [&](double x, double y) { return s.exact(x, y, T); }, r.cfg.error_points);
  if (std::isnan(e.l2)) return std::nullopt;
  return e;
}

int cmd_run(const std::string& file, const std::vector<std::string>& sets, const std::string& out_flag) {
  const CaseConfig cfg = build_config(file, sets);
  const RunResult r = run_case(cfg);
  const auto err = run_error(r);
  std::ostringstream o;
  o << to_text(r.cfg) << "steps=" << r.steps << "\ncpu_seconds=" << format_double(r.cpu_seconds) << "\n";
  if (err) o << "l2_error=" << format_double(err->l2) << "\nlinf_error=" << format_double(err->linf) << "\n";
  const auto& last = r.invariants.back();
  o << "mass_dev=" << format_double(last.mass_dev()) << "\n";
  std::cout << o.str();
  if (const std::string dir = out_dir_of(r.cfg, out_flag); !dir.empty()) {
    write_snapshot(dir + "/snapshot.csv", r.final);
    write_invariants(dir + "/invariants.csv", r.invariants);
    for (size_t i = 0; i < r.snapshots.size(); ++i)
      write_snapshot(dir + "/snapshot_" + std::to_string(i) + ".csv", r.snapshots[i].u);
    std::ofstream(dir + "/summary.txt") << o.str();
  }
  return 0;
}

int cmd_convergence(const std::string& file, const std::vector<std::string>& sets, const std::string& vary,
                    const std::string& out_flag) {
  const auto eq = vary.find('=');
  if (eq == std::string::npos) throw ConfigError("--vary expects key=v1,v2,...");
  const std::string key = vary.substr(0, eq);
  if (key != "n" && key != "cfl") throw ConfigError("--vary supports n or cfl");
  std::vector<std::string> values;
  std::stringstream ss(vary.substr(eq + 1));
  for (std::string v; std::getline(ss, v, ',');) values.push_back(v);

  std::vector<TableRow> rows;
  CaseConfig last;
  for (const auto& v : values) {
    std::vector<std::string> all = sets;
    all.push_back(key + "=" + v);
    const CaseConfig cfg = build_config(file, all);
    const RunResult r = run_case(cfg);
    const auto err = run_error(r);
    if (!err) throw ConfigError("case has no exact solution at T; set reference=<snapshot>");
    rows.push_back({key == "n" ? static_cast<double>(cfg.nx) : cfg.cfl, *err, r.cpu_seconds, {}, {}});
    last = r.cfg;
  }
  const ResultTable t = convergence_table(key == "n" ? Refinement::spatial : Refinement::temporal, rows);
  std::cout << table_csv(t);
  if (const std::string dir = out_dir_of(last, out_flag); !dir.empty()) write_table(dir + "/table.csv", t);
  return 0;
}

int cmd_compare(const std::string& a, const std::string& b, int points) {
  const Solution2D u = read_snapshot(a), ref = read_snapshot(b);
  const ErrorPair e = compare_solutions(u, ref, points);
  std::cout << "l2_error=" << format_double(e.l2) << "\nlinf_error=" << format_double(e.linf) << "\n";
  return 0;
}

int cmd_export(const std::string& snap, const std::string& kind, const std::string& line, const std::string& out) {
  const Solution2D u = read_snapshot(snap);
  if (kind == "surface") {
    write_points(out, surface_grid(u));
  } else if (kind == "cut") {
    const auto eq = line.find('=');
    if (eq != 1 || (line[0] != 'x' && line[0] != 'y')) throw ConfigError("--line expects x=<pos> or y=<pos>");
    double pos = 0.0;
    try {
      pos = std::stod(line.substr(2));
    } catch (const std::exception&) {
      throw ConfigError("bad --line position");
    }
    write_points(out, cut_line(u, line[0], pos));
  } else {
    throw ConfigError("--kind must be surface or cut");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-Lagrangian DG transport benchmarks"};
  app.require_subcommand(1);
  bool single = false;
  app.add_flag("--single-thread", single, "Run serially (timing, determinism)");

  std::string config, out, vary, snap_a, snap_b, kind = "surface", line = "x=0", export_out;
  std::vector<std::string> sets;
  int points = 0;

  auto* run = app.add_subcommand("run", "Run one case configuration");
  run->add_option("-c,--config", config, "key=value case file");
  run->add_option("-s,--set", sets, "Override key=value (repeatable)");
  run->add_option("-o,--out", out, "Output directory");

  auto* conv = app.add_subcommand("convergence", "Run a mesh or CFL sequence and print the table");
  conv->add_option("-c,--config", config, "key=value case file");
  conv->add_option("-s,--set", sets, "Override key=value (repeatable)");
  conv->add_option("--vary", vary, "n=20,40,80 or cfl=5,10,15")->required();
  conv->add_option("-o,--out", out, "Output directory");

  auto* cmp = app.add_subcommand("compare", "Compare a snapshot against a reference snapshot");
  cmp->add_option("snapshot", snap_a)->required();
  cmp->add_option("reference", snap_b)->required();
  cmp->add_option("--points", points, "Gauss points per direction (default k+3)");

  auto* exp = app.add_subcommand("export", "Export a surface grid or a 1D cut of a snapshot");
  exp->add_option("snapshot", snap_a)->required();
  exp->add_option("--kind", kind, "surface or cut");
  exp->add_option("--line", line, "Cut line, x=<pos> or y=<pos>");
  exp->add_option("-o,--out", export_out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
#ifdef SLDG_HAVE_OPENMP
  if (single) omp_set_num_threads(1);
#endif

  try {
    if (*run) return cmd_run(config, sets, out);
    if (*conv) return cmd_convergence(config, sets, vary, out);
    if (*cmp) return cmd_compare(snap_a, snap_b, points);
    if (*exp) return cmd_export(snap_a, kind, line, export_out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const RunAborted& e) {
    std::cerr << "numerical abort at step " << e.step << ": " << e.detail << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
