#include "sldg/harness/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sldg/error.hpp"

namespace sldg::harness {
namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  return f;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc()) throw ConfigError("bad number '" + s + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

std::string format_double(double v) {
  std::array<char, 40> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void write_snapshot(const std::string& path, const Solution2D& u) {
  auto f = open_out(path);
  const Mesh2D& m = u.mesh;
  f << "# sldg snapshot v1\n";
  f << "# space=" << (u.space() == Space::P ? "P" : "Q") << " k=" << u.k() << " nx=" << m.nx() << " ny=" << m.ny()
    << " xlo=" << format_double(m.x.lo) << " xhi=" << format_double(m.x.hi) << " ylo=" << format_double(m.y.lo)
    << " yhi=" << format_double(m.y.hi) << " time=" << format_double(u.time) << "\n";
  f << "# modes=";
  for (int q = 0; q < u.nb(); ++q) f << (q ? ";" : "") << u.basis.a[q] << ":" << u.basis.b[q];
  f << "\n";
  f << "i,j";
  for (int q = 0; q < u.nb(); ++q) f << ",c" << q;
  f << "\n";
  for (int j = 0; j < m.ny(); ++j)
    for (int i = 0; i < m.nx(); ++i) {
      f << i << "," << j;
      const double* c = u.cell(i, j);
      for (int q = 0; q < u.nb(); ++q) f << "," << format_double(c[q]);
      f << "\n";
    }
  if (!f) throw ConfigError("write failed for " + path);
}

Solution2D read_snapshot(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read snapshot " + path);
  std::string line;
  std::getline(f, line);
  if (line != "# sldg snapshot v1") throw ConfigError(path + " is not a snapshot file");
  std::getline(f, line);
  std::stringstream hs(line.substr(1));
  std::string tok, space = "P";
  int k = -1, nx = 0, ny = 0;
  double xlo = 0, xhi = 0, ylo = 0, yhi = 0, time = 0;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = tok.substr(0, eq), v = tok.substr(eq + 1);
    if (key == "space") space = v;
    else if (key == "k") k = static_cast<int>(parse_double(v));
    else if (key == "nx") nx = static_cast<int>(parse_double(v));
    else if (key == "ny") ny = static_cast<int>(parse_double(v));
    else if (key == "xlo") xlo = parse_double(v);
    else if (key == "xhi") xhi = parse_double(v);
    else if (key == "ylo") ylo = parse_double(v);
    else if (key == "yhi") yhi = parse_double(v);
    else if (key == "time") time = parse_double(v);
  }
  if (k < 0 || (space != "P" && space != "Q")) throw ConfigError("bad snapshot header in " + path);
  Solution2D u(build_mesh_2d(xlo, xhi, nx, ylo, yhi, ny), space == "P" ? Space::P : Space::Q, k);
  u.time = time;
  std::getline(f, line);  // modes
  std::getline(f, line);  // column names
  for (int row = 0; row < nx * ny; ++row) {
    if (!std::getline(f, line)) throw ConfigError("truncated snapshot " + path);
    const auto cols = split_csv(line);
    if (static_cast<int>(cols.size()) != 2 + u.nb()) throw ConfigError("bad snapshot row in " + path);
    const int i = static_cast<int>(parse_double(cols[0])), j = static_cast<int>(parse_double(cols[1]));
    if (i < 0 || i >= nx || j < 0 || j >= ny) throw ConfigError("bad cell index in " + path);
    double* c = u.cell(i, j);
    for (int q = 0; q < u.nb(); ++q) c[q] = parse_double(cols[2 + q]);
  }
  return u;
}

void write_invariants(const std::string& path, const InvariantSeries& series) {
  auto f = open_out(path);
  f << "time,L1_dev,L2_dev,energy_dev,entropy_or_enstrophy_dev\n";
  for (const auto& r : series)
    f << format_double(r.value.time) << "," << format_double(r.l1_dev()) << "," << format_double(r.l2_dev()) << ","
      << format_double(r.energy_dev()) << "," << format_double(r.entropy_or_enstrophy_dev()) << "\n";
}

std::string table_csv(const ResultTable& t, bool with_cpu) {
  std::ostringstream o;
  o << (t.kind == Refinement::spatial ? "mesh" : "cfl") << ",l2_error,l2_order,linf_error,linf_order";
  if (with_cpu) o << ",cpu_seconds";
  o << "\n";
  for (const auto& r : t.rows) {
    o << format_double(r.param) << "," << format_double(r.err.l2) << "," << opt(r.l2_order) << ","
      << format_double(r.err.linf) << "," << opt(r.linf_order);
    if (with_cpu) o << "," << format_double(r.cpu_seconds);
    o << "\n";
  }
  return o.str();
}

void write_table(const std::string& path, const ResultTable& table) {
  auto f = open_out(path);
  f << table_csv(table);
}

std::vector<GridPoint> surface_grid(const Solution2D& u) {
  std::vector<GridPoint> pts;
  pts.reserve(u.mesh.ncells());
  for (int j = 0; j < u.mesh.ny(); ++j)
    for (int i = 0; i < u.mesh.nx(); ++i) {
      // Center of the reference cell: only modes with even indices survive.
      const double v = eval_2d(u.basis, u.cell(i, j), 0.0, 0.0);
      pts.push_back({u.mesh.x.center(i), u.mesh.y.center(j), v});
    }
  return pts;
}

std::vector<GridPoint> cut_line(const Solution2D& u, char axis, double pos) {
  const Mesh1D& along = axis == 'x' ? u.mesh.y : u.mesh.x;
  const Mesh1D& across = axis == 'x' ? u.mesh.x : u.mesh.y;
  const CellLocation loc = locate_cell(pos, across);
  std::vector<GridPoint> pts;
  pts.reserve(static_cast<size_t>(along.n) * 4);
  for (int c = 0; c < along.n; ++c)
    for (int s = 0; s < 4; ++s) {
      const double xi = -0.75 + 0.5 * s;
      const double p = along.to_physical(c, xi);
      const double v = axis == 'x' ? eval_2d(u.basis, u.cell(loc.cell, c), loc.local, xi)
                                   : eval_2d(u.basis, u.cell(c, loc.cell), xi, loc.local);
      pts.push_back(axis == 'x' ? GridPoint{pos, p, v} : GridPoint{p, pos, v});
    }
  return pts;
}

void write_points(const std::string& path, const std::vector<GridPoint>& pts) {
  auto f = open_out(path);
  f << "x,y,value\n";
  for (const auto& p : pts) f << format_double(p.x) << "," << format_double(p.y) << "," << format_double(p.value) << "\n";
}

std::vector<GridPoint> read_points(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read " + path);
  std::string line;
  std::getline(f, line);
  std::vector<GridPoint> pts;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto cols = split_csv(line);
    if (cols.size() != 3) throw ConfigError("bad row in " + path);
    pts.push_back({parse_double(cols[0]), parse_double(cols[1]), parse_double(cols[2])});
  }
  return pts;
}

}  // namespace sldg::harness
