#pragma once

#include <string>
#include <vector>

#include "sldg/harness/table.hpp"
#include "sldg/invariants.hpp"
#include "sldg/solution.hpp"

namespace sldg::harness {

// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

// Modal coefficients, one row per cell; see README for the header lines.
void write_snapshot(const std::string& path, const Solution2D& u);
Solution2D read_snapshot(const std::string& path);

// time,L1_dev,L2_dev,energy_dev,entropy_or_enstrophy_dev
void write_invariants(const std::string& path, const InvariantSeries& series);
// param,l2_error,l2_order,linf_error,linf_order,cpu_seconds
void write_table(const std::string& path, const ResultTable& table);
std::string table_csv(const ResultTable& table, bool with_cpu = true);

struct GridPoint {
  double x, y, value;
};

// Cell centers, row-major in j then i.
std::vector<GridPoint> surface_grid(const Solution2D& u);
// Along x = pos (axis 'x') or y = pos (axis 'y'), 4 samples per crossed cell.
std::vector<GridPoint> cut_line(const Solution2D& u, char axis, double pos);
// x,y,value
void write_points(const std::string& path, const std::vector<GridPoint>& pts);
std::vector<GridPoint> read_points(const std::string& path);

}  // namespace sldg::harness
