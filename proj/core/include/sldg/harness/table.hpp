#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sldg/solution.hpp"

namespace sldg::harness {

struct ErrorPair {
  double l2 = 0.0;    // sqrt(int e^2 / |domain|)
  double linf = 0.0;  // max over the quadrature points
};

// npts Gauss points per direction in every cell of u's mesh (0 = k+3).
ErrorPair compare_solutions(const Solution2D& u, const std::function<double(double, double)>& exact, int npts = 0);
// The reference may live on a finer mesh of the same domain.
ErrorPair compare_solutions(const Solution2D& u, const Solution2D& reference, int npts = 0);

enum class Refinement { spatial, temporal };

struct TableRow {
  double param = 0.0;  // cells per direction (spatial) or CFL (temporal)
  ErrorPair err;
  double cpu_seconds = 0.0;
  std::optional<double> l2_order;
  std::optional<double> linf_order;
};

struct ResultTable {
  Refinement kind = Refinement::spatial;
  std::string label;
  std::vector<TableRow> rows;
};

// order_i = log(e_{i-1}/e_i) / log(p_i/p_{i-1}) for spatial rows and
// log(e_i/e_{i-1}) / log(p_i/p_{i-1}) for temporal rows; blank when either
// error is zero.
std::optional<double> observed_order(Refinement kind, double p_prev, double e_prev, double p, double e);
ResultTable convergence_table(Refinement kind, std::vector<TableRow> rows, std::string label = {});

}  // namespace sldg::harness
