#include "sldg/harness/table.hpp"

#include <cmath>

#include "sldg/error.hpp"
#include "sldg/quadrature.hpp"

namespace sldg::harness {
namespace {

template <class F>
ErrorPair accumulate(const Solution2D& u, int npts, const F& ref) {
  const int n = npts > 0 ? npts : u.k() + 3;
  const QuadratureRule& g = gauss_legendre(n);
  const Mesh2D& m = u.mesh;
  double phi[kMaxBasis];
  std::vector<double> basis(static_cast<size_t>(n) * n * u.nb());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      u.basis.eval_all(g.nodes[a], g.nodes[b], phi);
      std::copy(phi, phi + u.nb(), basis.begin() + static_cast<size_t>(a * n + b) * u.nb());
    }
  double s = 0.0, mx = 0.0;
  for (int j = 0; j < m.ny(); ++j)
    for (int i = 0; i < m.nx(); ++i) {
      const double* c = u.cell(i, j);
      double cs = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const double* p = basis.data() + static_cast<size_t>(a * n + b) * u.nb();
          double v = 0.0;
          for (int q = 0; q < u.nb(); ++q) v += c[q] * p[q];
          const double e = v - ref(m.x.to_physical(i, g.nodes[a]), m.y.to_physical(j, g.nodes[b]));
          cs += g.weights[a] * g.weights[b] * e * e;
          mx = std::max(mx, std::abs(e));
        }
      s += cs;
    }
  // Reference weights sum to 4 per cell.
  return {std::sqrt(s * 0.25 * m.cell_area() / m.area()), mx};
}

bool same_domain(const Mesh1D& a, const Mesh1D& b) {
  const double tol = 1e-12 * std::max(1.0, a.length());
  return std::abs(a.lo - b.lo) <= tol && std::abs(a.hi - b.hi) <= tol;
}

}  // namespace

ErrorPair compare_solutions(const Solution2D& u, const std::function<double(double, double)>& exact, int npts) {
  return accumulate(u, npts, exact);
}

ErrorPair compare_solutions(const Solution2D& u, const Solution2D& reference, int npts) {
  if (!same_domain(u.mesh.x, reference.mesh.x) || !same_domain(u.mesh.y, reference.mesh.y))
    throw ConfigError("compared solutions live on different domains");
  return accumulate(u, npts, [&](double x, double y) { return reference.eval(x, y); });
}

std::optional<double> observed_order(Refinement kind, double p_prev, double e_prev, double p, double e) {
  if (!(e_prev > 0.0) || !(e > 0.0) || p == p_prev) return std::nullopt;
  const double r = std::log(e_prev / e) / std::log(p / p_prev);
  return kind == Refinement::spatial ? r : -r;
}

ResultTable convergence_table(Refinement kind, std::vector<TableRow> rows, std::string label) {
  if (rows.size() < 2) throw ConfigError("a convergence table needs at least two rows");
  for (size_t i = 0; i < rows.size(); ++i) {
    rows[i].l2_order.reset();
    rows[i].linf_order.reset();
    if (i == 0) continue;
    if (!(rows[i].param > rows[i - 1].param)) throw ConfigError("table parameters must increase");
    rows[i].l2_order = observed_order(kind, rows[i - 1].param, rows[i - 1].err.l2, rows[i].param, rows[i].err.l2);
    rows[i].linf_order =
        observed_order(kind, rows[i - 1].param, rows[i - 1].err.linf, rows[i].param, rows[i].err.linf);
  }
  return {kind, std::move(label), std::move(rows)};
}

}  // namespace sldg::harness
