#include "sldg/limiter.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "sldg/error.hpp"
#include "sldg/quadrature.hpp"

namespace sldg {
namespace {

// phi[point * nb + m]
std::vector<double> control_values(const Basis2D& basis) {
  std::vector<double> phi;
  for (const QuadratureRule* r : {&gauss_lobatto(basis.k + 2), &gauss_legendre(basis.k + 3)}) {
    const int np = r->size();
    const size_t off = phi.size();
    phi.resize(off + static_cast<size_t>(np) * np * basis.n);
    for (int a = 0; a < np; ++a)
      for (int b = 0; b < np; ++b)
        basis.eval_all(r->nodes[a], r->nodes[b], phi.data() + off + static_cast<size_t>(a * np + b) * basis.n);
  }
  return phi;
}

}  // namespace

int apply_positivity_limiter(Solution2D& u) {
  const int nb = u.nb();
  const std::vector<double> phi = control_values(u.basis);
  const int np = static_cast<int>(phi.size()) / nb;
  double scale = 0.0;
  for (int c = 0; c < u.mesh.ncells(); ++c) scale = std::max(scale, std::abs(u.c[static_cast<size_t>(c) * nb]));
  const double tol = 1e-12 * std::max(scale, 1e-300);
  int touched = 0;
  for (int c = 0; c < u.mesh.ncells(); ++c) {
    double* cc = u.c.data() + static_cast<size_t>(c) * nb;
    const double avg = cc[0];
    if (avg < -tol)
      throw NumericalError("negative cell average " + std::to_string(avg) + " in cell " + std::to_string(c));
    double mn = INFINITY;
    for (int p = 0; p < np; ++p) {
      double v = 0.0;
      for (int m = 0; m < nb; ++m) v += cc[m] * phi[p * nb + m];
      mn = std::min(mn, v);
    }
    if (mn >= 0.0) continue;
    const double theta = avg <= 0.0 ? 0.0 : std::min(1.0, avg / (avg - mn));
    for (int m = 1; m < nb; ++m) cc[m] *= theta;
    ++touched;
  }
  return touched;
}

double control_point_min(const Solution2D& u) {
  const int nb = u.nb();
  const std::vector<double> phi = control_values(u.basis);
  const int np = static_cast<int>(phi.size()) / nb;
  double mn = INFINITY;
  for (int c = 0; c < u.mesh.ncells(); ++c) {
    const double* cc = u.c.data() + static_cast<size_t>(c) * nb;
    for (int p = 0; p < np; ++p) {
      double v = 0.0;
      for (int m = 0; m < nb; ++m) v += cc[m] * phi[p * nb + m];
      mn = std::min(mn, v);
    }
  }
  return mn;
}

double control_point_max_abs(const Solution2D& u) {
  const int nb = u.nb();
  const std::vector<double> phi = control_values(u.basis);
  const int np = static_cast<int>(phi.size()) / nb;
  double mx = 0.0;
  for (int c = 0; c < u.mesh.ncells(); ++c) {
    const double* cc = u.c.data() + static_cast<size_t>(c) * nb;
    for (int p = 0; p < np; ++p) {
      double v = 0.0;
      for (int m = 0; m < nb; ++m) v += cc[m] * phi[p * nb + m];
      mx = std::max(mx, std::abs(v));
    }
  }
  return mx;
}

}  // namespace sldg
