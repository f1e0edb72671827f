#pragma once

#include <vector>

namespace sldg {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

// Rules on [-1, 1]. Results are cached; the references stay valid for the
// lifetime of the program.
const QuadratureRule& gauss_legendre(int n);
const QuadratureRule& gauss_lobatto(int n);

}  // namespace sldg
