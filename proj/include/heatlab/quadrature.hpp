#pragma once

#include <vector>

namespace heatlab {

struct QuadratureRule {
  std::vector<double> points;  // on [0,1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [0,1]; exact for degree 2n-1.
QuadratureRule gauss_legendre(int n);

/// Gauss-Lobatto-Legendre nodes and weights of degree p (p+1 points, both ends included), on [0,1].
QuadratureRule gauss_lobatto(int p);

/// Uniform rule on the circle [0, 2pi); exact for trigonometric polynomials of degree < n.
QuadratureRule periodic_rule(int n);

}  // namespace heatlab
