#include "heatlab/quadrature.hpp"

#include "heatlab/error.hpp"

#include <cmath>
#include <numbers>

namespace heatlab {
namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("gauss_legendre: need at least one point");
  QuadratureRule q;
  q.points.resize(static_cast<size_t>(n));
  q.weights.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(n, x, p, dp);
    // ascending order on [0,1]
    const size_t k = static_cast<size_t>(n - 1 - i);
    q.points[k] = 0.5 * (1.0 + x);
    q.weights[k] = 1.0 / ((1.0 - x * x) * dp * dp);  // 2/((1-x^2)P'^2) scaled by 1/2
  }
  return q;
}

QuadratureRule gauss_lobatto(int p) {
  if (p < 1) throw PreconditionError("gauss_lobatto: degree must be positive");
  QuadratureRule q;
  q.points.resize(static_cast<size_t>(p + 1));
  q.weights.resize(static_cast<size_t>(p + 1));
  // interior nodes are roots of P_p'; Newton on (1-x^2)P_p' with Chebyshev-Gauss-Lobatto start
  for (int i = 0; i <= p; ++i) {
    double x = -std::cos(std::numbers::pi * i / p);
    if (i > 0 && i < p) {
      for (int it = 0; it < 100; ++it) {
        double pn = 0.0, dpn = 0.0;
        legendre(p, x, pn, dpn);
        // (1-x^2) P'' = 2x P' - p(p+1) P
        const double d2 = (2.0 * x * dpn - p * (p + 1.0) * pn) / (1.0 - x * x);
        const double dx = dpn / d2;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
    }
    double pn = 0.0, dpn = 0.0;
    if (i == 0 || i == p) {
      pn = (i == 0 && p % 2 == 1) ? -1.0 : 1.0;
    } else {
      legendre(p, x, pn, dpn);
    }
    q.points[static_cast<size_t>(i)] = 0.5 * (1.0 + x);
    q.weights[static_cast<size_t>(i)] = 1.0 / (p * (p + 1.0) * pn * pn);  // 2/(p(p+1)P^2) scaled by 1/2
  }
  q.points.front() = 0.0;
  q.points.back() = 1.0;
  return q;
}

QuadratureRule periodic_rule(int n) {
  if (n < 1) throw PreconditionError("periodic_rule: need at least one point");
  QuadratureRule q;
  for (int i = 0; i < n; ++i) {
    q.points.push_back(2.0 * std::numbers::pi * i / n);
    q.weights.push_back(2.0 * std::numbers::pi / n);
  }
  return q;
}

}  // namespace heatlab
