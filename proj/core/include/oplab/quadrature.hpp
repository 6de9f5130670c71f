#pragma once

#include <functional>
#include <vector>

namespace oplab {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

struct LineIntegral {
  double value = 0.0;
  double error_estimate = 0.0;  // rule-comparison estimate plus the tail bound
  double tail_bound = 0.0;
};

/// Integral of f over the real line for integrands with |f(x)| <= c / (1 + x^2).
/// The line is compactified by x = tan(phi) and integrated with a fixed
/// composite Gauss-Legendre rule and is linear in f. The two
/// excluded end caps contribute at most 2 c eps with eps = 1e-12. Throws
/// InconclusiveError when the tail bound or the difference to a rule with
/// half the panels exceeds `tol`.
LineIntegral integrate_line(const std::function<double(double)>& f, double decay_bound, double tol);

}  // namespace oplab
