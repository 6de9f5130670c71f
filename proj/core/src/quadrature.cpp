#include "oplab/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/legendre.hpp>

#include "oplab/constants.hpp"
#include "oplab/error.hpp"

namespace oplab {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  // legendre_p_zeros returns the non-negative roots in ascending order.
  const std::vector<double> roots = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> x;
  x.reserve(static_cast<size_t>(n));
  for (double r : roots) {
    x.push_back(r);
    if (r > 0.0) x.push_back(-r);
  }
  std::sort(x.begin(), x.end());

  QuadratureRule rule;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (double xi : x) {
    const double dp = boost::math::legendre_p_prime<double>(n, xi);
    const double w = 2.0 / ((1.0 - xi * xi) * dp * dp);
    rule.nodes.push_back(mid + half * xi);
    rule.weights.push_back(half * w);
  }
  return rule;
}

LineIntegral integrate_line(const std::function<double(double)>& f, double decay_bound, double tol) {
  if (!(decay_bound >= 0.0) || !std::isfinite(decay_bound)) {
    throw InconclusiveError("integrate_line: no finite decay bound for the integrand");
  }
  LineIntegral out;
  if (decay_bound == 0.0) return out;

  // |f(tan phi) sec^2 phi| <= c, so each cap of width eps adds at most c*eps.
  constexpr double kCap = 1e-12;
  out.tail_bound = 2.0 * decay_bound * kCap;
  if (out.tail_bound > 0.5 * tol) {
    throw InconclusiveError("integrate_line: tail bound exceeds tolerance (insufficient decay)");
  }

  constexpr int kPanels = 128;
  constexpr int kOrder = 16;
  static const QuadratureRule unit = gauss_legendre(kOrder, 0.0, 1.0);
  const double lo = -0.5 * constants::kPi + kCap;
  const double width = (constants::kPi - 2.0 * kCap) / kPanels;

  std::vector<double> panel(kPanels, 0.0);
  for (int p = 0; p < kPanels; ++p) {
    for (int i = 0; i < kOrder; ++i) {
      const double phi = lo + width * (p + unit.nodes[static_cast<size_t>(i)]);
      const double x = std::tan(phi);
      panel[static_cast<size_t>(p)] += unit.weights[static_cast<size_t>(i)] * f(x) * (1.0 + x * x);
    }
    panel[static_cast<size_t>(p)] *= width;
  }
  double fine = 0.0;
  for (double v : panel) fine += v;

  // Same integral with panels merged pairwise.
  static const QuadratureRule unit2 = gauss_legendre(kOrder, 0.0, 2.0);
  double coarse = 0.0;
  for (int p = 0; p < kPanels; p += 2) {
    for (int i = 0; i < kOrder; ++i) {
      const double phi = lo + width * (p + unit2.nodes[static_cast<size_t>(i)]);
      const double x = std::tan(phi);
      coarse += width * unit2.weights[static_cast<size_t>(i)] * f(x) * (1.0 + x * x);
    }
  }
  out.value = fine;
  out.error_estimate = std::abs(fine - coarse) + out.tail_bound;
  if (out.error_estimate > tol) {
    throw InconclusiveError("integrate_line: quadrature error estimate exceeds the requested tolerance");
  }
  return out;
}

}  // namespace oplab
