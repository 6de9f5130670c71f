#include "oplab/scattering/potential.hpp"

#include <algorithm>
#include <cmath>

#include "oplab/error.hpp"
#include "oplab/quadrature.hpp"

namespace oplab::scattering {

Potential::Potential(std::function<double(double)> evaluator, double support_radius, std::vector<double> breakpoints,
                     std::string family)
    : f_(std::move(evaluator)), radius_(support_radius), breakpoints_(std::move(breakpoints)), family_(std::move(family)) {
  if (!(support_radius > 0.0) || !std::isfinite(support_radius)) {
    throw DomainError("Potential: support radius must be positive");
  }
  std::sort(breakpoints_.begin(), breakpoints_.end());
  for (double b : breakpoints_) {
    if (std::abs(b) > radius_) throw DomainError("Potential: breakpoint outside the support");
  }
  // Outside the support: sample [a, a + 10] on both sides.
  for (int i = 0; i <= 1000; ++i) {
    const double x = radius_ * (1.0 + 1e-12) + 1e-9 + 10.0 * i / 1000.0;
    if (std::abs(f_(x)) > 1e-12 || std::abs(f_(-x)) > 1e-12) {
      throw DomainError("Potential: evaluator does not vanish outside the declared support");
    }
  }
  // Inside: piecewise Gauss-Legendre between breakpoints.
  std::vector<double> edges = {-radius_};
  for (double b : breakpoints_) {
    if (b > edges.back()) edges.push_back(b);
  }
  if (radius_ > edges.back()) edges.push_back(radius_);
  for (size_t p = 0; p + 1 < edges.size(); ++p) {
    constexpr int kPanels = 64;
    const double w = (edges[p + 1] - edges[p]) / kPanels;
    for (int q = 0; q < kPanels; ++q) {
      const QuadratureRule rule = gauss_legendre(8, edges[p] + q * w, edges[p] + (q + 1) * w);
      for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = f_(rule.nodes[i]);
        if (!std::isfinite(v)) throw DomainError("Potential: evaluator is not finite on the support");
        max_abs_ = std::max(max_abs_, std::abs(v));
        l1_ += rule.weights[i] * std::abs(v);
      }
    }
  }
}

Potential Potential::square_well(double depth, double half_width) {
  if (!(depth > 0.0) || !(half_width > 0.0)) throw DomainError("square_well: depth and half-width must be positive");
  Potential p([depth, half_width](double x) { return std::abs(x) < half_width ? -depth : 0.0; }, half_width,
              {-half_width, half_width}, "square_well");
  p.depth_ = depth;
  p.half_width_ = half_width;
  p.max_abs_ = depth;
  p.l1_ = 2.0 * half_width * depth;
  return p;
}

Potential Potential::free() { return Potential([](double) { return 0.0; }, 1.0, {}, "free"); }

}  // namespace oplab::scattering
