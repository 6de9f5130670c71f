#pragma once

#include <functional>
#include <string>
#include <vector>

namespace oplab::scattering {

/// Real potential V(x) with certified support [-a, a]. Units hbar = 2m = 1,
/// so H = -d^2/dx^2 + V and the energy is k^2.
class Potential {
 public:
  /// `breakpoints` lists points where V may jump; the integrator never steps
  /// across them. Throws DomainError when |V| exceeds 1e-12 just outside the
  /// support or V is not finite on it.
  Potential(std::function<double(double)> evaluator, double support_radius, std::vector<double> breakpoints,
            std::string family);

  /// V = -depth on |x| < half_width, 0 elsewhere.
  static Potential square_well(double depth, double half_width);
  static Potential free();

  double operator()(double x) const { return f_(x); }
  double support_radius() const noexcept { return radius_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::string& family() const noexcept { return family_; }
  /// max |V| on the support (sampled, plus breakpoint neighbourhoods).
  double max_abs() const noexcept { return max_abs_; }
  /// int |V| dx.
  double l1_norm() const noexcept { return l1_; }
  bool is_free() const noexcept { return max_abs_ == 0.0; }

  /// Square-well parameters, zero for other families.
  double depth() const noexcept { return depth_; }
  double half_width() const noexcept { return half_width_; }

 private:
  std::function<double(double)> f_;
  double radius_;
  std::vector<double> breakpoints_;
  std::string family_;
  double max_abs_ = 0.0;
  double l1_ = 0.0;
  double depth_ = 0.0;
  double half_width_ = 0.0;
};

}  // namespace oplab::scattering
