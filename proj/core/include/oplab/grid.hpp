#pragma once

#include <vector>

namespace oplab {

/// Uniform grid on [-L, L) with n points and spacing h = 2L/n.
/// Periodic for the spectral operators; the finite-difference bound-state
/// counter treats the two ends as Dirichlet walls.
class GridSpec {
 public:
  /// Throws DomainError unless n >= 16, n even, L > 0 and h < 1.
  GridSpec(double half_width, int points);

  double half_width() const noexcept { return half_width_; }
  int points() const noexcept { return points_; }
  double spacing() const noexcept { return 2.0 * half_width_ / points_; }
  double node(int j) const noexcept { return -half_width_ + j * spacing(); }
  std::vector<double> nodes() const;

  bool operator==(const GridSpec&) const = default;

 private:
  double half_width_;
  int points_;
};

}  // namespace oplab
