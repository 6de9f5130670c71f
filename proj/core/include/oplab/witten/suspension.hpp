#pragma once

// D = d/dt (x) 1 + 1 (x) A1 + M_theta (x) B on a periodic (t, x) product grid,
// and the heat-trace side of the trace formula built from D D* and D* D.

#include <span>
#include <vector>

#include "oplab/grid.hpp"
#include "oplab/linalg.hpp"
#include "oplab/witten/lattice.hpp"
#include "oplab/witten/profiles.hpp"

namespace oplab::witten {

class SuspensionOperator {
 public:
  SuspensionOperator(DenseMatrix d, DenseMatrix d_star, GridSpec t_grid, GridSpec x_grid, ThetaProfile theta,
                     std::vector<double> theta_samples, int components);

  const DenseMatrix& matrix() const noexcept { return d_; }
  /// Assembled independently as -d/dt (x) 1 + 1 (x) A1 + M_theta (x) B.
  const DenseMatrix& adjoint_matrix() const noexcept { return d_star_; }
  const GridSpec& t_grid() const noexcept { return t_grid_; }
  const GridSpec& x_grid() const noexcept { return x_grid_; }
  const ThetaProfile& theta() const noexcept { return theta_; }
  const std::vector<double>& theta_samples() const noexcept { return theta_samples_; }
  int components() const noexcept { return components_; }

  /// max|D^H - D*|.
  double adjoint_mismatch() const;
  /// max|D D* - D* D|.
  double normality_defect() const;
  /// Row indices whose t-node satisfies |t| <= T/2 (the central half of the t-grid).
  std::vector<Eigen::Index> central_window() const;

 private:
  DenseMatrix d_;
  DenseMatrix d_star_;
  GridSpec t_grid_;
  GridSpec x_grid_;
  ThetaProfile theta_;
  std::vector<double> theta_samples_;
  int components_;
};

/// Throws DomainError when theta misses its limits on the t-grid or when
/// `a1` does not live on `x_grid`.
SuspensionOperator build_suspension(const LatticeOperator& a1, const PerturbationProfile& b, const ThetaProfile& theta,
                                    const GridSpec& t_grid, const GridSpec& x_grid);

/// tr(exp(-t D*D) - exp(-t D D*)) restricted to the central t-window.
///
/// Localized to the rows where theta interpolates, away from the periodic
/// wrap-around of the t-grid. One pair of eigendecompositions serves every t.
/// Throws VerificationError when D and D* are inconsistent.
std::vector<double> ptf_lhs(const SuspensionOperator& d, std::span<const double> t);
double ptf_lhs(const SuspensionOperator& d, double t);

}  // namespace oplab::witten
