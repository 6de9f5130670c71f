#pragma once

// The heat-trace side of the trace formula, Witten-index estimation from its
// large-t plateau, the commutative closed form, and the composition rule.

#include <span>
#include <utility>
#include <vector>

#include "oplab/constants.hpp"
#include "oplab/error.hpp"
#include "oplab/witten/lattice.hpp"
#include "oplab/witten/profiles.hpp"

namespace oplab::witten {

/// kWittenSign * (t/pi)^{1/2} int_1^2 tr(exp(-t A_s^2) B) ds with
/// A_s = A + (s-1) B, Gauss-Legendre in s. One eigendecomposition per s-node
/// serves every t.
std::vector<double> heat_trace_rhs(const LatticeOperator& a, const PerturbationProfile& b,
                                   std::span<const double> t, int s_nodes = 8);
double heat_trace_rhs(const LatticeOperator& a, const PerturbationProfile& b, double t, int s_nodes = 8);

/// t_j = t0 * 2^j for j = 0..j_max.
std::vector<double> geometric_schedule(double t0 = 1.0, int j_max = 7);

/// Largest t at which the grid still resolves the continuum: (L/pi)^2 / 4.
double validity_ceiling(const GridSpec& grid);

struct WittenEstimate {
  std::vector<double> t_samples;
  std::vector<double> rhs_values;
  double plateau_value = 0.0;
  std::pair<double, double> plateau_window{0.0, 0.0};
  double uncertainty = 0.0;
  double ceiling = 0.0;
};

/// Raised when no plateau with the requested uncertainty exists; carries the
/// full curve.
class PlateauNotFound : public NonConvergenceError {
 public:
  PlateauNotFound(const std::string& what, WittenEstimate curve)
      : NonConvergenceError(what, static_cast<int>(curve.t_samples.size())), curve_(std::move(curve)) {}
  const WittenEstimate& curve() const noexcept { return curve_; }

 private:
  WittenEstimate curve_;
};

/// Longest run of samples with t <= ceiling whose consecutive values differ by
/// less than kPlateauStep; the run must hold kPlateauMinSamples samples. Ties go
/// to the run at larger t.
WittenEstimate detect_plateau(std::vector<double> t, std::vector<double> values, double ceiling,
                              double max_uncertainty = constants::kPlateauMaxUncertainty);

WittenEstimate witten_index_estimate(const LatticeOperator& a, const PerturbationProfile& b,
                                     std::span<const double> t_schedule, int s_nodes = 8,
                                     double max_uncertainty = constants::kPlateauMaxUncertainty);

/// (1/2pi) int tr Phi over the line, absolute error <= kClosedFormTolerance.
/// Throws InconclusiveError without a decay certificate.
double witten_index_closed_form(const PerturbationProfile& b);

struct CompositionReport {
  WittenEstimate w12;
  WittenEstimate w23;
  WittenEstimate w13;
  double heat_residual = 0.0;
  double closed_12 = 0.0;
  double closed_23 = 0.0;
  double closed_13 = 0.0;
  double closed_form_residual = 0.0;
};

/// W(A1, A2) + W(A2, A3) versus W(A1, A3) with A2 = A1 + B1, A3 = A2 + B2.
CompositionReport check_composition(const LatticeOperator& a1, const PerturbationProfile& b1,
                                    const PerturbationProfile& b2, std::span<const double> t_schedule,
                                    int s_nodes = 8);

struct PathSplitting {
  double direct = 0.0;  ///< int_1^2 tr(exp(-t (A1 + (s-1) B3)^2) B3) ds
  double split = 0.0;   ///< the same along A1 -> A2 -> A3
  double residual = 0.0;
};

PathSplitting path_splitting_check(const LatticeOperator& a1, const PerturbationProfile& b1,
                                   const PerturbationProfile& b2, double t, int s_nodes = 8);

}  // namespace oplab::witten
