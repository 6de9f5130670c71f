#pragma once

#include <vector>

#include "oplab/witten/lattice.hpp"
#include "oplab/witten/profiles.hpp"

namespace oplab::witten {

struct TraceClassReport {
  int p = 0;
  std::vector<double> singular_values;  ///< base grid, descending
  std::vector<double> partial_sums;     ///< cumulative sums of the above
  double total_base = 0.0;              ///< grid (L, n)
  double total_refined = 0.0;           ///< grid (L, 2n)
  double total_extended = 0.0;          ///< grid (2L, 2n)
  /// Least-squares slope of -log sigma_k against log k over the upper 80% of
  /// the nonzero values; 0 when fewer than 8 values are nonzero.
  double decay_exponent = 0.0;
  bool stable_under_refinement = false;
  bool stable_under_extension = false;
  bool plausibly_trace_class = false;
};

/// Singular values of B (A1 + i)^{-p-1} on the grid of `a1`, compared on the
/// refined and the extended grid. Totals are "stable" when they agree within
/// `relative_tolerance` of the base total.
TraceClassReport relative_trace_class_diagnostic(const LatticeOperator& a1, const PerturbationProfile& b, int p,
                                                 double relative_tolerance = 0.05);

/// Singular values of B (A1 + i)^{-p-1} on the grid of `a1`, descending.
std::vector<double> relative_singular_values(const LatticeOperator& a1, const PerturbationProfile& b, int p);

}  // namespace oplab::witten
