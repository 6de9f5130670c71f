#pragma once

// Bound-state counting, phase winding of det S, zero-energy resonance
// detection and the Levinson balance
//
//   N = kLevinsonSign * (delta(inf) - delta(0)) / pi + (1 - M_R(0)) / 2,
//
// with delta = arg det S / 2.

#include <functional>
#include <string>
#include <vector>

#include "oplab/grid.hpp"
#include "oplab/scattering/potential.hpp"
#include "oplab/scattering/smatrix.hpp"

namespace oplab::scattering {

/// Negative eigenvalues of the Dirichlet finite-difference -d^2/dx^2 + V on
/// the interior grid nodes, by Sturm sequence (LDL^T pivot signs).
int count_negative_eigenvalues(const Potential& v, const GridSpec& grid);

/// Count on `grid`, on (L, 2n) and on (2L, 2n); disagreement throws
/// InconclusiveError. Requires L >= 5 a.
int bound_states(const Potential& v, const GridSpec& grid);
/// Default grid L = max(100, 5a), h = 0.01.
int bound_states(const Potential& v);
GridSpec default_bound_state_grid(const Potential& v);

struct PhaseWinding {
  double head = 0.0;   ///< extrapolated arg det S at k -> 0
  double tail = 0.0;   ///< extrapolated arg det S at k -> inf
  double total = 0.0;  ///< tail - head
  std::vector<double> unwrapped;  ///< arg det S along the curve
};

/// Unwrapped arg det S with a linear-in-k head fit on the samples with
/// k <= 2 k_min and a delta_inf + c / k tail fit on k >= k_max / 2.
/// Throws InconclusiveError on a jump above pi between neighbours.
PhaseWinding phase_winding(const ScatteringCurve& curve);

struct ResonanceVerdict {
  int m_r0 = 0;
  double evidence = 0.0;  ///< extrapolated |t(0)|
};

/// Least-squares fit |t(k)| = c0 + c1 k on `k_head`; evidence = c0.
/// Throws InconclusiveError when kResonanceLow < c0 < kResonanceHigh.
ResonanceVerdict resonance_detect(const Potential& v, const std::vector<double>& k_head);
std::vector<double> default_k_head();

/// Wavenumber grid used by levinson_check: 40 points per decade from kKMin to
/// max(100, 20 int|V|).
std::vector<double> default_k_grid(const Potential& v);

struct LevinsonReport {
  int n_bound = 0;
  double phase_winding = 0.0;  ///< Delta arg det S from k = 0 to k = inf
  int m_r0 = 0;
  double resonance_evidence = 0.0;
  double predicted = 0.0;      ///< right-hand side of the balance
  double residual = 0.0;
  bool accepted = false;
  std::string convention;
  ScatteringCurve curve;
  PhaseWinding winding;
};

LevinsonReport levinson_check(const Potential& v);

/// Depth of the square well of half-width a closest to a zero-energy
/// resonance in [lo, hi]: scan of |t(k_probe)| on a uniform grid, then
/// bisection of the zero-energy slope around the best scan point. The returned
/// depth sits just on the unbound side of the threshold.
double locate_resonance_depth(double half_width, double lo, double hi, double scan_step = 0.01,
                              double k_probe = 1e-3);

}  // namespace oplab::scattering
