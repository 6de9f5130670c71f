#pragma once

// Transfer matrices and scattering matrices of -psi'' + V psi = k^2 psi.
//
// With psi = A e^{ikx} + B e^{-ikx} left of the support and C e^{ikx} + D e^{-ikx}
// right of it, the transfer matrix M maps (A, B) to (C, D). The scattering
// matrix maps incoming amplitudes (A, D) to outgoing (C, B):
//
//   S = [[t, r_minus], [r_plus, t]] = (1 / M22) [[1, M12], [-M21, 1]].

#include <Eigen/Dense>
#include <vector>

#include "oplab/linalg.hpp"
#include "oplab/scattering/potential.hpp"

namespace oplab::scattering {

using Matrix2c = Eigen::Matrix2cd;

struct TransferResult {
  Matrix2c m;
  double wronskian_drift = 0.0;  ///< |det Y - 1| of the raw fundamental matrix
  long steps = 0;
};

/// Step size used at wavenumber k: min(0.01, 0.01 / sqrt(k^2 + max|V|)).
double integrator_step(const Potential& v, double k);

/// Fixed-step RK4 on the real fundamental matrix across [-a-1, a+1], split at
/// the breakpoints of V, then normalized to unit determinant.
TransferResult transfer_matrix_detailed(const Potential& v, double k);
Matrix2c transfer_matrix(const Potential& v, double k);

/// psi'(a+1) for the k = 0 solution with psi = 1, psi' = 0 at -a-1. Vanishes at
/// a zero-energy resonance.
double zero_energy_slope(const Potential& v);

/// max|M - I| for V = 0 integrated with the step rule at wavenumber k.
/// Throws NonConvergenceError above kIntegratorDriftLimit.
double integrator_self_test(double k, double support_radius);

Matrix2c s_from_transfer(const Matrix2c& m);
double unitarity_residual(const Matrix2c& s);

struct ScatteringCurve {
  std::vector<double> k;
  std::vector<Matrix2c> s;
  std::vector<double> unitarity_residuals;
  std::vector<double> reciprocity_residuals;  ///< |S11 - S22|
  double self_test_drift = 0.0;

  double max_unitarity_residual() const;
};

/// S(k) on an ascending positive grid. Neighbours whose det S differ in
/// argument by pi/4 or more get a geometric midpoint inserted, until
/// `node_budget` samples; beyond that InconclusiveError.
ScatteringCurve scattering_matrix(const Potential& v, std::vector<double> k_grid, int node_budget = 20000);

/// n log-spaced points from k_lo to k_hi inclusive.
std::vector<double> log_grid(double k_lo, double k_hi, int n);

}  // namespace oplab::scattering
