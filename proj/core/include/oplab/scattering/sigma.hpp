#pragma once

// The correcting factor sigma for Levinson's theorem as an index statement:
// S sigma* has identity limits at both ends of the line lambda = ln k^2, so
// P S sigma* P is Fredholm and its index splits into two Witten indices.

#include <string>
#include <vector>

#include "oplab/scattering/potential.hpp"
#include "oplab/scattering/smatrix.hpp"

namespace oplab::scattering {

/// S sampled on a uniform grid in lambda = ln k^2, with its limits.
struct LineCurve {
  std::vector<double> lambda;
  std::vector<Matrix2c> s;
  Matrix2c s_minus_infinity;  ///< projected onto the admissible limits (det = +-1)
  Matrix2c s_plus_infinity;   ///< identity
  double plus_residual = 0.0;       ///< max|S(k_max) - I|
  double minus_snap_distance = 0.0;  ///< max|raw extrapolation - projected limit|
};

/// Reparametrizes by lambda = ln k^2 on a uniform grid (recomputing S when the
/// curve is not uniform in lambda), extending k_max by doubling until
/// max|S - I| <= kLimitTolerance (up to k = 1e5, else DomainError). S(-inf)
/// is extrapolated linearly in k from the three smallest samples, projected
/// onto the nearest unitary, then onto det = +1 or det = -1 with eigenvalues +1, -1.
LineCurve exp_resample(const Potential& v, const ScatteringCurve& curve);

enum class SigmaBranch { kTrivial, kAntidiagonalLimit, kGeneralUnitary };
std::string to_string(SigmaBranch b);

/// sigma(lambda) = u diag(e^{i alpha w}, e^{i beta w}) u^*, w = (pi/2 - arctan lambda) / pi,
/// so sigma(-inf) = u diag(e^{i alpha}, e^{i beta}) u^* and sigma(+inf) = 1.
class SigmaFactor {
 public:
  SigmaFactor(SigmaBranch branch, Matrix2c u, double alpha, double beta, double theta);

  SigmaBranch branch() const noexcept { return branch_; }
  const Matrix2c& conjugator() const noexcept { return u_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  /// Eigenphase angle of the general branch, 0 otherwise.
  double theta_angle() const noexcept { return theta_; }

  Matrix2c operator()(double lambda) const;
  Matrix2c minus_limit() const;
  Matrix2c plus_limit() const { return Matrix2c::Identity(); }
  /// -i sigma'(lambda) sigma(lambda)^*.
  Matrix2c generator(double lambda) const;

 private:
  SigmaBranch branch_;
  Matrix2c u_;
  double alpha_;
  double beta_;
  double theta_;
};

/// Branch on the limit: identity -> trivial; det = -1 with eigenvalues +1, -1
/// -> antidiagonal-limit (alpha = 0, beta = -pi); det = 1 -> general unitary
/// (alpha = -theta, beta = theta). Throws DomainError when the input is not
/// unitary to 1e-8 or fits no branch.
SigmaFactor build_sigma(const Matrix2c& s_minus_infinity);

/// (1/2pi) int tr(-i sigma' sigma^*) d lambda by quadrature. Throws
/// VerificationError when the value is not within 1e-3 of 0 or 1/2.
double witten_index_sigma(const SigmaFactor& sigma);

struct CorrectedIndex {
  int fredholm_index = 0;
  double winding = 0.0;  ///< winding of det(S sigma^*) along the closed line
  double w_s = 0.0;      ///< W(D, S* D S)
  double w_sigma = 0.0;  ///< W(D, sigma D sigma*)
  double residual = 0.0; ///< |index - w_s - w_sigma|
  bool accepted = false;
  std::vector<double> det_phase;  ///< unwrapped arg det(S sigma^*) along lambda
};

/// Fredholm index -winding(det S sigma*), and the decomposition
/// W(D,S*DS) = -(1/2pi) Delta arg det S plus witten_index_sigma.
/// Throws DomainError when S sigma* misses the identity at either end by
/// more than kLimitTolerance.
CorrectedIndex corrected_index(const LineCurve& curve, const SigmaFactor& sigma);

}  // namespace oplab::scattering
