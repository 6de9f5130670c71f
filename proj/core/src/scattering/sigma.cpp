#include "oplab/scattering/sigma.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "oplab/constants.hpp"
#include "oplab/error.hpp"
#include "oplab/parallel.hpp"
#include "oplab/toeplitz/symbol.hpp"
#include "oplab/witten/heat_trace.hpp"
#include "oplab/witten/profiles.hpp"

namespace oplab::scattering {

using constants::kPi;

namespace {

constexpr double kBranchTolerance = 1e-8;
constexpr double kMaxK = 1e5;

double max_dev(const Matrix2c& a, const Matrix2c& b) { return (a - b).cwiseAbs().maxCoeff(); }

Matrix2c nearest_unitary(const Matrix2c& m) {
  Eigen::JacobiSVD<Matrix2c> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

/// Orthonormal eigenvectors of a normal 2x2 matrix, as columns.
Matrix2c eigenbasis(const Matrix2c& m, Eigen::Vector2cd& values) {
  const cplx scalar = 0.5 * m.trace();
  if (max_dev(m, scalar * Matrix2c::Identity()) <= kBranchTolerance) {
    values << scalar, scalar;
    return Matrix2c::Identity();
  }
  Eigen::ComplexEigenSolver<Matrix2c> es(m);
  values = es.eigenvalues();
  Matrix2c u = es.eigenvectors();
  u.col(0).normalize();
  u.col(1) -= u.col(0).dot(u.col(1)) * u.col(0);
  u.col(1).normalize();
  return u;
}

/// Nearest admissible zero-energy limit: det exactly +1, or det exactly -1
/// with eigenvalues exactly +1 and -1.
Matrix2c project_limit(const Matrix2c& raw_unitary) {
  const cplx d = raw_unitary.determinant();
  if (std::abs(d + 1.0) < std::abs(d - 1.0)) {
    const Matrix2c m = raw_unitary / std::sqrt(-d);
    Eigen::Vector2cd ev;
    const Matrix2c u = eigenbasis(m, ev);
    Eigen::Vector2cd snapped;
    snapped << (ev(0).real() >= ev(1).real() ? 1.0 : -1.0), (ev(0).real() >= ev(1).real() ? -1.0 : 1.0);
    return u * snapped.asDiagonal() * u.adjoint();
  }
  const Matrix2c m = raw_unitary / std::sqrt(d);
  if (max_dev(m, Matrix2c::Identity()) <= constants::kIntegratorDriftLimit) return Matrix2c::Identity();
  return m;
}

std::vector<double> uniform_lambda(double lo, double hi, double step) {
  const int n = static_cast<int>(std::ceil((hi - lo) / step - 1e-9)) + 1;
  std::vector<double> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = lo + step * i;
  return out;
}

bool is_uniform(const std::vector<double>& x) {
  if (x.size() < 3) return true;
  const double step = x[1] - x[0];
  for (size_t i = 1; i + 1 < x.size(); ++i) {
    if (std::abs((x[i + 1] - x[i]) - step) > 1e-9 * std::max(1.0, std::abs(step))) return false;
  }
  return true;
}

}  // namespace

LineCurve exp_resample(const Potential& v, const ScatteringCurve& curve) {
  if (curve.k.size() < 3) throw DomainError("exp_resample: curve needs at least three samples");
  LineCurve out;
  for (double k : curve.k) out.lambda.push_back(2.0 * std::log(k));
  out.s = curve.s;
  if (!is_uniform(out.lambda)) {
    double step = out.lambda.back() - out.lambda.front();
    for (size_t i = 0; i + 1 < out.lambda.size(); ++i) step = std::min(step, out.lambda[i + 1] - out.lambda[i]);
    out.lambda = uniform_lambda(out.lambda.front(), out.lambda.back(), step);
    std::vector<double> k;
    for (double l : out.lambda) k.push_back(std::exp(0.5 * l));
    out.s = scattering_matrix(v, k).s;
    if (out.s.size() != out.lambda.size()) throw InconclusiveError("exp_resample: uniform grid too coarse");
  }

  const double step = out.lambda[1] - out.lambda[0];
  out.plus_residual = max_dev(out.s.back(), Matrix2c::Identity());
  while (out.plus_residual > constants::kLimitTolerance) {
    const double k_hi = std::exp(0.5 * out.lambda.back());
    if (2.0 * k_hi > kMaxK) {
      throw DomainError("exp_resample: S does not approach the identity at high energy within the k budget");
    }
    std::vector<double> lam;
    std::vector<double> k;
    for (double l = out.lambda.back() + step; l <= 2.0 * std::log(2.0 * k_hi) + 1e-12; l += step) {
      lam.push_back(l);
      k.push_back(std::exp(0.5 * l));
    }
    const auto ext = parallel_map(k, [&v](const double& kk) { return s_from_transfer(transfer_matrix(v, kk)); });
    out.lambda.insert(out.lambda.end(), lam.begin(), lam.end());
    out.s.insert(out.s.end(), ext.begin(), ext.end());
    out.plus_residual = max_dev(out.s.back(), Matrix2c::Identity());
  }
  out.s_plus_infinity = Matrix2c::Identity();

  // Linear extrapolation in k of the three smallest samples.
  double sx = 0.0, sxx = 0.0;
  Matrix2c sy = Matrix2c::Zero(), sxy = Matrix2c::Zero();
  for (int i = 0; i < 3; ++i) {
    const double k = std::exp(0.5 * out.lambda[static_cast<size_t>(i)]);
    sx += k;
    sxx += k * k;
    sy += out.s[static_cast<size_t>(i)];
    sxy += k * out.s[static_cast<size_t>(i)];
  }
  const Matrix2c slope = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
  const Matrix2c raw = (sy - slope * sx) / 3.0;
  out.s_minus_infinity = project_limit(nearest_unitary(raw));
  out.minus_snap_distance = max_dev(raw, out.s_minus_infinity);
  if (out.minus_snap_distance > constants::kLimitTolerance) {
    throw InconclusiveError("exp_resample: zero-energy limit is not near an admissible limit");
  }
  return out;
}

std::string to_string(SigmaBranch b) {
  switch (b) {
    case SigmaBranch::kTrivial:
      return "trivial";
    case SigmaBranch::kAntidiagonalLimit:
      return "antidiagonal-limit";
    case SigmaBranch::kGeneralUnitary:
      return "general-unitary";
  }
  return "unknown";
}

SigmaFactor::SigmaFactor(SigmaBranch branch, Matrix2c u, double alpha, double beta, double theta)
    : branch_(branch), u_(std::move(u)), alpha_(alpha), beta_(beta), theta_(theta) {}

Matrix2c SigmaFactor::operator()(double lambda) const {
  const double w = (0.5 * kPi - std::atan(lambda)) / kPi;
  Eigen::Vector2cd d;
  d << std::polar(1.0, alpha_ * w), std::polar(1.0, beta_ * w);
  return u_ * d.asDiagonal() * u_.adjoint();
}

Matrix2c SigmaFactor::minus_limit() const {
  Eigen::Vector2cd d;
  d << std::polar(1.0, alpha_), std::polar(1.0, beta_);
  return u_ * d.asDiagonal() * u_.adjoint();
}

Matrix2c SigmaFactor::generator(double lambda) const {
  const double dw = -1.0 / (kPi * (1.0 + lambda * lambda));
  Eigen::Vector2cd d;
  d << alpha_ * dw, beta_ * dw;
  return u_ * d.asDiagonal() * u_.adjoint();
}

SigmaFactor build_sigma(const Matrix2c& s) {
  if (max_dev(s.adjoint() * s, Matrix2c::Identity()) > kBranchTolerance) {
    throw DomainError("build_sigma: input is not unitary");
  }
  if (max_dev(s, Matrix2c::Identity()) <= kBranchTolerance) {
    return SigmaFactor(SigmaBranch::kTrivial, Matrix2c::Identity(), 0.0, 0.0, 0.0);
  }
  const cplx det = s.determinant();
  Eigen::Vector2cd ev;
  const Matrix2c u = eigenbasis(s, ev);
  if (std::abs(det + 1.0) <= kBranchTolerance) {
    if (max_dev(s, s.adjoint()) > kBranchTolerance) {
      throw DomainError("build_sigma: det = -1 but the eigenvalues are not +1 and -1");
    }
    Matrix2c ordered = u;
    if (ev(0).real() < ev(1).real()) {
      ordered.col(0) = u.col(1);
      ordered.col(1) = u.col(0);
    }
    return SigmaFactor(SigmaBranch::kAntidiagonalLimit, ordered, 0.0, -kPi, 0.0);
  }
  if (std::abs(det - 1.0) <= kBranchTolerance) {
    // S = u diag(e^{-i theta}, e^{i theta}) u^* with theta in [0, 2 pi).
    double theta = -std::arg(ev(0));
    if (theta < 0.0) theta += 2.0 * kPi;
    return SigmaFactor(SigmaBranch::kGeneralUnitary, u, -theta, theta, theta);
  }
  throw DomainError("build_sigma: det S(-inf) is neither +1 nor -1");
}

double witten_index_sigma(const SigmaFactor& sigma) {
  if (sigma.branch() == SigmaBranch::kTrivial) return 0.0;
  const witten::PerturbationProfile phi(
      [sigma](double lambda) -> DenseMatrix { return sigma.generator(lambda); }, 2, 1.0, "sigma-generator");
  const double w = witten::witten_index_closed_form(phi);
  if (std::min(std::abs(w), std::abs(w - 0.5)) > 1e-3) {
    throw VerificationError("witten_index_sigma: value " + std::to_string(w) + " is not 0 or 1/2");
  }
  return w;
}

CorrectedIndex corrected_index(const LineCurve& curve, const SigmaFactor& sigma) {
  const Matrix2c at_minus = curve.s_minus_infinity * sigma.minus_limit().adjoint();
  const Matrix2c at_plus = curve.s_plus_infinity * sigma.plus_limit().adjoint();
  if (max_dev(at_minus, Matrix2c::Identity()) > constants::kLimitTolerance ||
      max_dev(at_plus, Matrix2c::Identity()) > constants::kLimitTolerance) {
    throw DomainError("corrected_index: S sigma* does not tend to the identity at both ends (sigma mismatch)");
  }
  if (curve.plus_residual > constants::kLimitTolerance) {
    throw DomainError("corrected_index: curve does not reach the high-energy limit");
  }

  std::vector<cplx> loop;
  std::vector<cplx> det_s;
  loop.push_back(at_minus.determinant());
  det_s.push_back(curve.s_minus_infinity.determinant());
  for (size_t i = 0; i < curve.lambda.size(); ++i) {
    loop.push_back((curve.s[i] * sigma(curve.lambda[i]).adjoint()).determinant());
    det_s.push_back(curve.s[i].determinant());
  }
  loop.push_back(at_plus.determinant());
  det_s.push_back(cplx{1.0, 0.0});

  CorrectedIndex out;
  out.winding = toeplitz::winding_of_samples(loop);
  out.fredholm_index = constants::kToeplitzIndexSign * static_cast<int>(std::lround(out.winding));
  out.det_phase.push_back(0.0);
  for (size_t i = 1; i < loop.size(); ++i) out.det_phase.push_back(out.det_phase.back() + std::arg(loop[i] / loop[i - 1]));

  // The integrand tr(S* dS/dlambda) = i d(arg det S)/dlambda telescopes along
  // the unwrapped phase.
  double phase = 0.0;
  for (size_t i = 1; i < det_s.size(); ++i) {
    const double step = std::arg(det_s[i] / det_s[i - 1]);
    if (std::abs(step) > constants::kUnwrapJumpLimit) {
      throw InconclusiveError("corrected_index: det S undersampled along lambda");
    }
    phase += step;
  }
  out.w_s = -phase / (2.0 * kPi);
  out.w_sigma = witten_index_sigma(sigma);
  out.residual = std::abs(out.fredholm_index - out.w_s - out.w_sigma);
  out.accepted = out.residual <= constants::kLevinsonTolerance;
  return out;
}

}  // namespace oplab::scattering
