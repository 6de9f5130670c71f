#include "oplab/witten/profiles.hpp"

#include <cmath>

#include "oplab/constants.hpp"
#include "oplab/error.hpp"

namespace oplab::witten {

namespace {

constexpr double kCertificateLimit = 1e6;
constexpr double kCertificateMargin = 1.05;

double matrix_norm(const DenseMatrix& m) {
  if (m.size() == 1) return std::abs(m(0, 0));
  const auto s = singular_values(m);
  return s.empty() ? 0.0 : s.front();
}

}  // namespace

PerturbationProfile::PerturbationProfile(Evaluator unit_profile, int components, double mu, std::string tag)
    : unit_(std::move(unit_profile)), components_(components), mu_(mu), tag_(std::move(tag)) {
  if (components < 1 || components > 4) throw DomainError("PerturbationProfile: components must be in 1..4");
  if (!std::isfinite(mu)) throw DomainError("PerturbationProfile: mu must be finite");
  certify();
}

void PerturbationProfile::certify() {
  // Probe x = sinh(u) for |u| <= 14.5, i.e. |x| up to about 1e6.
  constexpr int kProbes = 4001;
  constexpr double kU = 14.5;
  double sup = 0.0;
  bool all_zero = true;
  for (int i = 0; i < kProbes; ++i) {
    const double x = std::sinh(-kU + 2.0 * kU * i / (kProbes - 1));
    const DenseMatrix v = (*this)(x);
    if (v.rows() != components_ || v.cols() != components_) {
      throw DomainError("PerturbationProfile: evaluator returned a matrix of the wrong size");
    }
    const double scale = max_abs(v);
    if (max_abs(v - v.adjoint()) > constants::kHermitianTolerance * std::max(scale, 1.0)) {
      throw DomainError("PerturbationProfile: profile value is not Hermitian");
    }
    if (scale != 0.0) all_zero = false;
    sup = std::max(sup, matrix_norm(v) * (1.0 + x * x));
  }
  zero_ = all_zero;
  if (sup <= kCertificateLimit) certificate_ = kCertificateMargin * sup;
}

PerturbationProfile PerturbationProfile::scalar(ScalarEvaluator f, double mu, std::string tag) {
  return PerturbationProfile([f = std::move(f)](double x) { return DenseMatrix::Constant(1, 1, f(x)); }, 1, mu,
                             std::move(tag));
}

PerturbationProfile PerturbationProfile::lorentzian(double mu) {
  return scalar([](double x) { return 1.0 / (1.0 + x * x); }, mu, "lorentzian");
}

PerturbationProfile PerturbationProfile::constant(double value) {
  return scalar([](double) { return 1.0; }, value, "constant");
}

PerturbationProfile PerturbationProfile::zero(int components) {
  return PerturbationProfile([components](double) { return DenseMatrix::Zero(components, components); }, components,
                             0.0, "zero");
}

DenseMatrix PerturbationProfile::operator()(double x) const { return mu_ * unit_(x); }

double PerturbationProfile::trace_at(double x) const { return (*this)(x).trace().real(); }

PerturbationProfile PerturbationProfile::scaled(double factor) const {
  PerturbationProfile out = *this;
  out.mu_ *= factor;
  out.certify();
  return out;
}

PerturbationProfile PerturbationProfile::operator+(const PerturbationProfile& rhs) const {
  if (rhs.components_ != components_) throw DomainError("PerturbationProfile: component mismatch in sum");
  auto f = unit_;
  auto g = rhs.unit_;
  const double a = mu_;
  const double b = rhs.mu_;
  return PerturbationProfile([f, g, a, b](double x) -> DenseMatrix { return a * f(x) + b * g(x); }, components_, 1.0,
                             tag_ + "+" + rhs.tag_);
}

LatticeOperator PerturbationProfile::on_grid(const GridSpec& grid) const {
  const int n = grid.points();
  const int d = components_;
  DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(n) * d, static_cast<Eigen::Index>(n) * d);
  for (int j = 0; j < n; ++j) m.block(j * d, j * d, d, d) = (*this)(grid.node(j));
  return LatticeOperator(std::move(m), grid, d, true);
}

ThetaProfile::ThetaProfile(std::function<double(double)> evaluator, std::string tag)
    : f_(std::move(evaluator)), tag_(std::move(tag)) {}

ThetaProfile ThetaProfile::logistic() {
  return ThetaProfile([](double t) { return 0.5 * (1.0 + std::tanh(t)); }, "logistic");
}

ThetaProfile ThetaProfile::gudermannian() {
  return ThetaProfile([](double t) { return 0.5 + std::atan(std::sinh(t)) / constants::kPi; }, "gudermannian");
}

void ThetaProfile::check_on(const GridSpec& t_grid) const {
  const int n = t_grid.points();
  double prev = f_(t_grid.node(0));
  if (prev > constants::kThetaLimitTolerance) {
    throw DomainError("ThetaProfile: theta not within tolerance of 0 at the left end of the t-grid");
  }
  for (int j = 1; j < n; ++j) {
    const double v = f_(t_grid.node(j));
    if (v < prev) throw DomainError("ThetaProfile: theta is not monotone on the t-grid");
    prev = v;
  }
  if (1.0 - prev > constants::kThetaLimitTolerance) {
    throw DomainError("ThetaProfile: theta not within tolerance of 1 at the right end of the t-grid");
  }
}

}  // namespace oplab::witten
