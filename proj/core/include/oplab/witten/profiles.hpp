#pragma once

// Perturbation profiles Phi(x) and connection functions theta(t).

#include <functional>
#include <optional>
#include <string>

#include "oplab/grid.hpp"
#include "oplab/linalg.hpp"
#include "oplab/witten/lattice.hpp"

namespace oplab::witten {

/// x -> mu * Phi0(x), a Hermitian d x d matrix function.
///
/// The decay certificate is sup |Phi(x)| (1 + x^2) over a probe grid reaching
/// |x| = 1e6, multiplied by a 5% safety margin. It is absent when that
/// supremum exceeds 1e6 (no integrable decay).
class PerturbationProfile {
 public:
  using Evaluator = std::function<DenseMatrix(double)>;
  using ScalarEvaluator = std::function<double(double)>;

  PerturbationProfile(Evaluator unit_profile, int components, double mu, std::string tag);

  static PerturbationProfile scalar(ScalarEvaluator f, double mu, std::string tag);
  /// mu / (1 + x^2).
  static PerturbationProfile lorentzian(double mu);
  static PerturbationProfile constant(double value);
  static PerturbationProfile zero(int components = 1);

  DenseMatrix operator()(double x) const;
  double trace_at(double x) const;
  int components() const noexcept { return components_; }
  double mu() const noexcept { return mu_; }
  const std::string& tag() const noexcept { return tag_; }
  std::optional<double> decay_certificate() const noexcept { return certificate_; }
  bool is_zero() const noexcept { return zero_; }

  PerturbationProfile scaled(double factor) const;
  PerturbationProfile operator+(const PerturbationProfile& rhs) const;

  /// Block-diagonal multiplication operator on the grid.
  LatticeOperator on_grid(const GridSpec& grid) const;

 private:
  void certify();

  Evaluator unit_;
  int components_;
  double mu_;
  std::string tag_;
  std::optional<double> certificate_;
  bool zero_ = false;
};

/// Monotone connection function t -> (0, 1) with limits 0 at -inf and 1 at +inf.
class ThetaProfile {
 public:
  ThetaProfile(std::function<double(double)> evaluator, std::string tag);

  /// (1 + tanh t) / 2.
  static ThetaProfile logistic();
  /// 1/2 + arctan(sinh t) / pi.
  static ThetaProfile gudermannian();

  double operator()(double t) const { return f_(t); }
  const std::string& tag() const noexcept { return tag_; }

  /// Throws DomainError unless theta is non-decreasing on the grid and within
  /// kThetaLimitTolerance of 0 and 1 at the two ends.
  void check_on(const GridSpec& t_grid) const;

 private:
  std::function<double(double)> f_;
  std::string tag_;
};

}  // namespace oplab::witten
