#pragma once

// Symbols on the circle and on the real line, their Fourier coefficients and
// winding numbers.

#include <functional>
#include <map>
#include <span>

#include "oplab/linalg.hpp"
#include "oplab/toeplitz/shift_lattice.hpp"

namespace oplab::toeplitz {

/// Complex function on [-pi, pi] together with the lattice character it
/// carries: character 0 maps e_n to integer modes, character 1/2 shifts
/// onto the half-integer lattice and must be antiperiodic.
class CircleSymbol {
 public:
  using Evaluator = std::function<cplx(double)>;

  CircleSymbol(Evaluator evaluator, HalfInteger character, int sample_count = 1024);

  /// e^{ik theta}.
  static CircleSymbol power(int k, int sample_count = 1024);
  /// e^{i theta/2}, character 1/2.
  static CircleSymbol half_power(int sample_count = 1024);

  cplx operator()(double theta) const { return evaluator_(theta); }
  HalfInteger character() const noexcept { return character_; }
  int sample_count() const noexcept { return sample_count_; }

  /// Pointwise product; characters add modulo 1.
  CircleSymbol operator*(const CircleSymbol& rhs) const;

  /// Coefficients keyed by doubled frequency: a = sum_k c_k e^{i k theta / 2}.
  /// Entries with magnitude below `drop_tolerance` are omitted.
  std::map<int, cplx> fourier_coefficients(double drop_tolerance = 1e-14) const;

 private:
  Evaluator evaluator_;
  HalfInteger character_;
  int sample_count_;
};

/// Complex function on the real line with equal limits at both ends.
class LineSymbol {
 public:
  using Evaluator = std::function<cplx(double)>;

  LineSymbol(Evaluator evaluator, cplx limit_at_infinity, int sample_count = 4096);
  /// Estimates the limit by evaluating far out on both sides; throws
  /// DomainError when the two ends disagree.
  static LineSymbol from_function(Evaluator evaluator, int sample_count = 4096);

  cplx operator()(double x) const { return evaluator_(x); }
  cplx limit() const noexcept { return limit_; }
  int sample_count() const noexcept { return sample_count_; }

 private:
  Evaluator evaluator_;
  cplx limit_;
  int sample_count_;
};

/// Unwrapped argument change along a closed sample loop divided by 2 pi.
/// The first and last sample must coincide in value. Throws DomainError when a
/// sample is smaller than the vanishing tolerance and InconclusiveError on an
/// unwrap jump exceeding the jump limit.
double winding_of_samples(std::span<const cplx> loop);

/// Integer winding, verified against a run at twice the sample count.
int winding_number(const CircleSymbol& symbol);
int winding_number(const LineSymbol& symbol);

}  // namespace oplab::toeplitz
