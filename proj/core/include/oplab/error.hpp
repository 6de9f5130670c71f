#pragma once

#include <stdexcept>
#include <string>

namespace oplab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (wrong shape, out-of-range
/// parameter, non-unitary input, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure ran but could not certify its answer: refinement
/// instability, guard-band ambiguity, defect support touching the window.
/// Callers are expected to refine their inputs and retry.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

/// An iterative kernel failed outright.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, int diagnostic)
      : Error(what + " (diagnostic " + std::to_string(diagnostic) + ")"),
        diagnostic_(diagnostic) {}

  /// Iteration count or LAPACK info value reported by the failing kernel.
  int diagnostic() const noexcept { return diagnostic_; }

 private:
  int diagnostic_;
};

/// A computed quantity failed an internal consistency check it is
/// guaranteed to satisfy when the inputs are valid.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace oplab
