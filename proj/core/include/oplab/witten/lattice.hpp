#pragma once

// Grid operators for d-component functions on a periodic 1D grid. Vectors
// are ordered grid-point major: index = j * d + component.

#include "oplab/grid.hpp"
#include "oplab/linalg.hpp"

namespace oplab::witten {

class LatticeOperator {
 public:
  /// Throws DomainError on a size mismatch, or when `hermitian` is set and
  /// the matrix fails the Hermitian check.
  LatticeOperator(DenseMatrix matrix, GridSpec grid, int components, bool hermitian);

  const DenseMatrix& matrix() const noexcept { return matrix_; }
  const GridSpec& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }
  bool hermitian() const noexcept { return hermitian_; }
  /// Throws DomainError unless flagged Hermitian.
  HermitianMatrix as_hermitian() const;

  LatticeOperator operator+(const LatticeOperator& rhs) const;
  LatticeOperator operator*(double s) const;

 private:
  DenseMatrix matrix_;
  GridSpec grid_;
  int components_;
  bool hermitian_;
};

/// Fourier spectral d/dx on the periodic grid, frequencies k pi / L for
/// k = -n/2 .. n/2-1. Anti-Hermitian; scalar.
DenseMatrix spectral_derivative(const GridSpec& grid);

/// -i d/dx (x) 1_d, Hermitian.
LatticeOperator discretize_dirac(const GridSpec& grid, int components = 1);

}  // namespace oplab::witten
