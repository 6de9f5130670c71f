#include "oplab/witten/lattice.hpp"

#include <unsupported/Eigen/FFT>

#include "oplab/constants.hpp"
#include "oplab/error.hpp"

namespace oplab::witten {

LatticeOperator::LatticeOperator(DenseMatrix matrix, GridSpec grid, int components, bool hermitian)
    : matrix_(std::move(matrix)), grid_(grid), components_(components), hermitian_(hermitian) {
  if (components < 1 || components > 4) throw DomainError("LatticeOperator: components must be in 1..4");
  const Eigen::Index n = static_cast<Eigen::Index>(grid.points()) * components;
  if (matrix_.rows() != n || matrix_.cols() != n) throw DomainError("LatticeOperator: matrix size does not match grid");
  if (hermitian) matrix_ = HermitianMatrix(std::move(matrix_)).matrix();
}

HermitianMatrix LatticeOperator::as_hermitian() const {
  if (!hermitian_) throw DomainError("LatticeOperator: operator is not flagged Hermitian");
  return HermitianMatrix(matrix_);
}

LatticeOperator LatticeOperator::operator+(const LatticeOperator& rhs) const {
  if (!(rhs.grid_ == grid_) || rhs.components_ != components_) {
    throw DomainError("LatticeOperator: grid mismatch in sum");
  }
  return LatticeOperator(matrix_ + rhs.matrix_, grid_, components_, hermitian_ && rhs.hermitian_);
}

LatticeOperator LatticeOperator::operator*(double s) const {
  return LatticeOperator(matrix_ * s, grid_, components_, hermitian_);
}

DenseMatrix spectral_derivative(const GridSpec& grid) {
  const int n = grid.points();
  std::vector<cplx> symbol(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const int k = j < n / 2 ? j : j - n;
    symbol[static_cast<size_t>(j)] = cplx{0.0, k * constants::kPi / grid.half_width()};
  }
  Eigen::FFT<double> fft;
  std::vector<cplx> column;
  fft.inv(column, symbol);  // includes the 1/n factor
  DenseMatrix d(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) d(r, c) = column[static_cast<size_t>(((r - c) % n + n) % n)];
  }
  return d;
}

LatticeOperator discretize_dirac(const GridSpec& grid, int components) {
  DenseMatrix a = cplx{0.0, -1.0} * spectral_derivative(grid);
  if (components > 1) a = kron(a, DenseMatrix::Identity(components, components));
  return LatticeOperator(std::move(a), grid, components, true);
}

}  // namespace oplab::witten
