#pragma once

// Dense complex linear algebra shared by the Toeplitz, Witten and
// scattering modules. Eigen provides storage and products; the
// eigen- and singular-value kernels are LAPACK (zheevd / zgesdd).

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace oplab {

using cplx = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest absolute entry, 0 for an empty matrix.
double max_abs(const DenseMatrix& m);

/// A square matrix certified Hermitian on construction.
class HermitianMatrix {
 public:
  /// Throws DomainError if `m` is not square or if
  /// max|M - M^H| > kHermitianTolerance * max|M|. The stored matrix is the
  /// exact Hermitian part (M + M^H)/2.
  explicit HermitianMatrix(DenseMatrix m);

  static HermitianMatrix zero(Eigen::Index n);
  static HermitianMatrix identity(Eigen::Index n);
  static HermitianMatrix diagonal(const RealVector& d);

  const DenseMatrix& matrix() const noexcept { return m_; }
  Eigen::Index size() const noexcept { return m_.rows(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;

 private:
  struct Trusted {};
  HermitianMatrix(DenseMatrix m, Trusted) : m_(std::move(m)) {}
  DenseMatrix m_;
};

struct EigenSystem {
  RealVector values;    // ascending
  DenseMatrix vectors;  // unitary, columns are eigenvectors
};

/// Hermitian eigendecomposition. Throws NonConvergenceError (carrying the
/// LAPACK info value) when the solver fails.
EigenSystem herm_eig(const HermitianMatrix& m);

/// max|M - V diag(w) V^H| / max|M|.
double reconstruction_residual(const HermitianMatrix& m, const EigenSystem& es);

/// exp(-t M) = V exp(-t w) V^H. Requires t > 0.
DenseMatrix heat_operator(const HermitianMatrix& m, double t);
DenseMatrix heat_operator(const EigenSystem& es, double t);

/// Trace of exp(-t M) restricted to the rows in `window` (all rows when empty):
/// sum_k exp(-t w_k) sum_{i in window} |V_ik|^2. Computed from a cached
/// eigensystem so many t values cost one decomposition.
double windowed_heat_trace(const EigenSystem& es, double t, std::span<const Eigen::Index> window = {});

/// Sum of the diagonal. Throws DomainError for non-square input.
cplx trace(const DenseMatrix& m);

/// Singular values, descending, length min(rows, cols).
std::vector<double> singular_values(const DenseMatrix& m);

/// Kronecker product a (x) b.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace oplab
