#include "oplab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "oplab/constants.hpp"
#include "oplab/error.hpp"

namespace oplab {

double max_abs(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(DenseMatrix m) {
  if (m.rows() != m.cols()) {
    throw DomainError("HermitianMatrix: matrix is not square");
  }
  const double scale = max_abs(m);
  const double asym = max_abs(m - m.adjoint());
  if (asym > constants::kHermitianTolerance * scale) {
    std::ostringstream os;
    os << "HermitianMatrix: max|M - M^H| = " << asym << " exceeds tolerance (max|M| = " << scale << ")";
    throw DomainError(os.str());
  }
  m_ = (m + m.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index n) { return {DenseMatrix::Zero(n, n), Trusted{}}; }

HermitianMatrix HermitianMatrix::identity(Eigen::Index n) { return {DenseMatrix::Identity(n, n), Trusted{}}; }

HermitianMatrix HermitianMatrix::diagonal(const RealVector& d) {
  return {d.cast<cplx>().asDiagonal().toDenseMatrix(), Trusted{}};
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  if (o.size() != size()) throw DomainError("HermitianMatrix: size mismatch in sum");
  return {m_ + o.m_, Trusted{}};
}

HermitianMatrix HermitianMatrix::operator*(double s) const { return {m_ * s, Trusted{}}; }

EigenSystem herm_eig(const HermitianMatrix& m) {
  const auto n = static_cast<lapack_int>(m.size());
  EigenSystem es;
  es.vectors = m.matrix();  // column-major, overwritten with eigenvectors
  es.values.resize(n);
  if (n == 0) return es;
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'U', n, es.vectors.data(), n, es.values.data());
  if (info != 0) {
    throw NonConvergenceError("herm_eig: zheevd failed", static_cast<int>(info));
  }
  return es;
}

double reconstruction_residual(const HermitianMatrix& m, const EigenSystem& es) {
  const DenseMatrix rebuilt = es.vectors * es.values.cast<cplx>().asDiagonal() * es.vectors.adjoint();
  const double scale = std::max(max_abs(m.matrix()), 1e-300);
  return max_abs(m.matrix() - rebuilt) / scale;
}

DenseMatrix heat_operator(const EigenSystem& es, double t) {
  if (!(t > 0.0)) throw DomainError("heat_operator: t must be positive");
  const ComplexVector decay = (-t * es.values.array()).exp().cast<cplx>().matrix();
  return es.vectors * decay.asDiagonal() * es.vectors.adjoint();
}

DenseMatrix heat_operator(const HermitianMatrix& m, double t) {
  if (!(t > 0.0)) throw DomainError("heat_operator: t must be positive");
  return heat_operator(herm_eig(m), t);
}

double windowed_heat_trace(const EigenSystem& es, double t, std::span<const Eigen::Index> window) {
  if (!(t > 0.0)) throw DomainError("windowed_heat_trace: t must be positive");
  const Eigen::Index n = es.values.size();
  RealVector weight(n);
  if (window.empty()) {
    weight.setOnes();
  } else {
    weight.setZero();
    for (Eigen::Index i : window) weight += es.vectors.row(i).cwiseAbs2().transpose();
  }
  return ((-t * es.values.array()).exp() * weight.array()).sum();
}

cplx trace(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("trace: matrix is not square");
  return m.trace();
}

std::vector<double> singular_values(const DenseMatrix& m) {
  const auto rows = static_cast<lapack_int>(m.rows());
  const auto cols = static_cast<lapack_int>(m.cols());
  const lapack_int k = std::min(rows, cols);
  std::vector<double> s(static_cast<size_t>(k));
  if (k == 0) return s;
  DenseMatrix work = m;
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, work.data(), rows, s.data(),
                                         nullptr, 1, nullptr, 1);
  if (info != 0) throw NonConvergenceError("singular_values: zgesdd failed", static_cast<int>(info));
  return s;  // LAPACK returns them descending
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace oplab
