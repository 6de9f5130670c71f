#pragma once

// Fredholm index of generalised Toeplitz operators by three routes: the
// trace of exact parametrix defects, kernel counting on truncations, and the
// winding number of the symbol.

#include <optional>
#include <vector>

#include "oplab/linalg.hpp"
#include "oplab/toeplitz/shift_lattice.hpp"
#include "oplab/toeplitz/symbol.hpp"

namespace oplab::toeplitz {

/// A Toeplitz-type operator T = Q A Q with parametrix T' = Q A' Q, all on the
/// same padded window.
struct ToeplitzPair {
  ShiftLatticeOperator t;
  ShiftLatticeOperator parametrix;
  ShiftLatticeOperator q;
};

/// Window |j| <= 3 * 2n (doubled sites) around an interior |j| <= 2n.
LatticeWindow padded_window(int n_interior);
LatticeWindow interior_window(int n_interior);

/// QMQ and QM*Q on H1 (+) H2, with M the half-shift e_n -> e_{n+1/2} -> e_{n+1}.
ToeplitzPair build_half_shift_example(int n_interior);

/// Compression of a scalar symbol on its own lattice (character 0 only) with
/// parametrix given by a second symbol.
ToeplitzPair classical_toeplitz(const CircleSymbol& symbol, const CircleSymbol& parametrix_symbol,
                                int n_interior);

/// Q on both lattices, with T = T' = Q.
ToeplitzPair identity_pair(int n_interior);

struct DefectOperators {
  std::vector<int> sites;  ///< interior sites of the Toeplitz space
  DenseMatrix left;        ///< T T' - Q
  DenseMatrix right;       ///< T' T - Q
};

/// Throws InconclusiveError when a defect reaches the outer sixth of the
/// padded window, i.e. truncation leakage could be visible.
DefectOperators defect_operators(const ToeplitzPair& pair, int n_interior);

struct KernelCounts {
  int kernel = 0;
  int cokernel = 0;
  int index() const noexcept { return kernel - cokernel; }
  bool operator==(const KernelCounts&) const = default;
};

struct IndexReport {
  cplx fedosov_value{};
  std::optional<KernelCounts> svd;
  std::optional<int> winding;
  int verdict = 0;
  bool certain = false;
};

/// tr(TT' - Q) - tr(T'T - Q) on the interior.
IndexReport fedosov_index(const ToeplitzPair& pair, int n_interior);

/// Singular values below `tol` of a truncation of T and of T^dagger.
KernelCounts count_kernels(const DenseMatrix& t_truncation, const DenseMatrix& adjoint_truncation, double tol);

/// Kernel counts on truncations with `size` columns and `size + guard` rows
/// (sites >= 0), repeated at twice the size; disagreement throws
/// InconclusiveError.
KernelCounts svd_index(const ShiftLatticeOperator& t, int size, int guard, double tol);

/// Fills the available routes and checks that they agree. The winding route
/// uses index = kToeplitzIndexSign * winding.
IndexReport combine_routes(const IndexReport& fedosov, std::optional<KernelCounts> svd, std::optional<int> winding);

}  // namespace oplab::toeplitz
