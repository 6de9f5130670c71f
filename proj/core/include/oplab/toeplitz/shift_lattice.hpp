#pragma once

// Exact operator algebra on the half-integer Fourier lattice.
//
// Sites are stored doubled: the basis vector e_n of the periodic space sits at
// 2n and e_{n+1/2} of the antiperiodic space at 2n+1, so every index is an
// integer and products of 0/1 coefficients stay exact.

#include <compare>
#include <map>
#include <span>
#include <vector>

#include "oplab/linalg.hpp"

namespace oplab::toeplitz {

/// A half-integer n stored as 2n.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
  static constexpr HalfInteger from_int(int n) { return HalfInteger(2 * n); }

  constexpr int twice() const noexcept { return twice_; }
  constexpr double value() const noexcept { return 0.5 * twice_; }
  constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }

  constexpr auto operator<=>(const HalfInteger&) const = default;

 private:
  constexpr explicit HalfInteger(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// Which doubled sites a space occupies: even (e_n), odd (e_{n+1/2}) or both.
enum class Lattice { kInteger, kHalfInteger, kBoth };

bool on_lattice(Lattice lattice, int site) noexcept;

/// Inclusive range of doubled sites.
struct LatticeWindow {
  int lo = 0;
  int hi = 0;

  bool contains(int site) const noexcept { return site >= lo && site <= hi; }
  int size() const noexcept { return hi - lo + 1; }
  /// Sites of `lattice` inside the window, ascending.
  std::vector<int> sites(Lattice lattice) const;
  bool operator==(const LatticeWindow&) const = default;
};

/// Operator assembled from site-dependent shifts:
///   (A f)[j + d] = sum_d c_d[j] f[j]
/// for doubled offsets d. Sites outside the window are dropped, so products
/// are only exact away from the window edges.
class ShiftLatticeOperator {
 public:
  ShiftLatticeOperator(LatticeWindow window, Lattice domain, Lattice codomain);

  static ShiftLatticeOperator identity(LatticeWindow window, Lattice lattice);
  /// Projection onto the sites j >= 0 of `lattice`.
  static ShiftLatticeOperator hardy_projection(LatticeWindow window, Lattice lattice);
  /// Constant-coefficient (Laurent) operator sum_d band[d] S^d acting on the
  /// sites of `domain`.
  static ShiftLatticeOperator laurent(LatticeWindow window, Lattice domain, Lattice codomain,
                                      const std::map<int, cplx>& band);

  const LatticeWindow& window() const noexcept { return window_; }
  Lattice domain() const noexcept { return domain_; }
  Lattice codomain() const noexcept { return codomain_; }
  /// Offset -> coefficient per source site (indexed by site - window.lo).
  const std::map<int, std::vector<cplx>>& bands() const noexcept { return bands_; }
  int bandwidth() const noexcept;

  /// Matrix element <e_row, A e_col>.
  cplx entry(int row_site, int col_site) const;
  void set(int row_site, int col_site, cplx value);

  ShiftLatticeOperator adjoint() const;
  /// Composition: (*this) after `rhs`.
  ShiftLatticeOperator operator*(const ShiftLatticeOperator& rhs) const;
  ShiftLatticeOperator operator+(const ShiftLatticeOperator& rhs) const;
  ShiftLatticeOperator operator-(const ShiftLatticeOperator& rhs) const;
  ShiftLatticeOperator operator*(cplx s) const;

  DenseMatrix to_dense(std::span<const int> row_sites, std::span<const int> col_sites) const;

  /// Drops bands whose coefficients are all exactly zero.
  void prune();

 private:
  std::vector<cplx>& band(int offset);
  void require_same_window(const ShiftLatticeOperator& rhs) const;

  LatticeWindow window_;
  Lattice domain_;
  Lattice codomain_;
  std::map<int, std::vector<cplx>> bands_;
};

}  // namespace oplab::toeplitz
