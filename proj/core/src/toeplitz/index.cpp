#include "oplab/toeplitz/index.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oplab/constants.hpp"
#include "oplab/error.hpp"

namespace oplab::toeplitz {

namespace {

constexpr double kDefectZero = 1e-14;

void require_interior(int n_interior) {
  if (n_interior < 4) throw DomainError("toeplitz: n_interior must be at least 4");
}

std::vector<int> nonnegative_sites(const LatticeWindow& w, Lattice lattice, int hi) {
  std::vector<int> out;
  for (int j = std::max(0, w.lo); j <= std::min(hi, w.hi); ++j) {
    if (on_lattice(lattice, j)) out.push_back(j);
  }
  return out;
}

std::vector<int> first_sites(const LatticeWindow& w, Lattice lattice, int count) {
  std::vector<int> out;
  for (int j = std::max(0, w.lo); j <= w.hi && static_cast<int>(out.size()) < count; ++j) {
    if (on_lattice(lattice, j)) out.push_back(j);
  }
  if (static_cast<int>(out.size()) < count) {
    throw DomainError("svd_index: operator window too small for the requested truncation");
  }
  return out;
}

ToeplitzPair compress(const ShiftLatticeOperator& a, const ShiftLatticeOperator& a_prime, Lattice lattice) {
  const auto q = ShiftLatticeOperator::hardy_projection(a.window(), lattice);
  return {q * a * q, q * a_prime * q, q};
}

KernelCounts counts_at(const ShiftLatticeOperator& t, const ShiftLatticeOperator& t_adj, int size, int guard,
                       double tol) {
  const auto& w = t.window();
  const auto cols = first_sites(w, t.domain(), size);
  const auto rows = first_sites(w, t.codomain(), size + guard);
  const auto adj_cols = first_sites(w, t.codomain(), size);
  const auto adj_rows = first_sites(w, t.domain(), size + guard);
  return count_kernels(t.to_dense(rows, cols), t_adj.to_dense(adj_rows, adj_cols), tol);
}

}  // namespace

LatticeWindow padded_window(int n_interior) {
  require_interior(n_interior);
  return {-6 * n_interior, 6 * n_interior};
}

LatticeWindow interior_window(int n_interior) {
  require_interior(n_interior);
  return {-2 * n_interior, 2 * n_interior};
}

ToeplitzPair build_half_shift_example(int n_interior) {
  const auto w = padded_window(n_interior);
  // Multiplication by e^{i theta/2} moves every doubled site up by one.
  const auto m = ShiftLatticeOperator::laurent(w, Lattice::kBoth, Lattice::kBoth, {{1, cplx{1.0, 0.0}}});
  return compress(m, m.adjoint(), Lattice::kBoth);
}

ToeplitzPair classical_toeplitz(const CircleSymbol& symbol, const CircleSymbol& parametrix_symbol, int n_interior) {
  if (!symbol.character().is_integer() || !parametrix_symbol.character().is_integer()) {
    throw DomainError("classical_toeplitz: symbols must have character 0");
  }
  const auto w = padded_window(n_interior);
  const auto band = symbol.fourier_coefficients();
  const auto band_prime = parametrix_symbol.fourier_coefficients();
  const auto reach = [](const std::map<int, cplx>& b) {
    int r = 0;
    for (const auto& [d, c] : b) r = std::max(r, std::abs(d));
    return r;
  };
  if (std::max(reach(band), reach(band_prime)) >= 2 * n_interior) {
    throw DomainError("classical_toeplitz: symbol bandwidth exceeds the interior window (sizing)");
  }
  const auto a = ShiftLatticeOperator::laurent(w, Lattice::kInteger, Lattice::kInteger, band);
  const auto a_prime = ShiftLatticeOperator::laurent(w, Lattice::kInteger, Lattice::kInteger, band_prime);
  return compress(a, a_prime, Lattice::kInteger);
}

ToeplitzPair identity_pair(int n_interior) {
  const auto w = padded_window(n_interior);
  const auto q = ShiftLatticeOperator::hardy_projection(w, Lattice::kBoth);
  return {q, q, q};
}

DefectOperators defect_operators(const ToeplitzPair& pair, int n_interior) {
  require_interior(n_interior);
  const auto& w = pair.q.window();
  if (w.hi < 6 * n_interior) throw DomainError("defect_operators: window smaller than 3x the interior");
  const Lattice lattice = pair.q.domain();
  const auto left = pair.t * pair.parametrix - pair.q;
  const auto right = pair.parametrix * pair.t - pair.q;

  // Defect entries between the interior edge and twice that radius mean leakage.
  const auto guard_sites = nonnegative_sites(w, lattice, 4 * n_interior);
  const int edge = 2 * n_interior;
  for (const auto* d : {&left, &right}) {
    for (int r : guard_sites) {
      for (int c : guard_sites) {
        if ((r >= edge || c >= edge) && std::abs(d->entry(r, c)) > kDefectZero) {
          throw InconclusiveError("fedosov_index: defect support reaches the interior boundary; enlarge padding");
        }
      }
    }
  }
  DefectOperators out;
  out.sites = nonnegative_sites(w, lattice, edge);
  out.left = left.to_dense(out.sites, out.sites);
  out.right = right.to_dense(out.sites, out.sites);
  return out;
}

IndexReport fedosov_index(const ToeplitzPair& pair, int n_interior) {
  const auto d = defect_operators(pair, n_interior);
  IndexReport report;
  report.fedosov_value = trace(d.left) - trace(d.right);
  report.verdict = static_cast<int>(std::lround(report.fedosov_value.real()));
  report.certain = std::abs(report.fedosov_value - cplx(report.verdict, 0.0)) <= 1e-10;
  return report;
}

KernelCounts count_kernels(const DenseMatrix& t_truncation, const DenseMatrix& adjoint_truncation, double tol) {
  const auto small = [tol](const DenseMatrix& m) {
    const auto s = singular_values(m);
    return static_cast<int>(std::count_if(s.begin(), s.end(), [tol](double v) { return v < tol; }));
  };
  return {small(t_truncation), small(adjoint_truncation)};
}

KernelCounts svd_index(const ShiftLatticeOperator& t, int size, int guard, double tol) {
  if (guard < 1 || size < 4 * guard) throw DomainError("svd_index: truncation size must be at least 4x the guard band");
  if (guard <= t.bandwidth()) throw DomainError("svd_index: guard band narrower than the operator bandwidth");
  const auto t_adj = t.adjoint();
  const auto base = counts_at(t, t_adj, size, guard, tol);
  const auto doubled = counts_at(t, t_adj, 2 * size, guard, tol);
  if (!(base == doubled)) {
    std::ostringstream os;
    os << "svd_index: kernel counts change under doubling (" << base.kernel << "," << base.cokernel << ") vs ("
       << doubled.kernel << "," << doubled.cokernel << ")";
    throw InconclusiveError(os.str());
  }
  return base;
}

IndexReport combine_routes(const IndexReport& fedosov, std::optional<KernelCounts> svd, std::optional<int> winding) {
  IndexReport out = fedosov;
  out.svd = svd;
  out.winding = winding;
  bool agree = fedosov.certain;
  if (svd) agree = agree && svd->index() == out.verdict;
  if (winding) agree = agree && constants::kToeplitzIndexSign * *winding == out.verdict;
  out.certain = agree;
  return out;
}

}  // namespace oplab::toeplitz
