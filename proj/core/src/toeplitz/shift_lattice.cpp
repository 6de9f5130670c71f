#include "oplab/toeplitz/shift_lattice.hpp"

#include <cstdlib>

#include "oplab/error.hpp"

namespace oplab::toeplitz {

bool on_lattice(Lattice lattice, int site) noexcept {
  const bool even = (site % 2) == 0;
  switch (lattice) {
    case Lattice::kInteger:
      return even;
    case Lattice::kHalfInteger:
      return !even;
    case Lattice::kBoth:
      return true;
  }
  return false;
}

std::vector<int> LatticeWindow::sites(Lattice lattice) const {
  std::vector<int> out;
  for (int j = lo; j <= hi; ++j) {
    if (on_lattice(lattice, j)) out.push_back(j);
  }
  return out;
}

ShiftLatticeOperator::ShiftLatticeOperator(LatticeWindow window, Lattice domain, Lattice codomain)
    : window_(window), domain_(domain), codomain_(codomain) {
  if (window.hi < window.lo) throw DomainError("ShiftLatticeOperator: empty window");
}

ShiftLatticeOperator ShiftLatticeOperator::identity(LatticeWindow window, Lattice lattice) {
  return laurent(window, lattice, lattice, {{0, cplx{1.0, 0.0}}});
}

ShiftLatticeOperator ShiftLatticeOperator::hardy_projection(LatticeWindow window, Lattice lattice) {
  ShiftLatticeOperator p(window, lattice, lattice);
  auto& diag = p.band(0);
  for (int j = std::max(0, window.lo); j <= window.hi; ++j) {
    if (on_lattice(lattice, j)) diag[static_cast<size_t>(j - window.lo)] = 1.0;
  }
  p.prune();
  return p;
}

ShiftLatticeOperator ShiftLatticeOperator::laurent(LatticeWindow window, Lattice domain, Lattice codomain,
                                                   const std::map<int, cplx>& band) {
  ShiftLatticeOperator op(window, domain, codomain);
  for (const auto& [offset, c] : band) {
    if (c == cplx{}) continue;
    auto& coeffs = op.band(offset);
    for (int j = window.lo; j <= window.hi; ++j) {
      if (on_lattice(domain, j) && on_lattice(codomain, j + offset)) {
        coeffs[static_cast<size_t>(j - window.lo)] = c;
      }
    }
  }
  op.prune();
  return op;
}

int ShiftLatticeOperator::bandwidth() const noexcept {
  int w = 0;
  for (const auto& [offset, coeffs] : bands_) w = std::max(w, std::abs(offset));
  return w;
}

std::vector<cplx>& ShiftLatticeOperator::band(int offset) {
  auto it = bands_.find(offset);
  if (it == bands_.end()) {
    it = bands_.emplace(offset, std::vector<cplx>(static_cast<size_t>(window_.size()))).first;
  }
  return it->second;
}

cplx ShiftLatticeOperator::entry(int row_site, int col_site) const {
  if (!window_.contains(col_site)) return {};
  const auto it = bands_.find(row_site - col_site);
  if (it == bands_.end()) return {};
  return it->second[static_cast<size_t>(col_site - window_.lo)];
}

void ShiftLatticeOperator::set(int row_site, int col_site, cplx value) {
  if (!window_.contains(col_site) || !window_.contains(row_site)) {
    throw DomainError("ShiftLatticeOperator::set: site outside window");
  }
  band(row_site - col_site)[static_cast<size_t>(col_site - window_.lo)] = value;
}

ShiftLatticeOperator ShiftLatticeOperator::adjoint() const {
  ShiftLatticeOperator out(window_, codomain_, domain_);
  for (const auto& [offset, coeffs] : bands_) {
    auto& dst = out.band(-offset);
    for (int j = window_.lo; j <= window_.hi; ++j) {
      const int target = j + offset;
      if (window_.contains(target)) {
        dst[static_cast<size_t>(target - window_.lo)] = std::conj(coeffs[static_cast<size_t>(j - window_.lo)]);
      }
    }
  }
  out.prune();
  return out;
}

void ShiftLatticeOperator::require_same_window(const ShiftLatticeOperator& rhs) const {
  if (!(rhs.window_ == window_)) throw DomainError("ShiftLatticeOperator: window mismatch");
}

ShiftLatticeOperator ShiftLatticeOperator::operator*(const ShiftLatticeOperator& rhs) const {
  require_same_window(rhs);
  ShiftLatticeOperator out(window_, rhs.domain_, codomain_);
  for (const auto& [db, cb] : rhs.bands_) {
    for (const auto& [da, ca] : bands_) {
      auto& dst = out.band(da + db);
      for (int j = window_.lo; j <= window_.hi; ++j) {
        const int mid = j + db;
        if (!window_.contains(mid)) continue;  // truncation leakage
        const cplx b = cb[static_cast<size_t>(j - window_.lo)];
        if (b == cplx{}) continue;
        dst[static_cast<size_t>(j - window_.lo)] += ca[static_cast<size_t>(mid - window_.lo)] * b;
      }
    }
  }
  out.prune();
  return out;
}

ShiftLatticeOperator ShiftLatticeOperator::operator+(const ShiftLatticeOperator& rhs) const {
  require_same_window(rhs);
  ShiftLatticeOperator out = *this;
  for (const auto& [offset, coeffs] : rhs.bands_) {
    auto& dst = out.band(offset);
    for (size_t i = 0; i < coeffs.size(); ++i) dst[i] += coeffs[i];
  }
  out.prune();
  return out;
}

ShiftLatticeOperator ShiftLatticeOperator::operator-(const ShiftLatticeOperator& rhs) const {
  return *this + rhs * cplx{-1.0, 0.0};
}

ShiftLatticeOperator ShiftLatticeOperator::operator*(cplx s) const {
  ShiftLatticeOperator out = *this;
  for (auto& [offset, coeffs] : out.bands_) {
    for (auto& c : coeffs) c *= s;
  }
  out.prune();
  return out;
}

DenseMatrix ShiftLatticeOperator::to_dense(std::span<const int> row_sites, std::span<const int> col_sites) const {
  DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(row_sites.size()),
                                    static_cast<Eigen::Index>(col_sites.size()));
  for (size_t c = 0; c < col_sites.size(); ++c) {
    for (size_t r = 0; r < row_sites.size(); ++r) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entry(row_sites[r], col_sites[c]);
    }
  }
  return m;
}

void ShiftLatticeOperator::prune() {
  std::erase_if(bands_, [](const auto& kv) {
    for (const cplx& c : kv.second) {
      if (c != cplx{}) return false;
    }
    return true;
  });
}

}  // namespace oplab::toeplitz
