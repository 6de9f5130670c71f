#include "oplab/toeplitz/cayley.hpp"

#include <cmath>

#include "oplab/constants.hpp"
#include "oplab/error.hpp"

namespace oplab::toeplitz {

cplx cayley_basis(HalfInteger n, double x) {
  const cplx i{0.0, 1.0};
  return std::polar(1.0, -2.0 * n.value() * std::atan(x)) / (x - i);
}

cplx cayley_basis_normalized(HalfInteger n, double x) {
  return cayley_basis(n, x) / std::sqrt(constants::kPi);
}

cplx cayley_basis_rational(int n, double x) {
  if (n < 0) throw DomainError("cayley_basis_rational: n must be non-negative");
  const cplx i{0.0, 1.0};
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(x + i, n) / std::pow(x - i, n + 1);
}

}  // namespace oplab::toeplitz
