#pragma once

#include "oplab/linalg.hpp"
#include "oplab/toeplitz/shift_lattice.hpp"

namespace oplab::toeplitz {

/// b_n(x) = e^{-2 n i arctan x} / (x - i), the image of e^{i n theta} under
/// f -> f(2 arctan x) / (x - i). Its squared norm on the line is pi.
cplx cayley_basis(HalfInteger n, double x);

/// b_n / sqrt(pi), an orthonormal family.
cplx cayley_basis_normalized(HalfInteger n, double x);

/// Rational form (-1)^n (x + i)^n / (x - i)^{n+1} for integer n >= 0.
cplx cayley_basis_rational(int n, double x);

}  // namespace oplab::toeplitz
