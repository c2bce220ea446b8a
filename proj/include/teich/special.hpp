#pragma once

#include <complex>

namespace teich {

using cplx = std::complex<double>;

/// log Gamma(z) by the Lanczos approximation (g = 7, 9 terms), with the
/// reflection formula for Re z < 1/2. The imaginary part is only defined
/// modulo 2*pi; exp(log_gamma(z)) is the object of interest.
cplx log_gamma(cplx z);

/// Gamma(z); throws DomainError at the poles z = 0, -1, -2, ...
cplx gamma_fn(cplx z);

/// True when z is (numerically) a non-positive integer.
bool is_gamma_pole(cplx z);

}  // namespace teich
