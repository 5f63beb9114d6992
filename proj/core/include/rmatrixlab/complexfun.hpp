#pragma once

#include <complex>

namespace rml {

using cplx = std::complex<double>;

/// log Gamma(z) for complex z (principal branch on Re z > 0; reflection otherwise).
cplx log_gamma(cplx z);

/// Gamma(z) = exp(log_gamma(z)).
cplx gamma_fn(cplx z);

/// digamma psi(z) for complex z.
cplx digamma(cplx z);

/// Hurwitz zeta zeta(s, a) = sum_{n>=0} (a+n)^{-s}, analytically continued in s,
/// for complex s and complex a with a not on {0,-1,-2,...}.
cplx hurwitz_zeta(cplx s, cplx a);

/// d/ds zeta(s, a) at the given s.
cplx hurwitz_zeta_ds(cplx s, cplx a);

} // namespace rml
