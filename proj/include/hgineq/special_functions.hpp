#pragma once

#include <complex>

namespace hgineq {

/// Gamma function on the complex plane. Lanczos approximation (g = 7, 9 terms)
/// evaluated through log-gamma, reflection for Re z < 1/2.
/// Throws DomainError at non-positive integers.
std::complex<double> complex_gamma(std::complex<double> z);

/// log Gamma(z) on the principal branch of the Lanczos form (Re z >= 1/2).
std::complex<double> complex_log_gamma(std::complex<double> z);

/// Constant of the fractional moment inequality:
/// C(b, k) = Gamma(k+1)/|Gamma(b) Gamma(k-b)| * 2^(k - Re b) / (Re b (k - Re b)).
/// Requires 0 < Re b < k.
double fractional_constant(std::complex<double> b, int k);

}  // namespace hgineq
