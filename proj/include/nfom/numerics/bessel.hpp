#pragma once

// Bessel function of the first kind, order zero.
//
// Implemented internally (power series below |x| = 16, Hankel asymptotic
// expansion above) so the eta-coefficient oracle does not depend on any
// environment-provided special function. Long-double accumulation keeps the
// cancellation error of the series below ~1e-13 at the crossover.
//
// Documented range |x| < 50. Accuracy ~1e-12 (absolute; relative away from
// the zeros of J0).

#include <cmath>
#include <stdexcept>

namespace nfom::numerics {

inline constexpr double kBesselRange = 50.0;

inline double bessel_j0(double x) {
  if (!(std::abs(x) < kBesselRange))
    throw std::domain_error("bessel_j0: |x| must be < 50");
  const long double ax = std::abs(static_cast<long double>(x));

  if (ax <= 16.0L) {
    // J0(x) = sum_m (-1)^m (x^2/4)^m / (m!)^2
    const long double q = ax * ax / 4.0L;
    long double term = 1.0L, sum = 1.0L;
    for (int m = 1; m <= 80; ++m) {
      term *= -q / (static_cast<long double>(m) * m);
      sum += term;
      if (std::abs(term) < 1e-25L * std::abs(sum) && m > 4) break;
    }
    return static_cast<double>(sum);
  }

  // Hankel expansion: J0(x) = sqrt(2/(pi x)) [P cos(x - pi/4) - Q sin(x - pi/4)]
  // with P = 1 - m2 + m4 - ..., Q = -m1 + m3 - m5 + ...,
  // m_j = m_{j-1} (2j-1)^2 / (8 j x). Terms are added while they decrease;
  // the truncation error at the smallest term is ~e^{-2x} (< 2e-14 beyond 16).
  long double mu = 1.0L;
  long double p = 1.0L, q = 0.0L;
  long double prev = 1.0L;
  for (int j = 1; j <= 64; ++j) {
    mu *= static_cast<long double>(2 * j - 1) * (2 * j - 1) /
          (8.0L * j * ax);
    if (std::abs(mu) >= prev) break;  // asymptotic tail starts growing
    prev = std::abs(mu);
    const int phase = ((j + 1) / 2) % 2 ? -1 : 1;
    if (j % 2 == 1)
      q += phase * mu;
    else
      p += phase * mu;
    if (prev < 1e-22L) break;
  }
  const long double chi = ax - 0.25L * 3.141592653589793238462643383279503L;
  const long double amp = std::sqrt(2.0L / (3.141592653589793238462643383279503L * ax));
  return static_cast<double>(amp * (p * std::cos(chi) - q * std::sin(chi)));
}

}  // namespace nfom::numerics
