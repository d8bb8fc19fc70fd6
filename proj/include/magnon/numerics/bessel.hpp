#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "magnon/error.hpp"

namespace magnon::numerics {

/// Crossover between the power series and Steed's continued fraction.
inline constexpr double kBesselK0Crossover = 2.0;

namespace detail {

inline double bessel_k0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0; // (q^k / k!^2)
  double i0 = 1.0;
  double harmonic = 0.0;
  double tail = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k));
    harmonic += 1.0 / static_cast<double>(k);
    i0 += term;
    tail += term * harmonic;
    if (term * harmonic < 1e-18 * tail && term < 1e-18 * i0) break;
  }
  return -(std::log(0.5 * x) + std::numbers::egamma) * i0 + tail;
}

// Temme's form of Steed's continued fraction CF2 for K_0, specialised to
// order zero. Converges in a few dozen terms for x >= 2 and keeps full
// relative precision, unlike the truncated large-x expansion.
inline double bessel_k0_continued_fraction(double x) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 10000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 1e-17) break;
  }
  return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
}

} // namespace detail

/// Modified Bessel function of the second kind, order zero, for x > 0.
inline double bessel_k0(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k0 requires x > 0, got " + std::to_string(x));
  if (x > 750.0) return 0.0; // below the smallest subnormal
  return x <= kBesselK0Crossover ? detail::bessel_k0_series(x) : detail::bessel_k0_continued_fraction(x);
}

} // namespace magnon::numerics
