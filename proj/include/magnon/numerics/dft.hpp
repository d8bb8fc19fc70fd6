#pragma once

#include <cmath>
#include <numbers>
#include <span>

#include "magnon/numerics/matrix.hpp"

namespace magnon::numerics {

enum class DftDirection { Forward, Inverse };

namespace detail {
// 2*pi*(k + beta)*j/N with the integer part k*j reduced mod N first.
inline double twisted_angle(std::size_t k, std::size_t j, std::size_t n, double beta) {
  const double kj = static_cast<double>((k * j) % n);
  return 2.0 * std::numbers::pi * (kj + beta * static_cast<double>(j)) / static_cast<double>(n);
}
} // namespace detail

/// Unitary N x N matrix F with F(k, j) = exp(2 pi i (k+beta) j / N) / sqrt(N),
/// sites and momenta labelled 1..N (stored at 0-based offsets k-1, j-1).
inline CMatrix twisted_dft_matrix(std::size_t n, double beta) {
  if (n == 0) throw ShapeError("twisted DFT needs N >= 1");
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  CMatrix f(n, n);
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t j = 1; j <= n; ++j) f(k - 1, j - 1) = std::polar(norm, detail::twisted_angle(k, j, n, beta));
  return f;
}

/// Site-to-momentum transform with twisted momenta (k + beta)/N. The inverse
/// is the exact adjoint. Direct O(N^2) evaluation.
inline CVector twisted_dft(std::span<const cplx> x, double beta, DftDirection dir = DftDirection::Forward) {
  const std::size_t n = x.size();
  if (n == 0) throw ShapeError("twisted DFT needs N >= 1");
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  const double sign = dir == DftDirection::Forward ? 1.0 : -1.0;
  CVector y(n);
  if (dir == DftDirection::Forward) {
    for (std::size_t k = 1; k <= n; ++k) {
      cplx acc{};
      for (std::size_t j = 1; j <= n; ++j) acc += std::polar(norm, sign * detail::twisted_angle(k, j, n, beta)) * x[j - 1];
      y[k - 1] = acc;
    }
  } else {
    for (std::size_t j = 1; j <= n; ++j) {
      cplx acc{};
      for (std::size_t k = 1; k <= n; ++k) acc += std::polar(norm, sign * detail::twisted_angle(k, j, n, beta)) * x[k - 1];
      y[j - 1] = acc;
    }
  }
  return y;
}

} // namespace magnon::numerics
