#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "magnon/error.hpp"

namespace magnon::numerics {

using RealFunction = std::function<double(double)>;

/// Width of the first sub-interval handed to tanh-sinh for semi-infinite and
/// long finite ranges, and the point past which the tail is mapped onto (0, 1].
inline constexpr double kTanhSinhHead = 1.0;
inline constexpr double kTailCutoff = 60.0;

/// Double-exponential (tanh-sinh) rule on [a, b]. Never evaluates f at the
/// endpoints, so integrable endpoint singularities such as log(x) at x = a
/// are fine.
inline double tanh_sinh(const RealFunction& f, double a, double b, double tol, int max_level = 12) {
  if (!(b > a)) return 0.0;
  const double half = 0.5 * (b - a);
  constexpr double t_max = 4.5;
  constexpr double pi_2 = 0.5 * std::numbers::pi;

  auto node_sum = [&](double t) {
    // Contribution of the symmetric node pair at +/- t (or the centre at t = 0).
    const double u = pi_2 * std::sinh(t);
    const double cu = std::cosh(u);
    const double w = pi_2 * std::cosh(t) / (cu * cu);
    if (t == 0.0) return w * f(a + half);
    const double delta = 1.0 / (std::exp(u) * cu); // 1 - tanh(u), no cancellation
    double s = 0.0;
    const double xr = b - half * delta;
    const double xl = a + half * delta;
    if (xr < b) s += f(xr);
    if (xl > a) s += f(xl);
    return w * s;
  };

  double h = 1.0;
  double sum = node_sum(0.0);
  for (double t = h; t <= t_max; t += h) sum += node_sum(t);
  double estimate = half * h * sum;

  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double fresh = 0.0;
    for (double t = h; t <= t_max; t += 2.0 * h) fresh += node_sum(t);
    sum += fresh;
    const double next = half * h * sum;
    const double diff = std::abs(next - estimate);
    estimate = next;
    if (!std::isfinite(estimate)) throw QuadratureFailure("tanh-sinh: non-finite integrand values");
    if (level >= 3 && diff <= tol) return estimate;
  }
  throw QuadratureFailure("tanh-sinh did not reach tolerance " + std::to_string(tol) + " on [" +
                          std::to_string(a) + ", " + std::to_string(b) + "]");
}

namespace detail {

inline double simpson_step(const RealFunction& f, double a, double b, double fa, double fm, double fb,
                           double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) throw QuadratureFailure("adaptive Simpson exceeded its subdivision cap");
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson with Richardson correction on a finite interval.
inline double adaptive_simpson(const RealFunction& f, double a, double b, double tol, int max_depth = 48) {
  if (!(b > a)) return 0.0;
  const int pre = 4;
  double total = 0.0;
  const double step = (b - a) / pre;
  for (int k = 0; k < pre; ++k) {
    const double lo = a + step * k;
    const double hi = (k == pre - 1) ? b : lo + step;
    const double flo = f(lo), fhi = f(hi), fmid = f(0.5 * (lo + hi));
    total += detail::simpson_step(f, lo, hi, flo, fmid, fhi, (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi), tol / pre,
                                  max_depth);
  }
  return total;
}

/// Integral of f over (a, b), b may be +infinity.
///
/// The first unit of the range uses tanh-sinh (handles a log singularity at
/// a), the middle uses adaptive Simpson, and for b = +inf the tail beyond
/// a + 60 is mapped onto (0, 1] via x = c + (1 - t)/t and integrated with
/// tanh-sinh as well.
inline double quadrature(const RealFunction& f, double a, double b, double tol) {
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (!std::isfinite(a)) throw DomainError("quadrature lower limit must be finite");
  if (b <= a) return 0.0;

  const bool infinite = std::isinf(b);
  const double head_end = std::min(b, a + kTanhSinhHead);
  double total = tanh_sinh(f, a, head_end, tol / 3.0);
  if (head_end == b) return total;

  const double mid_end = infinite ? a + kTailCutoff : b;
  if (mid_end > head_end) total += adaptive_simpson(f, head_end, mid_end, tol / 3.0);
  if (infinite) {
    const double c = mid_end;
    auto mapped = [&](double t) {
      const double x = c + (1.0 - t) / t;
      if (!std::isfinite(x) || t * t == 0.0) return 0.0;
      return f(x) / (t * t);
    };
    total += tanh_sinh(mapped, 0.0, 1.0, tol / 3.0);
  }
  return total;
}

} // namespace magnon::numerics
