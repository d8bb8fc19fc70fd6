#pragma once

// Classical limit of the kicked Harper map on the unit torus:
//   q' = q - tau sin(2 pi p)
//   p' = p + tau g sin(2 pi q')

#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

#include "magnon/error.hpp"
#include "magnon/numerics/random.hpp"

namespace magnon::classical {

inline double wrap_unit(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

struct TorusPoint {
  double q = 0.0;
  double p = 0.0;

  static TorusPoint wrapped(double q, double p) { return {wrap_unit(q), wrap_unit(p)}; }
};

namespace detail {
constexpr double two_pi = 2.0 * std::numbers::pi;

// One map step on the covering plane (no mod-1 reduction).
inline TorusPoint lifted_step(double q, double p, double tau, double g) {
  const double q1 = q - tau * std::sin(two_pi * p);
  const double p1 = p + tau * g * std::sin(two_pi * q1);
  return {q1, p1};
}
} // namespace detail

inline TorusPoint map_step(TorusPoint pt, double tau, double g) {
  const auto next = detail::lifted_step(pt.q, pt.p, tau, g);
  return TorusPoint::wrapped(next.q, next.p);
}

/// Exact inverse of map_step: undo the p shear, then the q shear.
inline TorusPoint inverse_step(TorusPoint pt, double tau, double g) {
  const double p0 = pt.p - tau * g * std::sin(detail::two_pi * pt.q);
  const double q0 = pt.q + tau * std::sin(detail::two_pi * p0);
  return TorusPoint::wrapped(q0, p0);
}

using Orbit = std::vector<TorusPoint>;

/// Orbit of n_iter points per seed, starting with the seed itself. A seed on
/// a fixed point yields a single point.
inline std::vector<Orbit> portrait(double tau, double g, const std::vector<TorusPoint>& seeds, std::size_t n_iter) {
  if (n_iter < 1) throw DomainError("portrait needs n_iter >= 1");
  std::vector<Orbit> out;
  out.reserve(seeds.size());
  for (const auto& seed : seeds) {
    Orbit orbit;
    orbit.reserve(n_iter);
    TorusPoint pt = TorusPoint::wrapped(seed.q, seed.p);
    orbit.push_back(pt);
    for (std::size_t i = 1; i < n_iter; ++i) {
      const TorusPoint next = map_step(pt, tau, g);
      if (next.q == pt.q && next.p == pt.p) break;
      pt = next;
      orbit.push_back(pt);
    }
    out.push_back(std::move(orbit));
  }
  return out;
}

/// n_line seeds evenly spaced along q = 0.5 plus n_random uniformly random
/// seeds drawn from `seed`.
inline std::vector<TorusPoint> default_seeds(std::uint64_t seed = 1, std::size_t n_line = 20, std::size_t n_random = 10) {
  std::vector<TorusPoint> seeds;
  for (std::size_t i = 0; i < n_line; ++i) seeds.push_back({0.5, (static_cast<double>(i) + 0.5) / static_cast<double>(n_line)});
  numerics::GaussianStream rng(seed);
  for (std::size_t i = 0; i < n_random; ++i) {
    const double q = rng.uniform();
    const double p = rng.uniform();
    seeds.push_back({q, p});
  }
  return seeds;
}

/// Determinant of the map Jacobian at pt from central differences (step 1e-6).
inline double jacobian_check(TorusPoint pt, double tau, double g, double step = 1e-6) {
  const auto dq_plus = detail::lifted_step(pt.q + step, pt.p, tau, g);
  const auto dq_minus = detail::lifted_step(pt.q - step, pt.p, tau, g);
  const auto dp_plus = detail::lifted_step(pt.q, pt.p + step, tau, g);
  const auto dp_minus = detail::lifted_step(pt.q, pt.p - step, tau, g);
  const double a = (dq_plus.q - dq_minus.q) / (2.0 * step);
  const double b = (dp_plus.q - dp_minus.q) / (2.0 * step);
  const double c = (dq_plus.p - dq_minus.p) / (2.0 * step);
  const double d = (dp_plus.p - dp_minus.p) / (2.0 * step);
  return a * d - b * c;
}

/// Fraction of cells of a cells x cells grid visited by the orbit.
inline double grid_coverage(const Orbit& orbit, std::size_t cells = 20) {
  std::set<std::size_t> visited;
  for (const auto& pt : orbit) {
    const auto iq = std::min(cells - 1, static_cast<std::size_t>(pt.q * static_cast<double>(cells)));
    const auto ip = std::min(cells - 1, static_cast<std::size_t>(pt.p * static_cast<double>(cells)));
    visited.insert(iq * cells + ip);
  }
  return static_cast<double>(visited.size()) / static_cast<double>(cells * cells);
}

} // namespace magnon::classical
