#pragma once

// Static Harper chain: nearest-neighbour hopping 1/2 on a ring of N sites
// with onsite potential g cos(2 pi sigma j / N) and a flux-line twist beta
// on the boundary bond.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "magnon/error.hpp"
#include "magnon/numerics/eigen.hpp"
#include "magnon/numerics/parallel.hpp"
#include "magnon/onepstate.hpp"
#include "magnon/spectral.hpp"

namespace magnon::harper {

/// Golden-mean incommensurability, (sqrt 5 - 1)/2.
inline constexpr double kGoldenGamma = 0.6180339887498948482;

struct HamiltonianSpec {
  std::size_t n_sites = 101;
  double g = 0.0;
  double sigma = 1.0;
  double beta = 0.0;

  void validate() const {
    if (n_sites < 2) throw DomainError("Harper chain needs N >= 2");
    if (!std::isfinite(g) || !std::isfinite(sigma) || !std::isfinite(beta))
      throw DomainError("Harper parameters must be finite");
    if (g < 0.0) throw DomainError("onsite strength g must be >= 0");
    if (!(sigma > 0.0)) throw DomainError("incommensurability sigma must be > 0");
  }
};

inline HermitianMatrix build_harper(const HamiltonianSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n_sites;
  CMatrix h(n, n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double phase = 2.0 * std::numbers::pi * spec.sigma * static_cast<double>(j) / static_cast<double>(n);
    h(j - 1, j - 1) = spec.g * std::cos(phase);
  }
  for (std::size_t j = 1; j < n; ++j) {
    h(j - 1, j) += 0.5;
    h(j, j - 1) += 0.5;
  }
  // Boundary bond c_N^dagger c_{N+1} = e^{-2 pi i beta} c_N^dagger c_1.
  const cplx twist = std::polar(0.5, -2.0 * std::numbers::pi * spec.beta);
  h(n - 1, 0) += twist;
  h(0, n - 1) += std::conj(twist);
  return HermitianMatrix(std::move(h));
}

inline SpectralConcurrence spectral_concurrence(const HermitianMatrix& h, PairDetail detail = PairDetail::Keep) {
  return summarize_spectrum(numerics::eig_hermitian(h), detail);
}

inline SpectralConcurrence spectral_concurrence(const HamiltonianSpec& spec, PairDetail detail = PairDetail::Keep) {
  return spectral_concurrence(build_harper(spec), detail);
}

struct GPoint {
  double g;
  double spectral_average;
};

/// Spectral-averaged concurrence at each g, other parameters from `base`.
inline std::vector<GPoint> sweep_g(const HamiltonianSpec& base, const std::vector<double>& g_values, unsigned threads = 1) {
  if (g_values.empty()) throw DomainError("sweep_g needs at least one g value");
  std::vector<GPoint> out(g_values.size());
  numerics::parallel_for(g_values.size(), threads, [&](std::size_t i) {
    HamiltonianSpec spec = base;
    spec.g = g_values[i];
    out[i] = {g_values[i], spectral_concurrence(spec, PairDetail::Skip).spectral_average};
  });
  return out;
}

struct ScalingPoint {
  std::size_t n_sites;
  double spectral_average;
};

struct ScalingFit {
  std::vector<ScalingPoint> points;
  /// p in <C> ~ N^{-p}: minus the least-squares slope of ln <C> vs ln N.
  double exponent = 0.0;
  double intercept = 0.0;
};

/// Least-squares power law of the spectral average over chain lengths, with
/// sigma = N * gamma at every point.
inline ScalingFit scaling_fit(double g, const std::vector<std::size_t>& n_values, double gamma = kGoldenGamma,
                              double beta = 0.0, unsigned threads = 1) {
  if (n_values.size() < 3) throw DomainError("scaling fit needs at least three chain lengths");
  ScalingFit fit;
  fit.points.resize(n_values.size());
  numerics::parallel_for(n_values.size(), threads, [&](std::size_t i) {
    const std::size_t n = n_values[i];
    HamiltonianSpec spec{n, g, gamma * static_cast<double>(n), beta};
    fit.points[i] = {n, spectral_concurrence(spec, PairDetail::Skip).spectral_average};
  });

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(fit.points.size());
  for (const auto& p : fit.points) {
    if (!(p.spectral_average > 0.0)) throw DomainError("spectral average vanished; log-log fit undefined");
    const double x = std::log(static_cast<double>(p.n_sites));
    const double y = std::log(p.spectral_average);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.exponent = -slope;
  fit.intercept = (sy - slope * sx) / m;
  return fit;
}

inline double scaling_exponent(double g, const std::vector<std::size_t>& n_values, double gamma = kGoldenGamma,
                               double beta = 0.0, unsigned threads = 1) {
  return scaling_fit(g, n_values, gamma, beta, threads).exponent;
}

struct EnergyPoint {
  double scaled_energy; // E / (1 + g)
  double average;
};

/// Per-eigenstate average concurrence against E/(1+g), ascending in energy.
inline std::vector<EnergyPoint> concurrence_vs_energy(const HamiltonianSpec& spec) {
  const auto sc = spectral_concurrence(spec, PairDetail::Skip);
  std::vector<EnergyPoint> out;
  out.reserve(sc.energies.size());
  for (std::size_t k = 0; k < sc.energies.size(); ++k)
    out.push_back({sc.energies[k] / (1.0 + spec.g), sc.per_state[k].average});
  return out;
}

} // namespace magnon::harper
