#pragma once

// Random-matrix predictions for eigenvector components and pairwise
// concurrence in one-particle states, for the orthogonal (real components)
// and unitary (complex components) ensembles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "magnon/error.hpp"
#include "magnon/numerics/bessel.hpp"
#include "magnon/numerics/ks.hpp"
#include "magnon/numerics/parallel.hpp"
#include "magnon/numerics/quadrature.hpp"
#include "magnon/numerics/random.hpp"
#include "magnon/onepstate.hpp"

namespace magnon::rmt {

enum class EnsembleKind { GOE, GUE };

inline const char* to_string(EnsembleKind k) { return k == EnsembleKind::GOE ? "GOE" : "GUE"; }

inline constexpr double kCdfTolerance = 1e-11;

/// Large-N density of x = |phi_j|^2: Porter-Thomas (GOE) or exponential (GUE).
inline double component_density(EnsembleKind kind, double x, std::size_t n) {
  if (!(x > 0.0)) throw DomainError("component density needs x > 0");
  const double nd = static_cast<double>(n);
  if (kind == EnsembleKind::GOE) return std::sqrt(nd / (2.0 * std::numbers::pi * x)) * std::exp(-0.5 * nd * x);
  return nd * std::exp(-nd * x);
}

/// Density of the scaled concurrence c = N C: K0(c/2)/pi (GOE), c K0(c) (GUE).
inline double concurrence_pdf(EnsembleKind kind, double c) {
  if (!(c > 0.0)) throw DomainError("concurrence pdf needs c > 0");
  if (kind == EnsembleKind::GOE) return numerics::bessel_k0(0.5 * c) / std::numbers::pi;
  return c * numerics::bessel_k0(c);
}

/// Large-c form of the density: e^{-c/2}/sqrt(pi c) (GOE), sqrt(pi c/2) e^{-c} (GUE).
inline double concurrence_pdf_asymptotic(EnsembleKind kind, double c) {
  if (kind == EnsembleKind::GOE) return std::exp(-0.5 * c) / std::sqrt(std::numbers::pi * c);
  return std::sqrt(0.5 * std::numbers::pi * c) * std::exp(-c);
}

/// Mean of c: 4/pi (GOE), pi/2 (GUE).
inline double predicted_mean(EnsembleKind kind) {
  return kind == EnsembleKind::GOE ? 4.0 / std::numbers::pi : std::numbers::pi / 2.0;
}

/// P(c' <= c) by quadrature of the density; c may be +infinity.
inline double concurrence_cdf(EnsembleKind kind, double c) {
  if (std::isnan(c) || c < 0.0) throw DomainError("concurrence cdf needs c >= 0");
  if (c == 0.0) return 0.0;
  return numerics::quadrature([kind](double x) { return concurrence_pdf(kind, x); }, 0.0, c, kCdfTolerance);
}

/// Mean of c obtained by quadrature of c p(c).
inline double mean_by_quadrature(EnsembleKind kind) {
  return numerics::quadrature([kind](double x) { return x * concurrence_pdf(kind, x); }, 0.0,
                              std::numeric_limits<double>::infinity(), kCdfTolerance);
}

/// Fraction of pairs with c > 2, i.e. pairwise concurrence above that of a
/// momentum state.
inline double fraction_above(EnsembleKind kind, double c) { return 1.0 - concurrence_cdf(kind, c); }

/// CDF at every point of an ascending sample, accumulated interval by
/// interval.
inline std::vector<double> concurrence_cdf_sorted(EnsembleKind kind, std::span<const double> sorted) {
  static constexpr double nodes[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
  static constexpr double weights[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};
  auto pdf = [kind](double x) { return concurrence_pdf(kind, x); };

  std::vector<double> out(sorted.size());
  double prev = 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double x = sorted[i];
    if (x < prev) throw DomainError("concurrence_cdf_sorted needs an ascending sample");
    if (x > prev) {
      const double width = x - prev;
      if (prev > 0.0 && width <= 0.05 * prev) {
        const double mid = 0.5 * (x + prev);
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += weights[k] * pdf(mid + 0.5 * width * nodes[k]);
        acc += 0.5 * width * s;
      } else {
        acc += numerics::quadrature(pdf, prev, x, 1e-13);
      }
      prev = x;
    }
    out[i] = std::min(1.0, acc);
  }
  return out;
}

/// Normalized random state with independent Gaussian components: real for
/// GOE, complex (independent real and imaginary parts) for GUE.
inline OneParticleState sample_state(EnsembleKind kind, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw DomainError("random states need N >= 2");
  numerics::GaussianStream rng(seed);
  CVector v(n);
  for (auto& x : v) {
    const double re = rng();
    const double im = kind == EnsembleKind::GUE ? rng() : 0.0;
    x = cplx(re, im);
  }
  return OneParticleState::normalized(std::move(v), std::string(to_string(kind)) + " sample");
}

/// count states, the i-th drawn with seed split_seed(master_seed, i).
inline std::vector<OneParticleState> sample_states(EnsembleKind kind, std::size_t n, std::size_t count,
                                                   std::uint64_t master_seed, unsigned threads = 1) {
  std::vector<CVector> raw(count);
  numerics::parallel_for(count, threads, [&](std::size_t i) {
    const auto s = sample_state(kind, n, numerics::split_seed(master_seed, i));
    raw[i].assign(s.amplitudes().begin(), s.amplitudes().end());
  });
  std::vector<OneParticleState> out;
  out.reserve(count);
  for (auto& v : raw) out.emplace_back(std::move(v));
  return out;
}

/// All pairwise scaled concurrences N C_ij of all states, pooled.
inline std::vector<double> pooled_scaled_concurrence(std::span<const OneParticleState> states) {
  if (states.empty()) throw EmptySample("no states to pool");
  const std::size_t n = states.front().size();
  std::vector<double> out;
  out.reserve(states.size() * n * (n - 1) / 2);
  std::vector<double> mag(n);
  for (const auto& s : states) {
    if (s.size() != n) throw ShapeError("pooled states have different N");
    if (n < 2) throw InvalidState("pairwise measures need N >= 2");
    for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(s.amplitudes()[i]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) out.push_back(2.0 * static_cast<double>(n) * mag[i] * mag[j]);
  }
  return out;
}

struct DistributionComparison {
  EnsembleKind kind = EnsembleKind::GOE;
  std::size_t sample_size = 0;  // number of states pooled
  std::size_t pooled_count = 0; // sample_size * N(N-1)/2
  double ks = 0.0;
  double mean_scaled = 0.0;
  double predicted_mean = 0.0;
  double fraction_above_2 = 0.0;
};

/// Pools N C_ij over all states and compares with the predicted law.
inline DistributionComparison compare_ensemble(std::span<const OneParticleState> states, EnsembleKind kind) {
  std::vector<double> pooled = pooled_scaled_concurrence(states);
  std::sort(pooled.begin(), pooled.end());

  DistributionComparison out;
  out.kind = kind;
  out.sample_size = states.size();
  out.pooled_count = pooled.size();
  out.predicted_mean = predicted_mean(kind);
  double sum = 0.0;
  std::size_t above = 0;
  for (double c : pooled) {
    sum += c;
    if (c > 2.0) ++above;
  }
  out.mean_scaled = sum / static_cast<double>(pooled.size());
  out.fraction_above_2 = static_cast<double>(above) / static_cast<double>(pooled.size());
  const auto cdf = concurrence_cdf_sorted(kind, pooled);
  out.ks = numerics::ks_statistic_sorted(pooled, cdf);
  return out;
}

/// Density-normalized histogram of `values` on (0, upper] with `bins` equal
/// bins. Values outside the range are counted in the normalization but not
/// binned.
inline std::vector<double> density_histogram(std::span<const double> values, std::size_t bins = 60, double upper = 6.0) {
  if (bins == 0 || !(upper > 0.0)) throw DomainError("histogram needs bins > 0 and upper > 0");
  std::vector<double> h(bins, 0.0);
  if (values.empty()) return h;
  const double width = upper / static_cast<double>(bins);
  for (double v : values) {
    if (v <= 0.0 || v > upper) continue;
    auto b = static_cast<std::size_t>(std::ceil(v / width)) - 1;
    h[std::min(b, bins - 1)] += 1.0;
  }
  for (auto& x : h) x /= static_cast<double>(values.size()) * width;
  return h;
}

/// Finite-N average concurrence from the exact sphere measure of the
/// components (real components on S^{N-1} for GOE, real and imaginary parts
/// on S^{2N-1} for GUE), reduced to radial and angular integrals that are
/// evaluated by quadrature.
inline double sphere_average_concurrence(EnsembleKind kind, std::size_t n) {
  if (n < 3) throw DomainError("sphere average needs N >= 3");
  const double nd = static_cast<double>(n);
  if (kind == EnsembleKind::GOE) {
    // P^{(N,2)} = pi^-1 Gamma(N/2)/Gamma(N/2-1) (1 - r^2)^{(N-4)/2}, C = r^2 |sin 2 theta|.
    const double norm = std::exp(std::lgamma(0.5 * nd) - std::lgamma(0.5 * nd - 1.0)) / std::numbers::pi;
    const double expo = 0.5 * (nd - 4.0);
    // r = sin(phi) removes the (1 - r^2)^{-1/2} endpoint singularity at N = 3.
    const double radial = numerics::quadrature(
        [expo](double phi) { return std::pow(std::sin(phi), 3) * std::pow(std::cos(phi), 2.0 * expo + 1.0); }, 0.0,
        0.5 * std::numbers::pi, 1e-14);
    const double angular = numerics::quadrature([](double t) { return std::abs(std::sin(2.0 * t)); }, 0.0,
                                                0.5 * std::numbers::pi, 1e-14) * 4.0;
    return norm * radial * angular;
  }
  // P^{(2N,4)} = pi^-2 Gamma(N)/Gamma(N-2) (1 - rho^2)^{N-3}; with r1 = rho cos phi,
  // r2 = rho sin phi the integrand 2 r1 r2 times the measure (2 pi)^2 r1 r2 rho.
  const double norm = std::exp(std::lgamma(nd) - std::lgamma(nd - 2.0)) / (std::numbers::pi * std::numbers::pi);
  const double expo = nd - 3.0;
  const double radial = numerics::quadrature(
      [expo](double rho) { return std::pow(rho, 5) * std::pow(std::max(0.0, 1.0 - rho * rho), expo); }, 0.0, 1.0, 1e-14);
  const double angular = numerics::quadrature(
      [](double phi) {
        const double s = std::sin(phi) * std::cos(phi);
        return s * s;
      },
      0.0, 0.5 * std::numbers::pi, 1e-14);
  return norm * 4.0 * std::numbers::pi * std::numbers::pi * 2.0 * radial * angular;
}

} // namespace magnon::rmt
