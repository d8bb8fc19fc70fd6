#pragma once

// Kicked Harper quantum map on N sites with effective Planck constant
// h = 1/N:
//
//   U(tau) = exp(-i tau g cos(2 pi q) / h) exp(-i tau cos(2 pi p) / h)
//
// with positions q_j = j/N and twisted momenta p_k = (k + beta)/N.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "magnon/error.hpp"
#include "magnon/numerics/dft.hpp"
#include "magnon/numerics/eigen.hpp"
#include "magnon/numerics/parallel.hpp"
#include "magnon/onepstate.hpp"
#include "magnon/spectral.hpp"

namespace magnon::kicked {

struct FloquetSpec {
  std::size_t n_sites = 101;
  double g = 1.0;
  double tau = 0.8;
  double beta = 0.0;

  void validate() const {
    if (n_sites < 2) throw DomainError("kicked Harper needs N >= 2");
    if (!std::isfinite(g) || !std::isfinite(tau) || !std::isfinite(beta))
      throw DomainError("kicked Harper parameters must be finite");
    if (!(tau > 0.0)) throw DomainError("kick period tau must be > 0");
  }
};

inline UnitaryMatrix build_floquet(const FloquetSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n_sites;
  const double nd = static_cast<double>(n);
  const double two_pi = 2.0 * std::numbers::pi;

  const CMatrix f = numerics::twisted_dft_matrix(n, spec.beta);
  CVector kinetic(n), kick(n);
  for (std::size_t k = 1; k <= n; ++k)
    kinetic[k - 1] = std::polar(1.0, -spec.tau * nd * std::cos(two_pi * (static_cast<double>(k) + spec.beta) / nd));
  for (std::size_t j = 1; j <= n; ++j)
    kick[j - 1] = std::polar(1.0, -spec.tau * spec.g * nd * std::cos(two_pi * static_cast<double>(j) / nd));

  // U = diag(kick) F^dagger diag(kinetic) F
  CMatrix dk = f;
  for (std::size_t k = 0; k < n; ++k)
    for (auto& x : dk.row(k)) x *= kinetic[k];
  CMatrix u = adjoint(f) * dk;
  for (std::size_t j = 0; j < n; ++j)
    for (auto& x : u.row(j)) x *= kick[j];
  return UnitaryMatrix(std::move(u));
}

/// Floquet eigenstates and their concurrence; `energies` holds eigenphases.
inline SpectralConcurrence floquet_concurrence(const FloquetSpec& spec, PairDetail detail = PairDetail::Keep) {
  return summarize_spectrum(numerics::eig_unitary(build_floquet(spec)), detail);
}

struct TauPoint {
  double tau;
  double spectral_average;
  double scaled_average; // N * <C>
};

inline std::vector<TauPoint> sweep_tau(const FloquetSpec& spec, const std::vector<double>& tau_values,
                                       unsigned threads = 1) {
  if (tau_values.empty()) throw DomainError("sweep_tau needs at least one tau value");
  std::vector<TauPoint> out(tau_values.size());
  numerics::parallel_for(tau_values.size(), threads, [&](std::size_t i) {
    FloquetSpec s = spec;
    s.tau = tau_values[i];
    const double avg = floquet_concurrence(s, PairDetail::Skip).spectral_average;
    out[i] = {tau_values[i], avg, avg * static_cast<double>(s.n_sites)};
  });
  return out;
}

struct EvolutionTrace {
  std::vector<std::size_t> times;
  std::vector<OneParticleState> states;
  std::vector<double> averages;
};

/// Applies the Floquet operator n_kicks times, recording every state.
inline EvolutionTrace evolve(const FloquetSpec& spec, const OneParticleState& initial, std::size_t n_kicks) {
  if (initial.size() != spec.n_sites) throw ShapeError("initial state size differs from n_sites");
  const UnitaryMatrix u = build_floquet(spec);
  EvolutionTrace trace;
  trace.times.reserve(n_kicks + 1);
  trace.states.reserve(n_kicks + 1);
  trace.averages.reserve(n_kicks + 1);

  CVector psi(initial.amplitudes().begin(), initial.amplitudes().end());
  trace.times.push_back(0);
  trace.states.push_back(initial);
  trace.averages.push_back(average_concurrence(initial));
  for (std::size_t t = 1; t <= n_kicks; ++t) {
    psi = u.entries() * psi;
    trace.times.push_back(t);
    trace.states.emplace_back(psi);
    trace.averages.push_back(average_concurrence(trace.states.back()));
  }
  return trace;
}

/// Spectrum-averaged r-th neighbour concurrence; result(ri, ti) belongs to
/// r_values[ri] and tau_values[ti].
inline RMatrix neighbor_profile_sweep(const FloquetSpec& spec, const std::vector<std::size_t>& r_values,
                                      const std::vector<double>& tau_values, unsigned threads = 1) {
  if (r_values.empty() || tau_values.empty()) throw DomainError("neighbour sweep needs r and tau values");
  for (auto r : r_values)
    if (r < 1 || r > spec.n_sites - 1) throw IndexError("neighbour distance r=" + std::to_string(r) + " out of range");
  RMatrix out(r_values.size(), tau_values.size());
  numerics::parallel_for(tau_values.size(), threads, [&](std::size_t ti) {
    FloquetSpec s = spec;
    s.tau = tau_values[ti];
    const SpectralSet spectrum = numerics::eig_unitary(build_floquet(s));
    std::vector<double> acc(r_values.size(), 0.0);
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
      const auto state = OneParticleState::normalized(spectrum.vector(k));
      for (std::size_t ri = 0; ri < r_values.size(); ++ri) acc[ri] += neighbor_concurrence(state, r_values[ri]);
    }
    for (std::size_t ri = 0; ri < r_values.size(); ++ri) out(ri, ti) = acc[ri] / static_cast<double>(spectrum.size());
  });
  return out;
}

} // namespace magnon::kicked
