#pragma once

#include <string>
#include <vector>

#include "magnon/numerics/matrix.hpp"
#include "magnon/onepstate.hpp"

namespace magnon {

/// Spectrum of an operator together with the entanglement summary of every
/// eigenstate. `energies[k]` and `per_state[k]` describe the same state
/// (eigenphases take the place of energies for Floquet operators).
struct SpectralConcurrence {
  RVector energies;
  std::vector<ConcurrenceSummary> per_state;
  double spectral_average = 0.0;
  SpectralSet spectrum;

  std::size_t n_sites() const noexcept { return energies.size(); }
  OneParticleState state(std::size_t k) const {
    return OneParticleState::normalized(spectrum.vector(k), "eigenstate " + std::to_string(k));
  }
};

inline SpectralConcurrence summarize_spectrum(SpectralSet spectrum, PairDetail detail) {
  SpectralConcurrence out;
  const std::size_t n = spectrum.size();
  out.energies = spectrum.values;
  out.per_state.reserve(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto state = OneParticleState::normalized(spectrum.vector(k));
    out.per_state.push_back(summarize(state, detail));
    total += out.per_state.back().average;
  }
  out.spectral_average = total / static_cast<double>(n);
  out.spectrum = std::move(spectrum);
  return out;
}

} // namespace magnon
