#pragma once

// One-particle (single-excitation) states on an N-site chain and the
// pairwise-entanglement measures built on them.
//
// Site labels are 1-based throughout the public interface: a state on N
// sites has amplitudes for sites 1..N.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "magnon/error.hpp"
#include "magnon/numerics/matrix.hpp"

namespace magnon {

/// 1-based site label.
struct Site {
  explicit constexpr Site(std::size_t v) : value(v) {}
  std::size_t value;
};

/// Normalized amplitude vector over N sites.
class OneParticleState {
public:
  static constexpr double kNormTolerance = 1e-10;

  explicit OneParticleState(CVector amplitudes, std::optional<std::string> label = std::nullopt)
      : amps_(std::move(amplitudes)), label_(std::move(label)) {
    if (amps_.empty()) throw InvalidState("one-particle state needs at least one site");
    double nrm = 0.0;
    for (const auto& a : amps_) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw InvalidState("non-finite amplitude");
      nrm += std::norm(a);
    }
    if (std::abs(nrm - 1.0) > kNormTolerance)
      throw InvalidState("state is not normalized: sum |phi|^2 = " + std::to_string(nrm));
  }

  /// Rescales an arbitrary non-zero vector to unit norm.
  static OneParticleState normalized(CVector v, std::optional<std::string> label = std::nullopt) {
    const double nrm = norm2(v);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw InvalidState("cannot normalize a zero or non-finite vector");
    for (auto& x : v) x /= nrm;
    return OneParticleState(std::move(v), std::move(label));
  }

  static OneParticleState localized(std::size_t n, Site site) {
    if (site.value < 1 || site.value > n) throw IndexError("site " + std::to_string(site.value) + " outside 1.." + std::to_string(n));
    CVector v(n);
    v[site.value - 1] = 1.0;
    return OneParticleState(std::move(v), "site " + std::to_string(site.value));
  }

  static OneParticleState uniform(std::size_t n) {
    return OneParticleState(CVector(n, cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0)), "uniform");
  }

  /// Momentum eigenstate of the twisted ring, phi_j = exp(-2 pi i (k+beta) j/N)/sqrt(N).
  static OneParticleState momentum(std::size_t n, std::size_t k, double beta = 0.0) {
    CVector v(n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 1; j <= n; ++j) {
      const double kj = static_cast<double>((k * j) % n) + beta * static_cast<double>(j);
      v[j - 1] = std::polar(norm, -2.0 * std::numbers::pi * kj / static_cast<double>(n));
    }
    return OneParticleState(std::move(v), "momentum " + std::to_string(k));
  }

  std::size_t size() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  const cplx& operator[](Site s) const { return amps_.at(s.value - 1); }
  const std::optional<std::string>& label() const noexcept { return label_; }

private:
  CVector amps_;
  std::optional<std::string> label_;
};

/// Two-site reduced density matrix of a number-conserving state, in the
/// basis |00>, |01>, |10>, |11>:
///
///   [ v  0   0   0 ]
///   [ 0  w1  z*  0 ]
///   [ 0  z   w2  0 ]
///   [ 0  0   0   u ]
struct TwoSiteReducedDensity {
  double v = 0.0;
  double u = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  cplx z{};

  void validate() const {
    constexpr double tol = 1e-10;
    if (std::abs(v + u + w1 + w2 - 1.0) > tol) throw InvalidDensity("reduced density trace differs from 1");
    if (v < -1e-12 || u < -1e-12 || w1 < -1e-12 || w2 < -1e-12)
      throw InvalidDensity("reduced density has a negative population");
    if (std::norm(z) > w1 * w2 + tol) throw InvalidDensity("coherence violates positivity |z|^2 <= w1 w2");
  }

  CMatrix to_matrix() const {
    CMatrix m(4, 4);
    m(0, 0) = v;
    m(1, 1) = w1;
    m(1, 2) = std::conj(z);
    m(2, 1) = z;
    m(2, 2) = w2;
    m(3, 3) = u;
    return m;
  }
};

namespace detail {

inline void require_pairwise(const OneParticleState& s) {
  if (s.size() < 2) throw InvalidState("pairwise measures need N >= 2");
}

inline void require_pair(const OneParticleState& s, Site i, Site j) {
  require_pairwise(s);
  const std::size_t n = s.size();
  if (i.value < 1 || i.value > n || j.value < 1 || j.value > n)
    throw IndexError("site pair (" + std::to_string(i.value) + "," + std::to_string(j.value) + ") outside 1.." +
                     std::to_string(n));
  if (i.value >= j.value) throw IndexError("site pair must satisfy i < j");
}

inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

} // namespace detail

/// C_ij = 2 |phi_i| |phi_j| for 1 <= i < j <= N.
inline double pair_concurrence(const OneParticleState& s, Site i, Site j) {
  detail::require_pair(s, i, j);
  return 2.0 * std::abs(s[i]) * std::abs(s[j]);
}

inline TwoSiteReducedDensity reduce_two_site(const OneParticleState& s, Site i, Site j) {
  detail::require_pair(s, i, j);
  TwoSiteReducedDensity r;
  r.w1 = std::norm(s[j]);
  r.w2 = std::norm(s[i]);
  r.u = 0.0;
  r.v = 1.0 - r.w1 - r.w2;
  r.z = s[i] * std::conj(s[j]);
  return r;
}

/// Wootters concurrence of a number-conserving two-qubit block,
/// 2 max(|z| - sqrt(u v), 0).
inline double wootters_concurrence(const TwoSiteReducedDensity& rho) {
  rho.validate();
  return 2.0 * std::max(std::abs(rho.z) - std::sqrt(std::max(0.0, rho.u) * std::max(0.0, rho.v)), 0.0);
}

/// Mean pairwise concurrence, ((sum_i |phi_i|)^2 - 1) / (N(N-1)/2).
inline double average_concurrence(const OneParticleState& s) {
  detail::require_pairwise(s);
  double l1 = 0.0;
  for (const auto& a : s.amplitudes()) l1 += std::abs(a);
  return std::max(0.0, l1 * l1 - 1.0) / static_cast<double>(detail::pair_count(s.size()));
}

/// Renyi entropy of order 1/2 of the site populations, 2 ln sum_i |phi_i|.
inline double renyi_half(const OneParticleState& s) {
  detail::require_pairwise(s);
  double l1 = 0.0;
  for (const auto& a : s.amplitudes()) l1 += std::abs(a);
  return 2.0 * std::log(l1);
}

/// r-th neighbour concurrence (1/N) sum_i C_{i, i+r}, indices wrapping
/// periodically.
inline double neighbor_concurrence(const OneParticleState& s, std::size_t r) {
  detail::require_pairwise(s);
  const std::size_t n = s.size();
  if (r < 1 || r > n - 1) throw IndexError("neighbour distance r=" + std::to_string(r) + " outside 1.." + std::to_string(n - 1));
  const auto a = s.amplitudes();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::abs(a[i]) * std::abs(a[(i + r) % n]);
  return 2.0 * sum / static_cast<double>(n);
}

enum class PairDetail { Keep, Skip };

/// Per-state entanglement summary.
struct ConcurrenceSummary {
  std::size_t n_sites = 0;
  double average = 0.0;
  /// C_ij for i < j in row order (1,2), (1,3), ..., (N-1,N). Empty when the
  /// summary was built with PairDetail::Skip.
  std::vector<double> pair_values;
  /// C_r for r = 1..floor(N/2).
  std::vector<double> neighbor_profile;

  /// Offset of pair (i, j), i < j, inside pair_values.
  static std::size_t pair_offset(std::size_t n, Site i, Site j) {
    const std::size_t a = i.value - 1;
    const std::size_t b = j.value - 1;
    return a * n - a * (a + 1) / 2 + (b - a - 1);
  }
};

inline ConcurrenceSummary summarize(const OneParticleState& s, PairDetail detail = PairDetail::Keep) {
  detail::require_pairwise(s);
  const std::size_t n = s.size();
  std::vector<double> mag(n);
  std::transform(s.amplitudes().begin(), s.amplitudes().end(), mag.begin(), [](const cplx& a) { return std::abs(a); });

  ConcurrenceSummary out;
  out.n_sites = n;
  out.average = average_concurrence(s);
  if (detail == PairDetail::Keep) {
    out.pair_values.reserve(detail::pair_count(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) out.pair_values.push_back(2.0 * mag[i] * mag[j]);
  }
  out.neighbor_profile.resize(n / 2);
  for (std::size_t r = 1; r <= n / 2; ++r) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += mag[i] * mag[(i + r) % n];
    out.neighbor_profile[r - 1] = 2.0 * sum / static_cast<double>(n);
  }
  return out;
}

} // namespace magnon
