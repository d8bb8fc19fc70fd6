#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "magnon/numerics/matrix.hpp"
#include "magnon/numerics/symmetric_eigen.hpp"

namespace magnon::numerics {

/// Absolute gap below which eigenvalues of (U + U^dagger)/2 are grouped and
/// resolved by the sine part.
inline constexpr double kUnitaryClusterGap = 1e-6;

/// Rotates v so that its largest-magnitude component is real and positive.
/// Near-ties (relative 1e-10) go to the lowest index.
inline void fix_phase(std::span<cplx> v) {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > best_mag * (1.0 + 1e-10)) {
      best = i;
      best_mag = mag;
    }
  }
  if (best_mag <= 0.0) return;
  const cplx rot = std::conj(v[best]) / best_mag;
  for (auto& x : v) x *= rot;
  v[best] = cplx(std::abs(v[best]), 0.0);
}

namespace detail {

inline std::vector<std::pair<std::size_t, std::size_t>> clusters(const RVector& sorted, double gap) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t k = 1; k <= sorted.size(); ++k) {
    if (k == sorted.size() || sorted[k] - sorted[k - 1] > gap) {
      out.emplace_back(start, k);
      start = k;
    }
  }
  return out;
}

inline double rayleigh(const CMatrix& h, std::span<const cplx> v) {
  const CVector hv = h * v;
  return inner(v, hv).real();
}

inline SpectralSet assemble(std::vector<std::pair<double, CVector>> pairs) {
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  const std::size_t n = pairs.size();
  SpectralSet out{RVector(n), CMatrix(n, n), 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    fix_phase(pairs[k].second);
    out.values[k] = pairs[k].first;
    out.vectors.set_column(k, std::span<const cplx>(pairs[k].second));
  }
  return out;
}

} // namespace detail

/// Max over columns of ||M v - lambda v||_2.
inline double hermitian_residual(const CMatrix& m, const SpectralSet& s) {
  double worst = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const CVector v = s.vector(k);
    const CVector mv = m * v;
    double r = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) r += std::norm(mv[i] - s.values[k] * v[i]);
    worst = std::max(worst, std::sqrt(r));
  }
  return worst;
}

/// Max over columns of ||U v - e^{i theta} v||_2.
inline double unitary_residual(const CMatrix& u, const SpectralSet& s) {
  double worst = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const CVector v = s.vector(k);
    const CVector uv = u * v;
    const cplx phase = std::polar(1.0, s.values[k]);
    double r = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) r += std::norm(uv[i] - phase * v[i]);
    worst = std::max(worst, std::sqrt(r));
  }
  return worst;
}

namespace detail {

// Reduces the complex Hermitian h to real symmetric tridiagonal form with
// Hermitian Householder reflectors P = I - 2 w w^dagger, then diagonalizes
// the tridiagonal by implicit QL. Eigenvectors are Q D Z with Q the
// accumulated reflectors, D the diagonal phase that makes the off-diagonal
// real and Z the QL rotations.
inline std::vector<std::pair<double, CVector>> complex_hermitian_eigen(const CMatrix& h) {
  const std::size_t n = h.rows();
  CMatrix a = h;
  CMatrix q = CMatrix::identity(n);
  CVector w(n), p(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1; // length of the column below the diagonal
    double nrm = 0.0;
    for (std::size_t i = 0; i < m; ++i) nrm += std::norm(a(k + 1 + i, k));
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) continue;
    const cplx x0 = a(k + 1, k);
    const cplx phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cplx(1.0, 0.0);
    const cplx alpha = -phase * nrm;

    for (std::size_t i = 0; i < m; ++i) w[i] = a(k + 1 + i, k);
    w[0] -= alpha;
    const double wn = std::sqrt(2.0 * nrm * (nrm + std::abs(x0)));
    for (std::size_t i = 0; i < m; ++i) w[i] /= wn;

    // Trailing block B <- P B P = B - 2 (w r^dagger + r w^dagger), r = Bw - (w^dagger B w) w.
    cplx kappa{};
    for (std::size_t i = 0; i < m; ++i) {
      cplx acc{};
      auto row = a.row(k + 1 + i);
      for (std::size_t j = 0; j < m; ++j) acc += row[k + 1 + j] * w[j];
      p[i] = acc;
      kappa += std::conj(w[i]) * acc;
    }
    for (std::size_t i = 0; i < m; ++i) p[i] -= kappa.real() * w[i];
    for (std::size_t i = 0; i < m; ++i) {
      auto row = a.row(k + 1 + i);
      for (std::size_t j = 0; j < m; ++j)
        row[k + 1 + j] -= 2.0 * (w[i] * std::conj(p[j]) + p[i] * std::conj(w[j]));
    }
    a(k + 1, k) = alpha;
    a(k, k + 1) = std::conj(alpha);
    for (std::size_t i = 1; i < m; ++i) {
      a(k + 1 + i, k) = 0.0;
      a(k, k + 1 + i) = 0.0;
    }

    // Q <- Q P on columns k+1..n-1.
    for (std::size_t r = 0; r < n; ++r) {
      auto row = q.row(r);
      cplx t{};
      for (std::size_t j = 0; j < m; ++j) t += row[k + 1 + j] * w[j];
      t *= 2.0;
      for (std::size_t j = 0; j < m; ++j) row[k + 1 + j] -= t * std::conj(w[j]);
    }
  }

  RVector d(n), e(n, 0.0);
  CVector phase(n, cplx(1.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const cplx off = a(i + 1, i);
    const double mag = std::abs(off);
    e[i + 1] = mag;
    phase[i + 1] = mag > 0.0 ? phase[i] * off / mag : phase[i];
  }

  RMatrix zt = RMatrix::identity(n);
  implicit_ql(d, e, zt, 60);

  std::vector<std::pair<double, CVector>> pairs;
  pairs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto z = zt.row(k);
    CVector v(n);
    for (std::size_t r = 0; r < n; ++r) {
      auto qrow = q.row(r);
      cplx acc{};
      for (std::size_t j = 0; j < n; ++j) acc += qrow[j] * phase[j] * z[j];
      v[r] = acc;
    }
    pairs.emplace_back(d[k], std::move(v));
  }
  return pairs;
}

} // namespace detail

/// Dense Hermitian eigendecomposition, eigenvalues ascending.
///
/// Real symmetric input goes through Householder tridiagonalization and
/// implicit QL directly and yields real eigenvectors; complex input is
/// first reduced to a real tridiagonal by complex reflectors and a diagonal
/// phase, then shares the same QL kernel.
inline SpectralSet eig_hermitian(const HermitianMatrix& m) {
  const std::size_t n = m.dim();
  const CMatrix& h = m.entries();

  std::vector<std::pair<double, CVector>> pairs;
  if (m.is_real()) {
    RMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = h(i, j).real();
    const SymmetricEigen se = eig_symmetric(a);
    pairs.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      CVector v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = se.vectors(i, k);
      pairs.emplace_back(se.values[k], std::move(v));
    }
  } else {
    pairs = detail::complex_hermitian_eigen(h);
  }

  SpectralSet out = detail::assemble(std::move(pairs));
  out.max_residual = hermitian_residual(h, out);
  return out;
}

/// Dense unitary eigendecomposition with eigenphases in [-pi, pi).
///
/// Diagonalizes the commuting Hermitian pair A = (U + U^dagger)/2 and
/// B = (U - U^dagger)/2i: clusters of nearly equal cos(theta) are split by
/// diagonalizing B inside the cluster.
inline SpectralSet eig_unitary(const UnitaryMatrix& u) {
  const std::size_t n = u.dim();
  const CMatrix& um = u.entries();

  CMatrix a(n, n), b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const cplx uij = um(i, j);
      const cplx uji_c = std::conj(um(j, i));
      a(i, j) = 0.5 * (uij + uji_c);
      b(i, j) = cplx(0.0, -0.5) * (uij - uji_c);
      a(j, i) = std::conj(a(i, j));
      b(j, i) = std::conj(b(i, j));
    }
    a(i, i) = a(i, i).real();
    b(i, i) = b(i, i).real();
  }

  const SpectralSet ea = eig_hermitian(HermitianMatrix(a));

  std::vector<std::pair<double, CVector>> pairs;
  pairs.reserve(n);
  auto push = [&](CVector v) {
    const CVector uv = um * v;
    double theta = std::arg(inner(v, uv));
    if (theta >= std::numbers::pi) theta -= 2.0 * std::numbers::pi;
    pairs.emplace_back(theta, std::move(v));
  };

  for (const auto& [lo, hi] : detail::clusters(ea.values, kUnitaryClusterGap)) {
    const std::size_t m = hi - lo;
    if (m == 1) {
      push(ea.vector(lo));
      continue;
    }
    CMatrix basis(n, m);
    for (std::size_t c = 0; c < m; ++c) basis.set_column(c, std::span<const cplx>(ea.vector(lo + c)));
    CMatrix bc = adjoint(basis) * (b * basis);
    for (std::size_t i = 0; i < m; ++i) {
      bc(i, i) = bc(i, i).real();
      for (std::size_t j = i + 1; j < m; ++j) {
        const cplx avg = 0.5 * (bc(i, j) + std::conj(bc(j, i)));
        bc(i, j) = avg;
        bc(j, i) = std::conj(avg);
      }
    }
    const SpectralSet eb = eig_hermitian(HermitianMatrix(bc));
    const CMatrix rotated = basis * eb.vectors;
    for (std::size_t c = 0; c < m; ++c) {
      CVector v = rotated.column(c);
      const double nrm = norm2(v);
      for (auto& x : v) x /= nrm;
      push(std::move(v));
    }
  }

  SpectralSet out = detail::assemble(std::move(pairs));
  out.max_residual = unitary_residual(um, out);
  return out;
}

} // namespace magnon::numerics
