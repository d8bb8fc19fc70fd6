#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "magnon/harper.hpp"
#include "magnon/kicked.hpp"
#include "magnon/numerics/eigen.hpp"

using namespace magnon;
using namespace magnon::numerics;

namespace {

CMatrix random_hermitian(std::size_t n, std::uint64_t seed, bool real) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = cplx(g(rng), real ? 0.0 : g(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

double orthonormality_defect(const CMatrix& v) {
  CMatrix gram = adjoint(v) * v;
  for (std::size_t i = 0; i < gram.rows(); ++i) gram(i, i) -= 1.0;
  return max_abs(gram);
}

double reconstruction_error(const CMatrix& h, const SpectralSet& s) {
  CMatrix vl = s.vectors;
  for (std::size_t i = 0; i < vl.rows(); ++i)
    for (std::size_t k = 0; k < vl.cols(); ++k) vl(i, k) *= s.values[k];
  return max_abs(h - vl * adjoint(s.vectors));
}

double wrap_phase(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  x = std::fmod(x + std::numbers::pi, two_pi);
  if (x < 0) x += two_pi;
  return x - std::numbers::pi;
}

} // namespace

TEST(EigHermitian, PauliX) {
  CMatrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  const auto s = eig_hermitian(HermitianMatrix(m));
  EXPECT_NEAR(s.values[0], -1.0, 1e-14);
  EXPECT_NEAR(s.values[1], 1.0, 1e-14);
}

TEST(EigHermitian, OneByOne) {
  CMatrix m(1, 1);
  m(0, 0) = 3.5;
  const auto s = eig_hermitian(HermitianMatrix(m));
  EXPECT_DOUBLE_EQ(s.values[0], 3.5);
  EXPECT_DOUBLE_EQ(s.vectors(0, 0).real(), 1.0);
}

TEST(EigHermitian, HarperFreeRingN4) {
  const auto h = harper::build_harper({4, 0.0, 1.0, 0.0});
  const auto s = eig_hermitian(h);
  const double expected[] = {-1.0, 0.0, 0.0, 1.0};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(s.values[k], expected[k], 1e-12);
}

TEST(EigHermitian, HarperTwistedRingN4) {
  const double beta = 0.25;
  const auto s = eig_hermitian(harper::build_harper({4, 0.0, 1.0, beta}));
  std::vector<double> expected;
  for (int k = 1; k <= 4; ++k) expected.push_back(std::cos(2.0 * std::numbers::pi * (k + beta) / 4.0));
  std::sort(expected.begin(), expected.end());
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(s.values[k], expected[k], 1e-12);
}

TEST(EigHermitian, RealInputGivesRealVectors) {
  const auto h = random_hermitian(20, 3, true);
  const auto s = eig_hermitian(HermitianMatrix(h));
  for (auto z : s.vectors.data()) EXPECT_EQ(z.imag(), 0.0);
}

TEST(EigHermitian, RandomReconstruction) {
  for (std::size_t n : {2u, 3u, 7u, 32u, 101u, 256u}) {
    for (bool real : {true, false}) {
      const auto h = random_hermitian(n, 100 + n, real);
      const auto s = eig_hermitian(HermitianMatrix(h));
      const double scale = max_abs(h);
      EXPECT_LE(reconstruction_error(h, s), 1e-8 * scale) << "n=" << n << " real=" << real;
      EXPECT_LE(orthonormality_defect(s.vectors), 1e-8);
      EXPECT_LE(s.max_residual, 1e-8 * scale);
      EXPECT_TRUE(std::is_sorted(s.values.begin(), s.values.end()));
    }
  }
}

TEST(EigHermitian, DegenerateSpectrum) {
  CMatrix h = CMatrix::identity(6);
  h(0, 0) = 2.0;
  h(1, 2) = cplx(0.0, 1e-3);
  h(2, 1) = cplx(0.0, -1e-3);
  const auto s = eig_hermitian(HermitianMatrix(h));
  EXPECT_LE(reconstruction_error(h, s), 1e-12);
  EXPECT_LE(orthonormality_defect(s.vectors), 1e-12);
}

TEST(EigHermitian, PhaseConvention) {
  const auto h = random_hermitian(12, 9, false);
  const auto s = eig_hermitian(HermitianMatrix(h));
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto v = s.vector(k);
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (std::abs(v[i]) > std::abs(v[best]) * (1.0 + 1e-10)) best = i;
    EXPECT_EQ(v[best].imag(), 0.0);
    EXPECT_GT(v[best].real(), 0.0);
  }
}

TEST(EigHermitian, Errors) {
  CMatrix bad(2, 2);
  bad(0, 1) = 1.0;
  EXPECT_THROW(HermitianMatrix{bad}, InvalidMatrix);
  CMatrix nan(2, 2);
  nan(0, 0) = std::nan("");
  EXPECT_THROW(HermitianMatrix{nan}, InvalidMatrix);
  EXPECT_THROW(HermitianMatrix{CMatrix(2, 3)}, InvalidMatrix);

  RVector d{1.0, 2.0, 3.0}, e{0.0, 1.0, 1.0};
  RMatrix zt = RMatrix::identity(3);
  EXPECT_THROW(numerics::detail::implicit_ql(d, e, zt, 0), ConvergenceFailure);
}

TEST(EigUnitary, Identity) {
  const auto s = eig_unitary(UnitaryMatrix(CMatrix::identity(5)));
  for (double th : s.values) EXPECT_NEAR(th, 0.0, 1e-14);
}

TEST(EigUnitary, DiagonalIAndMinusOne) {
  CMatrix u(2, 2);
  u(0, 0) = cplx(0.0, 1.0);
  u(1, 1) = -1.0;
  const auto s = eig_unitary(UnitaryMatrix(u));
  // pi is reported as -pi on the half-open range [-pi, pi).
  EXPECT_NEAR(s.values[0], -std::numbers::pi, 1e-14);
  EXPECT_NEAR(s.values[1], 0.5 * std::numbers::pi, 1e-14);
}

TEST(EigUnitary, RejectsNonUnitary) {
  CMatrix u = CMatrix::identity(3);
  u(0, 0) = 1.001;
  EXPECT_THROW(UnitaryMatrix{u}, InvalidMatrix);
}

TEST(EigUnitary, FloquetResidualsAndOrthonormality) {
  for (double tau : {0.05, 0.1, 0.6, 0.8}) {
    for (double beta : {0.0, 0.2}) {
      const auto u = kicked::build_floquet({101, 1.0, tau, beta});
      const auto s = eig_unitary(u);
      EXPECT_LE(s.max_residual, 1e-8) << tau << " " << beta;
      EXPECT_LE(orthonormality_defect(s.vectors), 1e-8);
      EXPECT_TRUE(std::is_sorted(s.values.begin(), s.values.end()));
      for (double th : s.values) {
        EXPECT_GE(th, -std::numbers::pi);
        EXPECT_LT(th, std::numbers::pi);
      }
    }
  }
}

TEST(EigUnitary, GlobalPhaseShift) {
  const auto u = kicked::build_floquet({31, 1.0, 0.7, 0.2});
  const double gamma = 0.37;
  CMatrix shifted = u.entries();
  for (auto& z : shifted.data()) z *= std::polar(1.0, gamma);
  const auto a = eig_unitary(u);
  const auto b = eig_unitary(UnitaryMatrix(shifted));
  std::vector<double> moved;
  for (double th : a.values) moved.push_back(wrap_phase(th + gamma));
  std::sort(moved.begin(), moved.end());
  for (std::size_t k = 0; k < moved.size(); ++k) {
    const double d = std::abs(wrap_phase(moved[k] - b.values[k]));
    EXPECT_LE(d, 1e-9);
  }
}

TEST(EigUnitary, TrotterLimitMatchesHarperSpectrum) {
  const std::size_t n = 16;
  const double tau = 1e-4;
  const auto phases = eig_unitary(kicked::build_floquet({n, 1.0, tau, 0.0})).values;
  // U ~ exp(-i tau N H') with H' = cos(2 pi p) + g cos(2 pi q); H = H' in the site basis.
  const auto energies = eig_hermitian(harper::build_harper({n, 1.0, 1.0, 0.0})).values;
  std::vector<double> predicted;
  for (double e : energies) predicted.push_back(wrap_phase(-tau * static_cast<double>(n) * e));
  std::sort(predicted.begin(), predicted.end());
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(wrap_phase(phases[k] - predicted[k])));
  EXPECT_LE(worst, 1e-5);
}
