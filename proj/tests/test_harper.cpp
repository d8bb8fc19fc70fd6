#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magnon/harper.hpp"

using namespace magnon;
using namespace magnon::harper;

namespace {
constexpr double kNGamma = 101.0 * kGoldenGamma;
}

TEST(BuildHarper, FreeRingN3) {
  const auto s = numerics::eig_hermitian(build_harper({3, 0.0, 1.0, 0.0}));
  EXPECT_NEAR(s.values[0], -0.5, 1e-13);
  EXPECT_NEAR(s.values[1], -0.5, 1e-13);
  EXPECT_NEAR(s.values[2], 1.0, 1e-13);
}

TEST(BuildHarper, TwoSitesAccumulateBothBonds) {
  const auto h = build_harper({2, 0.0, 1.0, 0.0});
  EXPECT_NEAR(h(0, 1).real(), 1.0, 1e-15);
  const auto s = numerics::eig_hermitian(h);
  EXPECT_NEAR(s.values[0], -1.0, 1e-14);
  EXPECT_NEAR(s.values[1], 1.0, 1e-14);
}

TEST(BuildHarper, RealAndComplexCases) {
  EXPECT_TRUE(build_harper({7, 0.4, 1.0, 0.0}).is_real());
  const auto h = build_harper({7, 0.4, 1.0, 0.25});
  EXPECT_FALSE(h.is_real());
  EXPECT_NEAR(std::abs(h(6, 0)), 0.5, 1e-15);
  EXPECT_NEAR(h(6, 0).real(), 0.0, 1e-15);
  EXPECT_NEAR(h(6, 0).imag(), -0.5, 1e-15);
  EXPECT_EQ(h(0, 6), std::conj(h(6, 0)));
}

TEST(BuildHarper, OnsiteTerm) {
  const auto h = build_harper({5, 0.7, 1.3, 0.1});
  for (std::size_t j = 1; j <= 5; ++j)
    EXPECT_NEAR(h(j - 1, j - 1).real(), 0.7 * std::cos(2.0 * std::numbers::pi * 1.3 * static_cast<double>(j) / 5.0), 1e-15);
}

TEST(BuildHarper, SpectrumBounded) {
  for (double g : {0.0, 0.5, 1.0, 2.5}) {
    for (double beta : {0.0, 0.3}) {
      const auto s = numerics::eig_hermitian(build_harper({60, g, 60.0 * kGoldenGamma, beta}));
      EXPECT_GE(s.values.front(), -(1.0 + g) - 1e-9);
      EXPECT_LE(s.values.back(), (1.0 + g) + 1e-9);
    }
  }
}

TEST(BuildHarper, Validation) {
  EXPECT_THROW(build_harper({1, 0.0, 1.0, 0.0}), DomainError);
  EXPECT_THROW(build_harper({5, -1.0, 1.0, 0.0}), DomainError);
  EXPECT_THROW(build_harper({5, 1.0, 0.0, 0.0}), DomainError);
  EXPECT_THROW(build_harper({5, std::nan(""), 1.0, 0.0}), DomainError);
}

TEST(BuildHarper, TwistPeriodicity) {
  const auto a = numerics::eig_hermitian(build_harper({40, 0.8, 40.0 * kGoldenGamma, 0.2}));
  const auto b = numerics::eig_hermitian(build_harper({40, 0.8, 40.0 * kGoldenGamma, 1.2}));
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a.values[k], b.values[k], 1e-12);
}

TEST(BuildHarper, TimeReversalAtZeroTwist) {
  // H real: the conjugate of every eigenvector is an eigenvector with the same energy.
  const auto h = build_harper({30, 0.6, 30.0 * kGoldenGamma, 0.0});
  const auto s = numerics::eig_hermitian(h);
  for (std::size_t k = 0; k < s.size(); ++k) {
    auto v = s.vector(k);
    for (auto& x : v) x = std::conj(x);
    const auto hv = h.entries() * v;
    double r = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) r += std::norm(hv[i] - s.values[k] * v[i]);
    EXPECT_LE(std::sqrt(r), 1e-10);
  }
}

TEST(SpectralConcurrence, FreeTwistedRingIsMomentumStates) {
  const auto sc = spectral_concurrence(HamiltonianSpec{101, 0.0, 1.0, 0.25});
  ASSERT_EQ(sc.per_state.size(), 101u);
  for (const auto& s : sc.per_state) EXPECT_NEAR(s.average, 2.0 / 101.0, 1e-10);
}

TEST(SpectralConcurrence, StrongPotentialLocalizes) {
  EXPECT_LT(spectral_concurrence(HamiltonianSpec{101, 100.0, kNGamma, 0.0}).spectral_average, 1e-3);
}

TEST(SpectralConcurrence, DegenerateFreeRingBelowBound) {
  EXPECT_LE(spectral_concurrence(HamiltonianSpec{101, 0.0, 1.0, 0.0}).spectral_average, 2.0 / 101.0 + 1e-12);
}

TEST(SpectralConcurrence, Invariants) {
  const HamiltonianSpec spec{51, 0.9, 51.0 * kGoldenGamma, 0.1};
  const auto sc = spectral_concurrence(spec);
  ASSERT_EQ(sc.energies.size(), sc.per_state.size());
  EXPECT_TRUE(std::is_sorted(sc.energies.begin(), sc.energies.end()));
  double mean = 0.0;
  for (const auto& s : sc.per_state) {
    mean += s.average;
    EXPECT_LE(s.average, 2.0 / 51.0 + 1e-12);
  }
  EXPECT_NEAR(sc.spectral_average, mean / 51.0, 1e-12);

  CMatrix shifted = build_harper(spec).entries();
  for (std::size_t i = 0; i < 51; ++i) shifted(i, i) += 3.0;
  EXPECT_NEAR(spectral_concurrence(HermitianMatrix(shifted)).spectral_average, sc.spectral_average, 1e-10);
}

TEST(SweepG, IncommensurateTransition) {
  const auto pts = sweep_g({101, 0.0, kNGamma, 0.0}, {0.5, 1.5});
  EXPECT_LT(pts[1].spectral_average / pts[0].spectral_average, 0.1);
}

TEST(SweepG, ZeroEntryMatchesDirectEvaluation) {
  const auto pts = sweep_g({101, 0.0, 1.0, 0.25}, {0.0, 0.3});
  EXPECT_DOUBLE_EQ(pts[0].spectral_average, spectral_concurrence(HamiltonianSpec{101, 0.0, 1.0, 0.25}).spectral_average);
  EXPECT_EQ(pts[0].g, 0.0);
  EXPECT_EQ(pts[1].g, 0.3);
}

TEST(SweepG, CommensurateDecrease) {
  const auto pts = sweep_g({101, 0.0, 1.0, 0.0}, {0.2, 2.0});
  EXPECT_LT(pts[1].spectral_average, pts[0].spectral_average);
}

TEST(SweepG, ThreadCountDoesNotChangeResults) {
  const std::vector<double> gs{0.1, 0.7, 1.3, 1.9};
  const auto a = sweep_g({41, 0.0, 41.0 * kGoldenGamma, 0.1}, gs, 1);
  const auto b = sweep_g({41, 0.0, 41.0 * kGoldenGamma, 0.1}, gs, 3);
  for (std::size_t i = 0; i < gs.size(); ++i) EXPECT_EQ(a[i].spectral_average, b[i].spectral_average);
  EXPECT_THROW(sweep_g({41, 0.0, 1.0, 0.0}, {}), DomainError);
}

TEST(ScalingExponent, FreeParticleIsExactlyOne) {
  // sigma = N gamma does not matter at g = 0; every state is a momentum state.
  EXPECT_NEAR(scaling_exponent(0.0, {21, 34, 55, 89}, kGoldenGamma, 0.25), 1.0, 1e-9);
  EXPECT_THROW(scaling_exponent(0.0, {21, 34}), DomainError);
}

TEST(ConcurrenceVsEnergy, PlateauAndTails) {
  const auto pts = concurrence_vs_energy({101, 0.5, 1.0, 0.0});
  ASSERT_EQ(pts.size(), 101u);
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end(), [](auto a, auto b) { return a.scaled_energy < b.scaled_energy; }));
  std::vector<double> plateau;
  for (const auto& p : pts) {
    EXPECT_LE(p.average, 2.0 / 101.0 + 1e-12);
    EXPECT_GE(p.scaled_energy, -1.0 - 1e-12);
    EXPECT_LE(p.scaled_energy, 1.0 + 1e-12);
    if (std::abs(p.scaled_energy * 1.5) < 0.5) plateau.push_back(p.average);
  }
  ASSERT_FALSE(plateau.empty());
  std::vector<double> sorted = plateau;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  for (double v : plateau) EXPECT_LE(std::abs(v - median), 0.25 * median);
  EXPECT_LT(pts.front().average, median);
  EXPECT_LT(pts.back().average, median);
}

TEST(ConcurrenceVsEnergy, FlatForFreeTwistedRing) {
  for (const auto& p : concurrence_vs_energy({64, 0.0, 1.0, 0.25})) EXPECT_NEAR(p.average, 2.0 / 64.0, 1e-10);
}
