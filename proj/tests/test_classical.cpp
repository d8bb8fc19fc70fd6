#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "magnon/classical.hpp"

using namespace magnon;
using namespace magnon::classical;

TEST(MapStep, HandExamples) {
  const auto a = map_step({0.0, 0.0}, 0.5, 1.0);
  EXPECT_NEAR(a.q, 0.0, 1e-15);
  EXPECT_NEAR(a.p, 0.0, 1e-15);

  const auto b = map_step({0.5, 0.25}, 0.5, 1.0);
  EXPECT_NEAR(b.q, 0.0, 1e-15);
  EXPECT_NEAR(b.p, 0.25, 1e-15);

  const auto c = map_step({0.25, 0.0}, 0.5, 1.0);
  EXPECT_NEAR(c.q, 0.25, 1e-15);
  EXPECT_NEAR(c.p, 0.5, 1e-15);
}

TEST(MapStep, StaysOnUnitTorus) {
  TorusPoint pt{0.123, 0.987};
  for (int i = 0; i < 10000; ++i) {
    pt = map_step(pt, 0.9, 1.7);
    ASSERT_GE(pt.q, 0.0);
    ASSERT_LT(pt.q, 1.0);
    ASSERT_GE(pt.p, 0.0);
    ASSERT_LT(pt.p, 1.0);
  }
  EXPECT_EQ(wrap_unit(-1e-20), 0.0);
  EXPECT_EQ(wrap_unit(1.0), 0.0);
  EXPECT_NEAR(wrap_unit(-0.25), 0.75, 1e-15);
}

TEST(MapStep, AreaPreserving) {
  for (double tau : {0.1, 0.5, 0.9})
    for (double q : {0.0, 0.13, 0.71})
      for (double p : {0.05, 0.5, 0.88}) EXPECT_NEAR(jacobian_check({q, p}, tau, 1.3), 1.0, 1e-6);
}

TEST(MapStep, ReversibleToRoundoff) {
  TorusPoint pt{0.3141, 0.2718};
  for (int i = 0; i < 1000; ++i) {
    const auto back = inverse_step(map_step(pt, 0.7, 1.0), 0.7, 1.0);
    double dq = std::abs(back.q - pt.q), dp = std::abs(back.p - pt.p);
    dq = std::min(dq, 1.0 - dq);
    dp = std::min(dp, 1.0 - dp);
    ASSERT_LE(dq, 1e-12);
    ASSERT_LE(dp, 1e-12);
    pt = map_step(pt, 0.7, 1.0);
  }
}

TEST(Portrait, FixedPointSeedIsSinglePoint) {
  const auto orbits = portrait(0.5, 1.0, {{0.0, 0.0}}, 100);
  ASSERT_EQ(orbits.size(), 1u);
  EXPECT_EQ(orbits[0].size(), 1u);
  // sin(pi) is not exactly zero in floating point; the elliptic centre at tau = 0.1 only stays close.
  const auto centre = portrait(0.1, 1.0, {{0.5, 0.5}}, 100);
  for (const auto& pt : centre[0]) {
    EXPECT_NEAR(pt.q, 0.5, 1e-12);
    EXPECT_NEAR(pt.p, 0.5, 1e-12);
  }
  EXPECT_THROW(portrait(0.5, 1.0, {{0.1, 0.1}}, 0), DomainError);
}

TEST(Portrait, RegularOrbitStaysOnCurve) {
  const auto orbits = portrait(0.1, 1.0, {{0.5, 0.53}}, 5000);
  ASSERT_EQ(orbits[0].size(), 5000u);
  const auto [lo, hi] = std::minmax_element(orbits[0].begin(), orbits[0].end(),
                                            [](const TorusPoint& a, const TorusPoint& b) { return a.p < b.p; });
  EXPECT_LT(hi->p - lo->p, 0.1);
}

TEST(Portrait, ChaoticOrbitFillsTorus) {
  const auto orbits = portrait(0.7, 1.0, {{0.5, 0.001}}, 10000);
  EXPECT_GT(grid_coverage(orbits[0]), 0.5);
}

TEST(Portrait, DefaultSeeds) {
  const auto a = default_seeds();
  const auto b = default_seeds();
  ASSERT_EQ(a.size(), 30u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].q, b[i].q);
    EXPECT_EQ(a[i].p, b[i].p);
  }
  for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(a[i].q, 0.5);
  EXPECT_NE(default_seeds(2)[25].q, a[25].q);
  EXPECT_EQ(grid_coverage({{0.0, 0.0}, {0.01, 0.01}}, 20), 1.0 / 400.0);
}
