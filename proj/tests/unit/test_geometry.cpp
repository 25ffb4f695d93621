#include <gtest/gtest.h>

#include <cmath>

#include "vlasov1d/geometry.hpp"
#include "vlasov1d/rng.hpp"

using namespace vlasov1d;

TEST(Wrap, Examples) {
  EXPECT_DOUBLE_EQ(wrap(0.75).value(), -0.25);
  EXPECT_EQ(wrap(0.0).value(), 0.0);
  EXPECT_EQ(wrap(0.5).value(), -0.5);
  EXPECT_EQ(wrap(-0.5).value(), -0.5);
  EXPECT_DOUBLE_EQ(wrap(3.25).value(), 0.25);
  EXPECT_DOUBLE_EQ(wrap(-7.75).value(), 0.25);
}

TEST(Wrap, RejectsNonFinite) {
  EXPECT_THROW(wrap(std::nan("")), std::invalid_argument);
  EXPECT_THROW(wrap(INFINITY), std::invalid_argument);
}

TEST(Wrap, HalfOpenAndIdempotent) {
  Rng rng(7);
  for (int k = 0; k < 20000; ++k) {
    const double r = (rng.uniform() - 0.5) * 1e3 * rng.uniform();
    const TorusCoord a = wrap(r);
    EXPECT_GE(a.value(), -0.5);
    EXPECT_LT(a.value(), 0.5);
    EXPECT_EQ(wrap(a.value()), a);
  }
  // values just below 1/2 must not round up onto the excluded endpoint
  const double below = std::nextafter(0.5, 0.0);
  EXPECT_LT(wrap(below).value(), 0.5);
  EXPECT_LT(wrap(-std::nextafter(0.5, 1.0) + 1e-17).value(), 0.5);
}

TEST(TorusDiff, Examples) {
  EXPECT_NEAR(torus_diff(wrap(0.4), wrap(-0.4)).value(), -0.2, 1e-15);
  EXPECT_EQ(torus_diff(wrap(0.123), wrap(0.123)).value(), 0.0);
  EXPECT_EQ(torus_diff(wrap(0.25), wrap(-0.25)).value(), -0.5);
  EXPECT_EQ(torus_diff(wrap(-0.25), wrap(0.25)).value(), -0.5);
}

TEST(TorusDiff, Antisymmetric) {
  Rng rng(11);
  for (int k = 0; k < 5000; ++k) {
    const TorusCoord a = wrap(rng.uniform()), b = wrap(rng.uniform());
    const double d = torus_diff(a, b).value();
    if (d == -0.5) continue;
    EXPECT_EQ(torus_diff(b, a).value(), -d);
    EXPECT_LE(torus_distance(a, b), 0.5);
  }
}

TEST(PhaseDistance, Examples) {
  EXPECT_DOUBLE_EQ(phase_distance({wrap(0), 0}, {wrap(0), 1}), 1.0);
  EXPECT_NEAR(phase_distance({wrap(0.45), 0}, {wrap(-0.45), 0}), 0.1, 1e-15);
  EXPECT_NEAR(phase_distance({wrap(0.3), 0.4}, {wrap(0.0), 0.0}), 0.5, 1e-15);
}

TEST(PhaseDistance, MetricAxioms) {
  Rng rng(3);
  auto point = [&] { return PhasePoint{wrap(rng.uniform()), 4 * rng.uniform() - 2}; };
  for (int k = 0; k < 2000; ++k) {
    const PhasePoint p = point(), q = point(), r = point();
    EXPECT_EQ(phase_distance(p, q), phase_distance(q, p));
    EXPECT_EQ(phase_distance(p, p), 0.0);
    EXPECT_LE(phase_distance(p, r), phase_distance(p, q) + phase_distance(q, r) + 1e-12);
  }
}
