#include <gtest/gtest.h>

#include <cmath>

#include "vlasov1d/errors.hpp"
#include "vlasov1d/kernel.hpp"
#include "vlasov1d/rng.hpp"

using namespace vlasov1d;

TEST(Potential, Examples) {
  EXPECT_EQ(potential(wrap(0.0)), 0.0);
  EXPECT_DOUBLE_EQ(potential(wrap(0.25)), -0.09375);
  EXPECT_DOUBLE_EQ(potential(wrap(-0.5)), -0.125);
}

TEST(ForceKernel, Examples) {
  EXPECT_EQ(force_kernel(wrap(0.0)), 0.0);
  EXPECT_DOUBLE_EQ(force_kernel(wrap(0.25)), -0.25);
  EXPECT_EQ(force_kernel(wrap(-0.5)), 0.0);
}

TEST(ForceKernel, OddBoundedAndDerivativeOfPotential) {
  Rng rng(5);
  for (int k = 0; k < 5000; ++k) {
    const double x = rng.uniform() - 0.5;
    const double f = force_kernel(wrap(x));
    EXPECT_EQ(force_kernel(wrap(-x)), -f) << x;
    EXPECT_LE(std::abs(f), 0.5);
    EXPECT_EQ(f, x - exact_sign(x) / 2);
    if (std::abs(x) > 1e-3 && std::abs(x) < 0.5 - 1e-3) {
      const double h = 1e-6;
      const double fd = (potential(wrap(x + h)) - potential(wrap(x - h))) / (2 * h);
      EXPECT_NEAR(fd, f, 1e-8);
    }
  }
}

TEST(MollifiedForce, Examples) {
  EXPECT_EQ(mollified_force(wrap(0.0), 0.1), 0.0);
  EXPECT_NEAR(mollified_force(wrap(0.1), 0.1), -0.4, 1e-15);
  EXPECT_NEAR(mollified_force(wrap(0.3), 0.1), -0.2, 1e-15);
}

TEST(MollifiedPotential, Examples) {
  EXPECT_NEAR(mollified_potential(wrap(0.1), 0.1), -0.045, 1e-15);
  EXPECT_NEAR(mollified_potential(wrap(0.0), 0.1), -0.025, 1e-15);
  EXPECT_NEAR(mollified_potential(wrap(0.4), 0.1), -0.12, 1e-15);
}

TEST(Mollified, RejectsBadEpsilon) {
  for (double eps : {0.0, -0.1, 0.5, 0.7, std::nan("")}) {
    EXPECT_THROW(mollified_force(wrap(0.1), eps), InvalidArgument);
    EXPECT_THROW(mollified_potential(wrap(0.1), eps), InvalidArgument);
    EXPECT_THROW(KernelKind::mollified(eps), InvalidArgument);
  }
}

TEST(Mollified, Properties) {
  Rng rng(9);
  for (double eps : {0.3, 0.1, 0.01}) {
    for (int k = 0; k < 2000; ++k) {
      const double x = rng.uniform() - 0.5;
      const double f = mollified_force(wrap(x), eps);
      if (x != -0.5) EXPECT_NEAR(mollified_force(wrap(-x), eps), -f, 1e-15);
      EXPECT_LE(std::abs(f), 0.5);
      const double gap = std::abs(f - force_kernel(wrap(x)));
      if (std::abs(x) > eps) EXPECT_EQ(gap, 0.0);
      else EXPECT_LE(gap, 0.5 + 1e-15);
      const double y = rng.uniform() - 0.5;
      EXPECT_LE(std::abs(f - mollified_force(wrap(y), eps)),
                std::abs(torus_diff(wrap(x), wrap(y)).value()) / (2 * eps) + 1e-12);
      const double w = mollified_potential(wrap(x), eps);
      EXPECT_GE(w, -0.125 - 1e-15);
      EXPECT_LE(w, 0.0);
    }
    // continuity at the knots
    const double a = std::nextafter(eps, 0.0), b = std::nextafter(eps, 1.0);
    EXPECT_NEAR(mollified_force(wrap(a), eps), mollified_force(wrap(b), eps), 1e-12);
    EXPECT_NEAR(mollified_potential(wrap(a), eps), mollified_potential(wrap(b), eps), 1e-12);
  }
}

TEST(KernelKind, Dispatch) {
  const auto exact = KernelKind::exact();
  const auto moll = KernelKind::mollified(0.1);
  EXPECT_TRUE(exact.is_exact());
  EXPECT_FALSE(moll.is_exact());
  EXPECT_EQ(moll.epsilon(), 0.1);
  EXPECT_EQ(kernel_force(wrap(0.05), exact), force_kernel(wrap(0.05)));
  EXPECT_EQ(kernel_force(wrap(0.05), moll), mollified_force(wrap(0.05), 0.1));
  EXPECT_EQ(kernel_potential(wrap(0.05), moll), mollified_potential(wrap(0.05), 0.1));
}
