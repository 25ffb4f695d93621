#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "vlasov1d/errors.hpp"
#include "vlasov1d/particles.hpp"
#include "vlasov1d/rng.hpp"

using namespace vlasov1d;

namespace {

// Direct transcription of the pairwise sum, independent of the library.
std::vector<double> brute_force(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> f(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double d = x[i] - x[j];
      d -= std::floor(d + 0.5);
      const double s = d > 0 ? 1.0 : (d < 0 ? -1.0 : 0.0);
      f[i] -= (d - s / 2) / static_cast<double>(n);
    }
  }
  return f;
}

ParticleState random_state(std::size_t n, std::uint64_t seed, bool ties) {
  Rng rng(seed);
  std::vector<double> x(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = rng.uniform() - 0.5;
    v[i] = rng.uniform() - 0.5;
  }
  if (ties && n >= 4) {
    for (std::size_t k = 0; k < n / 4; ++k) x[rng.below(n)] = x[rng.below(n)];
    for (std::size_t k = 0; k < n / 8; ++k) {
      const std::size_t a = rng.below(n), b = rng.below(n);
      x[b] = x[a] >= 0 ? x[a] - 0.5 : x[a] + 0.5;
    }
    x[0] = -0.5;
    x[1] = 0.0;
  }
  return ParticleState::from_raw(x, v);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(ForceNaive, Examples) {
  const auto antipodal = ParticleState::from_raw(std::vector{-0.25, 0.25}, std::vector{0.3, -1.0});
  const auto f = force_naive(antipodal, KernelKind::exact());
  EXPECT_EQ(f[0], 0.0);
  EXPECT_EQ(f[1], 0.0);

  const auto pair = ParticleState::from_raw(std::vector{-0.1, 0.1}, std::vector{0.0, 0.0});
  const auto g = force_naive(pair, KernelKind::exact());
  EXPECT_NEAR(g[0], -0.15, 1e-15);
  EXPECT_NEAR(g[1], 0.15, 1e-15);

  const auto same = ParticleState::from_raw(std::vector{0.2, 0.2, 0.2}, std::vector{0.0, 1.0, 2.0});
  for (double h : force_naive(same, KernelKind::exact())) EXPECT_EQ(h, 0.0);
}

TEST(ForceNaive, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = random_state(50, seed, true);
    std::vector<double> x;
    for (auto p : s.positions) x.push_back(p.value());
    EXPECT_LE(max_abs_diff(force_naive(s, KernelKind::exact()), brute_force(x)), 1e-15);
  }
}

TEST(ForceSorted, Examples) {
  const auto one = ParticleState::from_raw(std::vector{0.3}, std::vector{1.0});
  EXPECT_EQ(force_sorted(one), std::vector<double>{0.0});

  const auto pairs =
      ParticleState::from_raw(std::vector{0.1, 0.1, -0.3, -0.3}, std::vector{0.0, 0.0, 0.0, 0.0});
  EXPECT_LE(max_abs_diff(force_sorted(pairs), force_naive(pairs, KernelKind::exact())), 1e-15);
  // partner at the same position exerts nothing, so F is half of the other pair's pull
  const auto f = force_sorted(pairs);
  EXPECT_EQ(f[0], f[1]);
  EXPECT_EQ(f[2], f[3]);
}

TEST(ForceSorted, OracleEquivalence) {
  for (std::size_t n : {2u, 3u, 17u, 64u, 1000u, 2000u}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto s = random_state(n, seed * 31 + n, seed % 2 == 0);
      EXPECT_LE(max_abs_diff(force_sorted(s), force_naive(s, KernelKind::exact())), 1e-12)
          << "n=" << n << " seed=" << seed;
    }
  }
}

TEST(ForceSorted, RejectsMollifiedKernel) {
  const auto s = random_state(8, 1, false);
  EXPECT_THROW(force_sorted(s, KernelKind::mollified(0.1)), UnsupportedKernel);
  EXPECT_NO_THROW(force_sorted(s, KernelKind::exact()));
}

TEST(Forces, MomentumAndPermutation) {
  const auto s = random_state(257, 42, true);
  for (const auto& kind : {KernelKind::exact(), KernelKind::mollified(0.05)}) {
    const auto f = compute_force(s, kind);
    const double total = std::accumulate(f.begin(), f.end(), 0.0);
    EXPECT_LE(std::abs(total), 1e-14 * 257);

    std::vector<std::size_t> perm(s.size());
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(1);
    for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    ParticleState p = s;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      p.positions[i] = s.positions[perm[i]];
      p.velocities[i] = s.velocities[perm[i]];
    }
    const auto fp = compute_force(p, kind);
    for (std::size_t i = 0; i < perm.size(); ++i) EXPECT_NEAR(fp[i], f[perm[i]], 1e-14);
  }
}

TEST(SawtoothSums, WeightedAgainstDirect) {
  Rng rng(4);
  std::vector<double> src(40), w(40), q(25);
  for (auto& s : src) s = rng.uniform() - 0.5;
  std::sort(src.begin(), src.end());
  for (auto& x : w) x = rng.uniform();
  for (auto& x : q) x = rng.uniform() - 0.5;
  q[0] = src[3];
  const auto out = sawtooth_sums(src, w, q);
  for (std::size_t i = 0; i < q.size(); ++i) {
    double acc = 0;
    for (std::size_t k = 0; k < src.size(); ++k) acc += w[k] * force_kernel(wrap(q[i] - src[k]));
    EXPECT_NEAR(out[i], acc, 1e-13);
  }
}

TEST(Step, Examples) {
  const auto antipodal = ParticleState::from_raw(std::vector{-0.25, 0.25}, std::vector{0.0, 0.0});
  for (auto scheme : {Integrator::SemiImplicitEuler, Integrator::VelocityVerlet}) {
    const auto next = step(antipodal, 0.37, KernelKind::exact(), scheme);
    EXPECT_EQ(next.positions, antipodal.positions);
    EXPECT_EQ(next.velocities, antipodal.velocities);
    EXPECT_DOUBLE_EQ(next.time, 0.37);
  }
  const auto single = ParticleState::from_raw(std::vector{0.49}, std::vector{0.3});
  const auto moved = step(single, 0.1, KernelKind::exact());
  EXPECT_NEAR(moved.positions[0].value(), -0.48, 1e-15);
  EXPECT_EQ(moved.velocities[0], 0.3);
  EXPECT_THROW(step(single, 0.0, KernelKind::exact()), InvalidArgument);
}

TEST(Simulate, TwoBodyClosedForm) {
  // symmetric pair at separation s0 obeys s'' = 1/2 - s
  const double s0 = 0.2;
  const auto init = ParticleState::from_raw(std::vector{-s0 / 2, s0 / 2}, std::vector{0.0, 0.0});
  const auto rec = simulate(init, 10.0, 1e-3, KernelKind::exact(), 10);
  double worst = 0;
  for (std::size_t k = 0; k < rec.states.size(); ++k) {
    const auto& st = rec.states[k];
    double s = st.positions[1].value() - st.positions[0].value();
    if (s < 0) s += 1.0;
    const double exact = 0.5 + (s0 - 0.5) * std::cos(rec.sample_times[k]);
    worst = std::max(worst, std::abs(s - exact));
  }
  EXPECT_LE(worst, 1e-4);
}

TEST(Simulate, VerletIsSecondOrder) {
  const auto init = ParticleState::from_raw(std::vector{-0.1, 0.1}, std::vector{0.0, 0.0});
  auto err = [&](double dt) {
    const auto rec = simulate(init, 2.0, dt, KernelKind::exact(), 1000000);
    const auto& st = rec.states.back();
    const double s = st.positions[1].value() - st.positions[0].value();
    return std::abs(s - (0.5 - 0.3 * std::cos(2.0)));
  };
  const double ratio = err(2e-2) / err(1e-2);
  EXPECT_GT(ratio, 3.5);
  EXPECT_LT(ratio, 4.5);
}

TEST(Simulate, RecordLayout) {
  const auto init = ParticleState::from_raw(std::vector{-0.25, 0.25}, std::vector{0.0, 0.0});
  const auto rec = simulate(init, 10.0, 1e-2, KernelKind::exact(), 100);
  ASSERT_EQ(rec.states.size(), 11u);
  for (std::size_t k = 0; k < rec.states.size(); ++k) {
    EXPECT_NEAR(rec.sample_times[k], static_cast<double>(k), 1e-12);
    EXPECT_NEAR(rec.states[k].time, rec.sample_times[k], 1e-12);
    EXPECT_EQ(rec.states[k].positions, init.positions);
    EXPECT_EQ(rec.states[k].velocities, init.velocities);
  }
  const auto partial = simulate(init, 0.105, 1e-2, KernelKind::exact(), 5);
  EXPECT_NEAR(partial.sample_times.back(), 0.105, 1e-15);
  for (std::size_t k = 1; k < partial.sample_times.size(); ++k) {
    EXPECT_LT(partial.sample_times[k - 1], partial.sample_times[k]);
  }
}

TEST(Simulate, Deterministic) {
  const auto init = random_state(64, 9, false);
  const auto a = simulate(init, 0.5, 1e-3, KernelKind::exact(), 50);
  const auto b = simulate(init, 0.5, 1e-3, KernelKind::exact(), 50);
  ASSERT_EQ(a.states.size(), b.states.size());
  for (std::size_t k = 0; k < a.states.size(); ++k) {
    EXPECT_EQ(a.states[k].positions, b.states[k].positions);
    EXPECT_EQ(a.states[k].velocities, b.states[k].velocities);
  }
}

TEST(EmpiricalMeasure, Examples) {
  const auto two = ParticleState::from_raw(std::vector{0.1, 0.2}, std::vector{0.0, 1.0});
  const auto mu = empirical_measure(two);
  ASSERT_EQ(mu.size(), 2u);
  EXPECT_EQ(mu.weights[0], 0.5);
  const auto dup = ParticleState::from_raw(std::vector{0.1, 0.1}, std::vector{0.0, 0.0});
  EXPECT_EQ(empirical_measure(dup).size(), 2u);
  const auto one = ParticleState::from_raw(std::vector{0.1}, std::vector{0.0});
  EXPECT_EQ(empirical_measure(one).weights, std::vector<double>{1.0});
}

TEST(Diagnostics, Examples) {
  const auto antipodal = ParticleState::from_raw(std::vector{-0.25, 0.25}, std::vector{0.0, 0.0});
  const auto d = diagnostics(antipodal);
  EXPECT_EQ(d.momentum, 0.0);
  EXPECT_DOUBLE_EQ(d.energy, -1.0 / 32);
  const auto single = ParticleState::from_raw(std::vector{0.0}, std::vector{1.0});
  const auto e = diagnostics(single);
  EXPECT_DOUBLE_EQ(e.energy, 0.5);
  EXPECT_DOUBLE_EQ(e.momentum, 1.0);
  EXPECT_DOUBLE_EQ(e.max_speed, 1.0);

  auto s = random_state(30, 2, true);
  const auto before = diagnostics(s);
  std::reverse(s.positions.begin(), s.positions.end());
  std::reverse(s.velocities.begin(), s.velocities.end());
  const auto after = diagnostics(s);
  EXPECT_NEAR(before.energy, after.energy, 1e-15);
  EXPECT_NEAR(before.momentum, after.momentum, 1e-15);
  EXPECT_EQ(before.max_speed, after.max_speed);
}

TEST(WeakResidual, SmallForFineSteps) {
  const auto init = random_state(64, 3, false);
  const auto rec = simulate(init, 0.5, 1e-3, KernelKind::exact(), 1);
  const double pi2 = 2 * std::acos(-1.0);
  const TestFunction phi{[&](double x, double v) { return std::cos(pi2 * x) * v; },
                         [&](double x, double v) { return -pi2 * std::sin(pi2 * x) * v; },
                         [&](double x, double) { return std::cos(pi2 * x); }};
  EXPECT_LT(std::abs(weak_residual(rec, phi)), 1e-3);
}
