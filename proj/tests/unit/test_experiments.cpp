#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "vlasov1d/errors.hpp"
#include "vlasov1d/experiments.hpp"

using namespace vlasov1d;

namespace {

StabilityConfig small_config() {
  StabilityConfig c;
  c.n = 256;
  c.t_final = 0.5;
  c.dt_particles = 1e-3;
  c.grid = GridParams{32, 32, 1.5, 0.05};
  c.sample_interval = 0.1;
  c.w1_atoms = 256;
  c.seed = 3;
  return c;
}

}  // namespace

TEST(StabilityTimes, ValidatesIntervals) {
  auto c = small_config();
  const auto t = stability_times(c);
  ASSERT_EQ(t.size(), 6u);
  EXPECT_EQ(t.front(), 0.0);
  EXPECT_EQ(t.back(), 0.5);
  c.sample_interval = 0.07;
  EXPECT_THROW(stability_times(c), InvalidExperiment);
  c = small_config();
  c.dt_particles = 0.03;
  EXPECT_THROW(stability_times(c), InvalidExperiment);
  c = small_config();
  c.n = 0;
  EXPECT_THROW(stability_times(c), InvalidExperiment);
}

TEST(RunStability, EquilibriumPassesAndIsConsistent) {
  const InitialDistribution f0(UniformBox{0.5});
  const auto c = small_config();
  const auto r = run_stability(f0, c);
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.times.size(), r.w1.size());
  EXPECT_EQ(r.ratio.front(), 1.0);
  EXPECT_EQ(r.w1_initial, r.w1.front());
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    EXPECT_NEAR(r.bound[k], std::exp(r.a_values[k]) * r.w1_initial, 1e-12 * r.bound[k]);
    EXPECT_NEAR(r.a_values[k], (std::sqrt(2.0) + 8) * r.times[k], 1e-9);
    EXPECT_LE(r.ratio[k], 1 + c.margin);
  }
  const auto again = run_stability(f0, c);
  EXPECT_EQ(again.w1, r.w1);
}

TEST(RunStability, BadEnvelopeIsInvalidExperiment) {
  const InitialDistribution f0(UniformBox{0.5});
  auto c = small_config();
  c.grid.vmax = 0.6;
  EXPECT_THROW(run_stability(f0, c), InvalidExperiment);
}

TEST(RunChaos, Bookkeeping) {
  const InitialDistribution f0(UniformBox{0.5});
  auto c = small_config();
  c.n = 64;
  c.w1_atoms = 128;
  EXPECT_THROW(run_chaos(f0, c, 1), InvalidExperiment);
  const auto r = run_chaos(f0, c, 2);
  EXPECT_EQ(r.seeds, 2u);
  ASSERT_EQ(r.ci95.size(), r.times.size());
  EXPECT_EQ(r.mean_w1.front(), r.mean_w1_initial);
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    EXPECT_GE(r.ci95[k], 0.0);
    EXPECT_NEAR(r.bound[k], std::exp(r.a_values[k]) * r.mean_w1_initial, 1e-12 * r.bound[k]);
  }
}

TEST(RunConvergence, TableShape) {
  const InitialDistribution f0(UniformBox{0.5});
  ConvergenceConfig c;
  c.n_list = {16, 64, 256};
  c.t_snapshots = {0.0, 0.2};
  c.seeds = 2;
  c.grid = GridParams{32, 32, 1.5, 0.05};
  c.w1_atoms = 256;
  const auto rows = run_convergence(f0, c);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].n, 16u);
  EXPECT_EQ(rows[1].t, 0.2);
  EXPECT_LE(count_inversions(rows, 0.0), 1u);
  EXPECT_GT(rows[0].w1, rows[4].w1);
  c.n_list = {64, 16};
  EXPECT_THROW(run_convergence(f0, c), InvalidExperiment);
}

TEST(CountInversions, Counts) {
  std::vector<ConvergenceRow> rows = {{1, 1.0, 0.5}, {2, 1.0, 0.6}, {3, 1.0, 0.4}, {4, 1.0, 0.45}};
  EXPECT_EQ(count_inversions(rows, 1.0), 2u);
  EXPECT_EQ(count_inversions(rows, 2.0), 0u);
}

TEST(LogLogSlope, ExactPowerLaw) {
  EXPECT_NEAR(loglog_slope({1, 2, 4, 8}, {3, 12, 48, 192}), 2.0, 1e-12);
  EXPECT_THROW(loglog_slope({1}, {1}), InvalidArgument);
  EXPECT_THROW(loglog_slope({1, 2}, {0, 1}), InvalidArgument);
}

TEST(CoupledDistance, ZeroForIdenticalRuns) {
  const InitialDistribution f0(UniformBox{0.5});
  const auto init = sample_initial(f0, 32, 1, SamplingStrategy::IID);
  const auto a = simulate(init, 0.2, 1e-2, KernelKind::mollified(0.1), 2);
  EXPECT_EQ(coupled_distance(a, a), 0.0);
  const auto b = simulate(init, 0.2, 1e-2, KernelKind::mollified(0.05), 2);
  EXPECT_GT(coupled_distance(a, b), 0.0);
}

TEST(RunMollification, SortedAndBounded) {
  const InitialDistribution f0(TruncatedMaxwellian{0.5, 2.0});
  MollificationConfig c;
  c.n = 64;
  c.t_final = 0.3;
  c.dt = 1e-3;
  c.eps_list = {0.2, 0.1, 0.05};
  const auto r = run_mollification(f0, c);
  ASSERT_EQ(r.eps_pairs.size(), 2u);
  EXPECT_LT(std::max(r.eps_pairs[0].first, r.eps_pairs[0].second),
            std::max(r.eps_pairs[1].first, r.eps_pairs[1].second));
  for (double d : r.coupled_distance) {
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, (1 + c.t_final) * c.t_final);
  }
  EXPECT_TRUE(std::isfinite(r.fitted_slope));
  c.eps_list = {0.1, 0.2};
  EXPECT_THROW(run_mollification(f0, c), InvalidExperiment);
}
