#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "vlasov1d/measures.hpp"
#include "vlasov1d/particles.hpp"
#include "vlasov1d/vlasov_grid.hpp"
#include "vlasov1d/wasserstein.hpp"

namespace vlasov1d {

/// Settings shared by the particle-vs-grid comparisons.
struct StabilityConfig {
  std::size_t n = 1024;
  double t_final = 1.0;
  double dt_particles = 1e-3;
  GridParams grid;
  // W1 is measured at multiples of this interval. Must be a multiple of both
  // time steps and divide t_final.
  double sample_interval = 0.1;
  std::size_t w1_atoms = 1024;
  std::uint64_t seed = 0;
  SamplingStrategy strategy = SamplingStrategy::Stratified;
  double margin = 0.10;
  W1Options w1;
};

/// W1(mu^N_t, f_t) against exp(a(t)) W1(mu^N_0, f_0).
struct StabilityReport {
  std::vector<double> times;
  std::vector<double> w1;
  double w1_initial = 0.0;
  std::vector<double> a_values;
  std::vector<double> bound;
  std::vector<double> ratio;
  double margin = 0.10;
  bool pass = false;
};

struct ChaosReport {
  std::size_t seeds = 0;
  std::vector<double> times;
  std::vector<double> mean_w1;
  std::vector<double> ci95;
  double mean_w1_initial = 0.0;
  std::vector<double> a_values;
  std::vector<double> bound;
  double margin = 0.10;
  bool pass = false;
};

struct ConvergenceRow {
  std::size_t n = 0;
  double t = 0.0;
  double w1 = 0.0;     // mean over seeds
  double w1_sd = 0.0;  // sample standard deviation over seeds (0 for 1 seed)
  std::size_t grid_atoms = 0;
};

struct ConvergenceConfig {
  std::vector<std::size_t> n_list;
  std::vector<double> t_snapshots;
  std::size_t seeds = 1;
  double dt_particles = 1e-3;
  GridParams grid;
  std::size_t w1_atoms = 1024;
  std::uint64_t seed = 0;
  W1Options w1;
};

struct CauchyReport {
  std::vector<std::pair<double, double>> eps_pairs;
  std::vector<double> coupled_distance;
  double fitted_slope = 0.0;
};

struct MollificationConfig {
  std::size_t n = 512;
  double t_final = 1.0;
  double dt = 1e-3;
  std::vector<double> eps_list;
  std::uint64_t seed = 0;
  double sample_interval = 0.01;
  SamplingStrategy strategy = SamplingStrategy::IID;
};

/// Grid reference f_t sampled at the comparison times, shared across
/// replicas: W1 target measures plus the density trace.
struct Reference {
  std::vector<double> times;
  std::vector<DiscreteMeasure> measures;
  DensityTrace trace;
};

Reference build_reference(const InitialDistribution& f0, const GridParams& grid,
                          const std::vector<double>& times, std::size_t atoms,
                          std::uint64_t seed);

/// Checks the configuration (InvalidExperiment otherwise) and returns the
/// comparison times 0, h, 2h, ..., t_final.
std::vector<double> stability_times(const StabilityConfig& cfg);

StabilityReport run_stability(const InitialDistribution& f0,
                              const StabilityConfig& cfg);

/// One particle replica against a prepared reference.
StabilityReport stability_against(const Reference& ref, const ParticleState& initial,
                                  const StabilityConfig& cfg);

/// cfg.strategy is ignored: replicas always sample IID.
ChaosReport run_chaos(const InitialDistribution& f0, const StabilityConfig& cfg,
                      std::size_t seeds);

/// Rows ordered by n, then t.
std::vector<ConvergenceRow> run_convergence(const InitialDistribution& f0,
                                            const ConvergenceConfig& cfg);

/// Number of places where w1 increases from one n to the next, at time t.
std::size_t count_inversions(const std::vector<ConvergenceRow>& rows, double t);

/// max over common samples of (1/N) sum_i phase_distance(a_i, b_i).
double coupled_distance(const TrajectoryRecord& a, const TrajectoryRecord& b);

CauchyReport run_mollification(const InitialDistribution& f0,
                               const MollificationConfig& cfg);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace vlasov1d
