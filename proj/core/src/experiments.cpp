#include "vlasov1d/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "vlasov1d/errors.hpp"
#include "vlasov1d/rng.hpp"

namespace vlasov1d {
namespace {

// Number of whole steps of size `step` in `span`, or throws when span is not
// a multiple of step.
std::size_t exact_ratio(double span, double step, const char* what) {
  const double q = span / step;
  const double r = std::round(q);
  if (!(r >= 1.0) || std::abs(q - r) > 1e-9 * std::max(1.0, q)) {
    throw InvalidExperiment(std::string(what) + ": " + std::to_string(span) +
                            " is not a positive multiple of " + std::to_string(step));
  }
  return static_cast<std::size_t>(r);
}

void check_common(const StabilityConfig& cfg) {
  if (cfg.n == 0) throw InvalidExperiment("n must be at least 1");
  if (!(cfg.t_final > 0.0)) throw InvalidExperiment("t_final must be positive");
  if (!(cfg.dt_particles > 0.0)) throw InvalidExperiment("dt must be positive");
  if (!(cfg.grid.dt > 0.0)) throw InvalidExperiment("grid dt must be positive");
  if (cfg.w1_atoms == 0) throw InvalidExperiment("w1_atoms must be at least 1");
  if (!(cfg.margin >= 0.0)) throw InvalidExperiment("margin must be nonnegative");
}

double ratio_of(double w1, double bound) {
  if (bound > 0.0) return w1 / bound;
  return w1 == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

std::size_t stride_of(double interval, double dt) {
  return exact_ratio(interval, dt, "sample interval vs time step");
}

}  // namespace

Reference build_reference(const InitialDistribution& f0, const GridParams& grid,
                          const std::vector<double>& times, std::size_t atoms,
                          std::uint64_t seed) {
  if (times.empty()) {
    throw InvalidExperiment("reference: no comparison times");
  }
  if (!(f0.sup_norm() < std::numeric_limits<double>::infinity()) ||
      !std::isfinite(f0.g0_integral())) {
    throw InvalidExperiment("reference: f0 violates the envelope condition");
  }
  const double t_final = *std::max_element(times.begin(), times.end());
  GridSolution sol;
  try {
    sol = solve_at(f0, grid, t_final, times);
  } catch (const PreconditionError& e) {
    throw InvalidExperiment(e.what());
  } catch (const InvalidArgument& e) {
    throw InvalidExperiment(e.what());
  }
  Reference ref;
  ref.trace = std::move(sol.trace);
  const std::uint64_t grid_seed = derive_seed(seed, streams::kGridSample);
  for (const auto& g : sol.snapshots) {
    ref.times.push_back(g.time);
    ref.measures.push_back(grid_to_measure(g, GridSample{atoms, grid_seed}));
  }
  return ref;
}

std::vector<double> stability_times(const StabilityConfig& cfg) {
  check_common(cfg);
  const std::size_t k = exact_ratio(cfg.t_final, cfg.sample_interval,
                                    "t_final vs sample interval");
  stride_of(cfg.sample_interval, cfg.dt_particles);
  stride_of(cfg.sample_interval, cfg.grid.dt);
  std::vector<double> times(k + 1);
  for (std::size_t i = 0; i <= k; ++i) {
    times[i] = cfg.t_final * static_cast<double>(i) / static_cast<double>(k);
  }
  times.back() = cfg.t_final;
  return times;
}

StabilityReport stability_against(const Reference& ref, const ParticleState& initial,
                                  const StabilityConfig& cfg) {
  const std::size_t stride = stride_of(cfg.sample_interval, cfg.dt_particles);
  const TrajectoryRecord rec =
      simulate(initial, cfg.t_final, cfg.dt_particles, KernelKind::exact(), stride);
  if (rec.states.size() != ref.measures.size()) {
    throw InvalidExperiment("particle samples do not line up with the reference");
  }
  StabilityReport rep;
  rep.margin = cfg.margin;
  rep.times = ref.times;
  for (std::size_t k = 0; k < rec.states.size(); ++k) {
    const DiscreteMeasure mu = empirical_measure(rec.states[k]);
    rep.w1.push_back(w1_exact(mu, ref.measures[k], cfg.w1).distance);
  }
  rep.w1_initial = rep.w1.front();
  rep.pass = true;
  for (std::size_t k = 0; k < rep.times.size(); ++k) {
    const double a = a_of_t(ref.trace, rep.times[k]);
    rep.a_values.push_back(a);
    rep.bound.push_back(std::exp(a) * rep.w1_initial);
    rep.ratio.push_back(ratio_of(rep.w1[k], rep.bound[k]));
    if (!(rep.ratio[k] <= 1.0 + cfg.margin)) rep.pass = false;
  }
  return rep;
}

StabilityReport run_stability(const InitialDistribution& f0,
                              const StabilityConfig& cfg) {
  const auto times = stability_times(cfg);
  const Reference ref = build_reference(f0, cfg.grid, times, cfg.w1_atoms, cfg.seed);
  const ParticleState initial = sample_initial(f0, cfg.n, cfg.seed, cfg.strategy);
  return stability_against(ref, initial, cfg);
}

ChaosReport run_chaos(const InitialDistribution& f0, const StabilityConfig& cfg,
                      std::size_t seeds) {
  if (seeds < 2) {
    throw InvalidExperiment("chaos: need at least 2 seeds");
  }
  const auto times = stability_times(cfg);
  const Reference ref = build_reference(f0, cfg.grid, times, cfg.w1_atoms, cfg.seed);

  std::vector<std::vector<double>> per_seed(seeds);
  const auto count = static_cast<long long>(seeds);
#pragma omp parallel for schedule(dynamic)
  for (long long r = 0; r < count; ++r) {
    const std::uint64_t replica_seed =
        derive_seed(cfg.seed, streams::kReplicaBase + static_cast<std::uint64_t>(r));
    const ParticleState initial =
        sample_initial(f0, cfg.n, replica_seed, SamplingStrategy::IID);
    per_seed[static_cast<std::size_t>(r)] = stability_against(ref, initial, cfg).w1;
  }

  ChaosReport rep;
  rep.seeds = seeds;
  rep.margin = cfg.margin;
  rep.times = ref.times;
  const double ds = static_cast<double>(seeds);
  for (std::size_t k = 0; k < times.size(); ++k) {
    double mean = 0.0;
    for (const auto& s : per_seed) mean += s[k];
    mean /= ds;
    double var = 0.0;
    for (const auto& s : per_seed) var += (s[k] - mean) * (s[k] - mean);
    var /= ds - 1.0;
    rep.mean_w1.push_back(mean);
    rep.ci95.push_back(1.96 * std::sqrt(var / ds));
  }
  rep.mean_w1_initial = rep.mean_w1.front();
  rep.pass = true;
  for (std::size_t k = 0; k < rep.times.size(); ++k) {
    const double a = a_of_t(ref.trace, rep.times[k]);
    rep.a_values.push_back(a);
    rep.bound.push_back(std::exp(a) * rep.mean_w1_initial);
    if (!(rep.mean_w1[k] <= rep.bound[k] * (1.0 + cfg.margin))) rep.pass = false;
  }
  return rep;
}

std::vector<ConvergenceRow> run_convergence(const InitialDistribution& f0,
                                            const ConvergenceConfig& cfg) {
  if (cfg.n_list.empty() || cfg.t_snapshots.empty()) {
    throw InvalidExperiment("convergence: n_list and t_snapshots must be nonempty");
  }
  for (std::size_t k = 1; k < cfg.n_list.size(); ++k) {
    if (cfg.n_list[k] <= cfg.n_list[k - 1]) {
      throw InvalidExperiment("convergence: n_list must be strictly increasing");
    }
  }
  if (cfg.n_list.front() == 0 || cfg.seeds == 0) {
    throw InvalidExperiment("convergence: n and seeds must be positive");
  }
  std::vector<double> times = cfg.t_snapshots;
  std::sort(times.begin(), times.end());
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (times[k] == times[k - 1]) {
      throw InvalidExperiment("convergence: duplicate snapshot time");
    }
  }
  if (times.front() < 0.0) {
    throw InvalidExperiment("convergence: negative snapshot time");
  }
  for (double t : times) {
    if (t > 0.0) {
      exact_ratio(t, cfg.dt_particles, "snapshot vs particle dt");
      exact_ratio(t, cfg.grid.dt, "snapshot vs grid dt");
    }
  }
  const double t_final = times.back();

  // One reference per distinct atom budget.
  auto atoms_for = [&](std::size_t n) {
    return std::max<std::size_t>(1, std::min(cfg.w1_atoms, cfg.w1.max_cost_entries / n));
  };
  GridSolution sol;
  if (t_final > 0.0) {
    try {
      sol = solve_at(f0, cfg.grid, t_final, times);
    } catch (const std::exception& e) {
      throw InvalidExperiment(e.what());
    }
  } else {
    sol.snapshots.push_back(project(f0, cfg.grid.nx, cfg.grid.nv, cfg.grid.vmax));
  }

  const std::uint64_t grid_seed = derive_seed(cfg.seed, streams::kGridSample);
  std::vector<ConvergenceRow> rows;
  for (std::size_t n : cfg.n_list) {
    const std::size_t atoms = atoms_for(n);
    std::vector<DiscreteMeasure> targets;
    for (const auto& g : sol.snapshots) {
      targets.push_back(grid_to_measure(g, GridSample{atoms, grid_seed}));
    }
    std::vector<std::vector<double>> per_seed(cfg.seeds);
    const auto count = static_cast<long long>(cfg.seeds);
#pragma omp parallel for schedule(dynamic)
    for (long long r = 0; r < count; ++r) {
      const std::uint64_t s = derive_seed(
          derive_seed(cfg.seed, n), streams::kReplicaBase + static_cast<std::uint64_t>(r));
      Propagator prop(sample_initial(f0, n, s, SamplingStrategy::Stratified),
                      KernelKind::exact(), Integrator::VelocityVerlet);
      std::vector<double> w;
      std::size_t done = 0;
      for (std::size_t k = 0; k < times.size(); ++k) {
        const auto target_steps = static_cast<std::size_t>(
            std::llround(times[k] / cfg.dt_particles));
        for (; done < target_steps; ++done) prop.advance(cfg.dt_particles);
        w.push_back(w1_exact(empirical_measure(prop.state()), targets[k], cfg.w1).distance);
      }
      per_seed[static_cast<std::size_t>(r)] = std::move(w);
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
      double mean = 0.0;
      for (const auto& s : per_seed) mean += s[k];
      mean /= static_cast<double>(cfg.seeds);
      double var = 0.0;
      for (const auto& s : per_seed) var += (s[k] - mean) * (s[k] - mean);
      const double sd =
          cfg.seeds > 1 ? std::sqrt(var / static_cast<double>(cfg.seeds - 1)) : 0.0;
      rows.push_back({n, times[k], mean, sd, atoms});
    }
  }
  return rows;
}

std::size_t count_inversions(const std::vector<ConvergenceRow>& rows, double t) {
  std::vector<double> series;
  for (const auto& r : rows) {
    if (std::abs(r.t - t) <= 1e-12) series.push_back(r.w1);
  }
  std::size_t inv = 0;
  for (std::size_t k = 1; k < series.size(); ++k) {
    if (series[k] > series[k - 1]) ++inv;
  }
  return inv;
}

double coupled_distance(const TrajectoryRecord& a, const TrajectoryRecord& b) {
  if (a.states.size() != b.states.size()) {
    throw InvalidArgument("coupled_distance: records have different sample counts");
  }
  double sup = 0.0;
  for (std::size_t k = 0; k < a.states.size(); ++k) {
    const auto& sa = a.states[k];
    const auto& sb = b.states[k];
    if (sa.size() != sb.size()) {
      throw InvalidArgument("coupled_distance: particle counts differ");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) {
      acc += phase_distance({sa.positions[i], sa.velocities[i]},
                            {sb.positions[i], sb.velocities[i]});
    }
    sup = std::max(sup, acc / static_cast<double>(sa.size()));
  }
  return sup;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InvalidArgument("loglog_slope: need at least two matching points");
  }
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) {
      throw InvalidArgument("loglog_slope: values must be positive");
    }
    mx += std::log(x[k]);
    my += std::log(y[k]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = std::log(x[k]) - mx;
    sxy += dx * (std::log(y[k]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) {
    throw InvalidArgument("loglog_slope: x values are all equal");
  }
  return sxy / sxx;
}

CauchyReport run_mollification(const InitialDistribution& f0,
                               const MollificationConfig& cfg) {
  if (cfg.eps_list.size() < 2) {
    throw InvalidExperiment("mollification: need at least two eps values");
  }
  for (std::size_t k = 0; k < cfg.eps_list.size(); ++k) {
    const double e = cfg.eps_list[k];
    if (!(e > 0.0 && e < 0.5)) {
      throw InvalidExperiment("mollification: eps must lie in (0, 1/2)");
    }
    if (k > 0 && !(e < cfg.eps_list[k - 1])) {
      throw InvalidExperiment("mollification: eps_list must be strictly decreasing");
    }
  }
  if (cfg.n == 0 || !(cfg.t_final > 0.0) || !(cfg.dt > 0.0)) {
    throw InvalidExperiment("mollification: n, t_final and dt must be positive");
  }
  const std::size_t stride = stride_of(cfg.sample_interval, cfg.dt);

  // Identical initial data and indexing for every eps.
  const ParticleState initial = sample_initial(f0, cfg.n, cfg.seed, cfg.strategy);
  std::vector<TrajectoryRecord> runs(cfg.eps_list.size());
  const auto count = static_cast<long long>(cfg.eps_list.size());
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < count; ++k) {
    runs[static_cast<std::size_t>(k)] =
        simulate(initial, cfg.t_final, cfg.dt,
                 KernelKind::mollified(cfg.eps_list[static_cast<std::size_t>(k)]), stride);
  }

  CauchyReport rep;
  std::vector<double> scale;
  for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
    const double e1 = cfg.eps_list[k];
    const double e2 = cfg.eps_list[k + 1];
    rep.eps_pairs.emplace_back(e1, e2);
    rep.coupled_distance.push_back(coupled_distance(runs[k], runs[k + 1]));
    scale.push_back(std::max(e1, e2));
  }
  // Sort by max(eps, eps').
  std::vector<std::size_t> order(scale.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scale[a] < scale[b]; });
  CauchyReport sorted;
  std::vector<double> xs;
  for (std::size_t k : order) {
    sorted.eps_pairs.push_back(rep.eps_pairs[k]);
    sorted.coupled_distance.push_back(rep.coupled_distance[k]);
    xs.push_back(scale[k]);
  }
  sorted.fitted_slope = loglog_slope(xs, sorted.coupled_distance);
  return sorted;
}

}  // namespace vlasov1d
