#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "svg.hpp"
#include "vlasov1d/errors.hpp"
#include "vlasov1d/experiments.hpp"
#include "vlasov1d/io.hpp"

namespace vlasov1d::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

StabilityConfig stability_config(const RunConfig& c) {
  StabilityConfig s;
  s.n = c.n;
  s.t_final = c.t_final;
  s.dt_particles = c.dt;
  s.grid = GridParams{c.nx, c.nv, c.vmax, c.dt_grid};
  s.sample_interval = c.sample_interval;
  s.w1_atoms = c.w1_atoms;
  s.seed = c.seed;
  s.strategy = c.strategy;
  s.margin = c.margin;
  s.w1.max_cost_entries = c.w1_cap;
  return s;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

class Artifacts {
 public:
  Artifacts(const RunConfig& cfg, bool svg)
      : dir_(cfg.output_dir / config_hash(cfg)), svg_(svg), cfg_(cfg) {
    fs::create_directories(dir_);
  }

  void report(json body, bool pass) {
    body["command"] = to_string(cfg_.command);
    body["config_hash"] = config_hash(cfg_);
    body["config"] = json::parse(canonical_json(cfg_));
    body["pass"] = pass;
    write_text(dir_ / "report.json", body.dump(2) + "\n");
  }
  void table(const std::string& name, const NumericTable& t) { write_csv_file(dir_ / name, t); }
  void series(const NumericTable& t) { table("series.csv", t); }
  void plot(const std::string& title, const std::vector<double>& x,
            const std::vector<Series>& ys, bool log_y) {
    if (svg_) write_text(dir_ / "plot.svg", line_plot_svg(title, "t", x, ys, log_y));
  }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  bool svg_;
  const RunConfig& cfg_;
};

int finish(std::ostream& out, const RunConfig& cfg, const Artifacts& art, bool pass) {
  out << to_string(cfg.command) << ": " << (pass ? "PASS" : "FAIL") << " -> "
      << art.dir().string() << "\n";
  return pass ? kPass : kInequalityFailed;
}

int cmd_simulate(const RunConfig& cfg, Artifacts& art, std::ostream& out) {
  const InitialDistribution f0(*cfg.initial_distribution);
  const KernelKind kind =
      cfg.kernel_eps ? KernelKind::mollified(*cfg.kernel_eps) : KernelKind::exact();
  const ParticleState init = sample_initial(f0, cfg.n, cfg.seed, cfg.strategy);
  const TrajectoryRecord rec =
      simulate(init, cfg.t_final, cfg.dt, kind, cfg.sample_every, cfg.scheme);

  NumericTable series{{"t", "momentum", "energy", "max_speed"}, {}};
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rec.states.size(); ++k) {
    const Diagnostics d = diagnostics(rec.states[k], kind);
    series.rows.push_back({rec.sample_times[k], d.momentum, d.energy, d.max_speed});
    const double allowed = 0.5 * rec.sample_times[k] + cfg.dt;
    for (std::size_t i = 0; i < init.size(); ++i) {
      const double dv = std::abs(rec.states[k].velocities[i] - init.velocities[i]);
      worst_excess = std::max(worst_excess, dv - allowed);
    }
  }
  const auto& first = series.rows.front();
  const auto& last = series.rows.back();
  const bool pass = worst_excess <= 0.0;
  art.series(series);
  art.table("particles.csv", measure_table(empirical_measure(rec.states.back())));
  art.report({{"momentum_drift", std::abs(last[1] - first[1])},
              {"energy_relative_drift",
               std::abs(last[2] - first[2]) / std::max(std::abs(first[2]), 1e-300)},
              {"velocity_lipschitz_excess", worst_excess},
              {"samples", rec.states.size()}},
             pass);
  std::vector<double> t, e;
  for (const auto& r : series.rows) {
    t.push_back(r[0]);
    e.push_back(r[2]);
  }
  art.plot("energy", t, {{"energy", e}}, false);
  return finish(out, cfg, art, pass);
}

int cmd_solve(const RunConfig& cfg, Artifacts& art, std::ostream& out) {
  const InitialDistribution f0(*cfg.initial_distribution);
  const GridParams gp{cfg.nx, cfg.nv, cfg.vmax, cfg.dt_grid};
  const auto steps = static_cast<std::size_t>(std::floor(cfg.t_final / cfg.dt_grid + 1e-9));
  const GridSolution sol = solve(f0, gp, cfg.t_final, std::max<std::size_t>(steps, 1));
  std::vector<double> bound;
  double worst = 0.0;
  for (std::size_t k = 0; k < sol.trace.times.size(); ++k) {
    bound.push_back(density_bound(f0, sol.trace.times[k]));
    worst = std::max(worst, sol.trace.sup_norms[k] / bound.back());
  }
  const bool pass = worst <= 1.0 + cfg.margin;
  art.series(trace_table(sol.trace));
  art.table("grid.csv", grid_table(sol.snapshots.back()));
  art.report({{"max_density_ratio", worst},
              {"final_mass", sol.snapshots.back().mass()},
              {"steps", steps}},
             pass);
  art.plot("density sup norm", sol.trace.times,
           {{"rho_sup", sol.trace.sup_norms}, {"bound", bound}}, false);
  return finish(out, cfg, art, pass);
}

json with_extras(const std::string& report_json) { return json::parse(report_json); }

int cmd_stability(const RunConfig& cfg, Artifacts& art, std::ostream& out) {
  const InitialDistribution f0(*cfg.initial_distribution);
  const StabilityReport rep = run_stability(f0, stability_config(cfg));
  art.series(stability_series(rep));
  art.report(with_extras(to_json(rep)), rep.pass);
  art.plot("W1 vs bound", rep.times, {{"W1", rep.w1}, {"bound", rep.bound}}, true);
  return finish(out, cfg, art, rep.pass);
}

int cmd_chaos(const RunConfig& cfg, Artifacts& art, std::ostream& out) {
  const InitialDistribution f0(*cfg.initial_distribution);
  const ChaosReport rep = run_chaos(f0, stability_config(cfg), cfg.seeds);
  art.series(chaos_series(rep));
  art.report(with_extras(to_json(rep)), rep.pass);
  art.plot("mean W1 vs bound", rep.times, {{"mean W1", rep.mean_w1}, {"bound", rep.bound}},
           true);
  return finish(out, cfg, art, rep.pass);
}

int cmd_convergence(const RunConfig& cfg, Artifacts& art, std::ostream& out) {
  const InitialDistribution f0(*cfg.initial_distribution);
  ConvergenceConfig cc;
  cc.n_list = cfg.n_list;
  cc.t_snapshots = cfg.t_snapshots;
  cc.seeds = cfg.seeds;
  cc.dt_particles = cfg.dt;
  cc.grid = GridParams{cfg.nx, cfg.nv, cfg.vmax, cfg.dt_grid};
  cc.w1_atoms = cfg.w1_atoms;
  cc.seed = cfg.seed;
  cc.w1.max_cost_entries = cfg.w1_cap;
  const auto rows = run_convergence(f0, cc);
  bool pass = true;
  json inversions = json::array();
  for (double t : cfg.t_snapshots) {
    if (t <= 0.0) continue;
    const std::size_t inv = count_inversions(rows, t);
    inversions.push_back({{"t", t}, {"inversions", inv}});
    if (inv > 1) pass = false;
  }
  art.series(convergence_series(rows));
  art.report({{"inversions", inversions}}, pass);
  if (!rows.empty()) {
    const double t_last = cfg.t_final;
    std::vector<double> ns, w;
    for (const auto& r : rows) {
      if (r.t == t_last) {
        ns.push_back(std::log2(static_cast<double>(r.n)));
        w.push_back(r.w1);
      }
    }
    art.plot("W1 at t_final vs log2 N", ns, {{"W1", w}}, true);
  }
  return finish(out, cfg, art, pass);
}

int cmd_mollify(const RunConfig& cfg, Artifacts& art, std::ostream& out) {
  const InitialDistribution f0(*cfg.initial_distribution);
  MollificationConfig mc;
  mc.n = cfg.n;
  mc.t_final = cfg.t_final;
  mc.dt = cfg.dt;
  mc.eps_list = cfg.eps_list;
  mc.seed = cfg.seed;
  mc.sample_interval = cfg.sample_interval;
  mc.strategy = cfg.strategy;
  const CauchyReport rep = run_mollification(f0, mc);
  const bool pass = rep.fitted_slope >= 0.7 && rep.fitted_slope <= 1.3;
  art.series(cauchy_series(rep));
  art.report(with_extras(to_json(rep)), pass);
  std::vector<double> eps;
  for (const auto& p : rep.eps_pairs) eps.push_back(std::log10(std::max(p.first, p.second)));
  art.plot("coupled distance vs log10 eps", eps, {{"distance", rep.coupled_distance}}, true);
  return finish(out, cfg, art, pass);
}

int cmd_w1(const RunConfig& cfg, const fs::path& config_dir, Artifacts& art,
           std::ostream& out) {
  auto resolve = [&](const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : config_dir / path;
  };
  const DiscreteMeasure mu = measure_from_table(read_csv_file(resolve(cfg.mu)));
  const DiscreteMeasure nu = measure_from_table(read_csv_file(resolve(cfg.nu)));
  W1Options opts;
  opts.max_cost_entries = cfg.w1_cap;
  const W1Result r = w1_exact(mu, nu, opts);
  art.series(plan_table(r.plan, mu, nu));
  art.report({{"distance", r.distance},
              {"max_dual_violation", r.max_dual_violation},
              {"pivots", r.pivots}},
             true);
  std::ostringstream v;
  v << std::setprecision(12) << r.distance;
  out << v.str() << "\n";
  return kPass;
}

}  // namespace

int run_command(const RunConfig& cfg, const fs::path& config_dir, bool emit_svg,
                std::ostream& out) {
  Artifacts art(cfg, emit_svg);
  switch (cfg.command) {
    case Command::Simulate: return cmd_simulate(cfg, art, out);
    case Command::Solve: return cmd_solve(cfg, art, out);
    case Command::Stability: return cmd_stability(cfg, art, out);
    case Command::Chaos: return cmd_chaos(cfg, art, out);
    case Command::Convergence: return cmd_convergence(cfg, art, out);
    case Command::Mollify: return cmd_mollify(cfg, art, out);
    case Command::W1: return cmd_w1(cfg, config_dir, art, out);
  }
  return kUsageError;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Particle and grid solvers for 1D Vlasov-Poisson with W1 diagnostics",
               "vlasov1d"};
  std::string command_name;
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool emit_svg = false;
  app.add_option("command", command_name,
                 "simulate | solve | stability | chaos | convergence | mollify | w1")
      ->required();
  app.add_option("--config", config_path, "JSON run configuration")->required();
  auto* out_opt = app.add_option("--out", out_dir, "output root (default: config output_dir)");
  auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
  app.add_flag("--emit-svg", emit_svg, "also write plot.svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kPass : kUsageError;
  }

  const auto command = command_from_string(command_name);
  if (!command) {
    err << "error: unknown command '" << command_name << "'\n";
    return kUsageError;
  }
  std::ifstream is(config_path, std::ios::binary);
  if (!is) {
    err << "error: cannot read config " << config_path << "\n";
    return kUsageError;
  }
  std::stringstream text;
  text << is.rdbuf();

  RunConfig cfg;
  try {
    cfg = parse_config(text.str(), *command);
  } catch (const ConfigParseError& e) {
    err << "error: " << config_path << ": " << e.what() << "\n";
    return kUsageError;
  } catch (const ConfigValidationError& e) {
    err << "error: " << config_path << ": " << e.what() << "\n";
    return kUsageError;
  }
  if (*out_opt) cfg.output_dir = out_dir;
  if (*seed_opt) cfg.seed = seed;

  try {
    return run_command(cfg, fs::path(config_path).parent_path(), emit_svg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace vlasov1d::cli
