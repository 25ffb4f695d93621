#include "vlasov1d/vlasov_grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "vlasov1d/errors.hpp"
#include "vlasov1d/particles.hpp"
#include "vlasov1d/rng.hpp"
#include "vlasov1d/systematic.hpp"

namespace vlasov1d {
namespace {

// Position of (x, y) along the Hilbert curve filling [0, 2^16)^2.
std::uint64_t hilbert_index(std::uint32_t x, std::uint32_t y) {
  std::uint64_t d = 0;
  for (std::uint32_t s = 1u << 15; s > 0; s >>= 1) {
    const std::uint32_t rx = (x & s) ? 1 : 0;
    const std::uint32_t ry = (y & s) ? 1 : 0;
    d += static_cast<std::uint64_t>(s) * s * ((3 * rx) ^ ry);
    if (ry == 0) {
      if (rx == 1) {
        x = s - 1 - (x & (s - 1));
        y = s - 1 - (y & (s - 1));
      }
      std::swap(x, y);
    }
    x &= s - 1;
    y &= s - 1;
  }
  return d;
}

// Cubic Lagrange weights for nodes -1, 0, 1, 2 at offset t in [0, 1).
std::array<double, 4> lagrange_weights(double t) {
  return {-t * (t - 1.0) * (t - 2.0) / 6.0,
          (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
          -(t + 1.0) * t * (t - 2.0) / 2.0,
          (t + 1.0) * t * (t - 1.0) / 6.0};
}

// out[i] = in(i - shift) with cubic interpolation; periodic or zero outside.
void shift_line(const std::vector<double>& in, double shift, bool periodic,
                std::vector<double>& out) {
  const auto n = static_cast<long long>(in.size());
  const double fl = std::floor(-shift);
  const double t = -shift - fl;
  const auto base = static_cast<long long>(fl);
  const auto w = lagrange_weights(t);
  auto sample = [&](long long k) -> double {
    if (periodic) {
      k %= n;
      if (k < 0) k += n;
      return in[static_cast<std::size_t>(k)];
    }
    return (k < 0 || k >= n) ? 0.0 : in[static_cast<std::size_t>(k)];
  };
  for (long long i = 0; i < n; ++i) {
    const long long i0 = i + base;
    if (t == 0.0) {
      out[static_cast<std::size_t>(i)] = sample(i0);
      continue;
    }
    out[static_cast<std::size_t>(i)] = w[0] * sample(i0 - 1) + w[1] * sample(i0) +
                                       w[2] * sample(i0 + 1) + w[3] * sample(i0 + 2);
  }
}

void advect_x(PhaseGrid& g, double tau) {
  const std::size_t nx = g.nx();
  const std::size_t nv = g.nv();
  std::vector<double> line(nx), shifted(nx);
  for (std::size_t j = 0; j < nv; ++j) {
    const double shift = g.v_center(j) * tau / g.dx();
    for (std::size_t i = 0; i < nx; ++i) line[i] = g.at(i, j);
    shift_line(line, shift, true, shifted);
    for (std::size_t i = 0; i < nx; ++i) g.at(i, j) = shifted[i];
  }
}

void advect_v(PhaseGrid& g, const FieldProfile& e, double tau) {
  const std::size_t nx = g.nx();
  const std::size_t nv = g.nv();
  std::vector<double> line(nv), shifted(nv);
  for (std::size_t i = 0; i < nx; ++i) {
    const double shift = e.e[i] * tau / g.dv();
    std::copy_n(g.values().begin() + static_cast<std::ptrdiff_t>(i * nv), nv,
                line.begin());
    shift_line(line, shift, false, shifted);
    std::copy(shifted.begin(), shifted.end(),
              g.values().begin() + static_cast<std::ptrdiff_t>(i * nv));
  }
}

}  // namespace

PhaseGrid::PhaseGrid(std::size_t nx, std::size_t nv, double vmax)
    : nx_(nx), nv_(nv), vmax_(vmax) {
  if (nx == 0 || nv == 0) {
    throw InvalidArgument("phase grid: nx and nv must be positive");
  }
  if (!(vmax > 0.0) || !std::isfinite(vmax)) {
    throw InvalidArgument("phase grid: vmax must be positive");
  }
  values_.assign(nx * nv, 0.0);
}

double PhaseGrid::x_center(std::size_t i) const {
  return -0.5 + (static_cast<double>(i) + 0.5) * dx();
}

double PhaseGrid::v_center(std::size_t j) const {
  return -vmax_ + (static_cast<double>(j) + 0.5) * dv();
}

double PhaseGrid::mass() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) * dx() * dv();
}

PhaseGrid project(const InitialDistribution& f0, std::size_t nx, std::size_t nv,
                  double vmax) {
  PhaseGrid g(nx, nv, vmax);
  const double area = g.dx() * g.dv();
  for (std::size_t i = 0; i < nx; ++i) {
    const double x0 = -0.5 + static_cast<double>(i) * g.dx();
    for (std::size_t j = 0; j < nv; ++j) {
      const double v0 = -vmax + static_cast<double>(j) * g.dv();
      g.at(i, j) = f0.cell_mass(x0, x0 + g.dx(), v0, v0 + g.dv()) / area;
    }
  }
  return g;
}

DensityProfile density(const PhaseGrid& grid) {
  DensityProfile d;
  d.rho.assign(grid.nx(), 0.0);
  const double dv = grid.dv();
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < grid.nv(); ++j) {
      acc += grid.at(i, j);
    }
    d.rho[i] = acc * dv;
    d.sup_norm = std::max(d.sup_norm, d.rho[i]);
  }
  return d;
}

FieldProfile field(const DensityProfile& rho) {
  const std::size_t nx = rho.rho.size();
  if (nx == 0) {
    throw InvalidArgument("field: empty density");
  }
  const double dx = 1.0 / static_cast<double>(nx);
  std::vector<double> centers(nx), weights(nx);
  double mass = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    centers[i] = -0.5 + (static_cast<double>(i) + 0.5) * dx;
    weights[i] = rho.rho[i] * dx;
    mass += weights[i];
  }
  if (std::abs(mass - 1.0) > 1e-6) {
    throw PreconditionError("field: density must have unit mass, got " +
                            std::to_string(mass));
  }
  FieldProfile f;
  f.e = sawtooth_sums(centers, weights, centers);
  double mean = 0.0;
  for (double& v : f.e) {
    v = -v;
    mean += v;
  }
  mean /= static_cast<double>(nx);
  for (double& v : f.e) {
    v -= mean;
  }
  return f;
}

PhaseGrid step_strang(const PhaseGrid& grid, double dt) {
  if (!(dt > 0.0)) {
    throw InvalidArgument("step_strang: dt must be positive");
  }
  const double mass_before = grid.mass();
  PhaseGrid g = grid;
  advect_x(g, 0.5 * dt);
  advect_v(g, field(density(g)), dt);
  advect_x(g, 0.5 * dt);
  for (double& v : g.values()) {
    v = std::max(v, 0.0);
  }
  const double mass_after = g.mass();
  if (mass_after > 0.0) {
    const double s = mass_before / mass_after;
    for (double& v : g.values()) {
      v *= s;
    }
  }
  g.time = grid.time + dt;
  return g;
}

double required_vmax(const InitialDistribution& f0, double t_final) {
  // Smallest V with mass_outside(V) < 1e-6, then headroom for speed growth.
  double lo = 0.0;
  double hi = f0.v_support();
  if (f0.mass_outside(hi) >= 1e-6) {
    hi = std::max(1.0, hi);
    while (f0.mass_outside(hi) >= 1e-6) hi *= 2.0;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f0.mass_outside(mid) < 1e-6 ? hi : lo) = mid;
  }
  double v = hi + 0.5 * t_final;
  while (f0.mass_outside(v - 0.5 * t_final) >= 1e-6) {
    v = std::nextafter(v, INFINITY);
  }
  return v;
}

namespace {

template <class KeepStep>
GridSolution run_solver(const InitialDistribution& f0, const GridParams& params,
                        double t_final, KeepStep keep) {
  if (!(t_final > 0.0) || !(params.dt > 0.0)) {
    throw InvalidArgument("solve: t_final and dt must be positive");
  }
  if (f0.mass_outside(params.vmax - 0.5 * t_final) >= 1e-6) {
    throw PreconditionError("solve: vmax = " + std::to_string(params.vmax) +
                            " too small, need at least " +
                            std::to_string(required_vmax(f0, t_final)));
  }
  PhaseGrid g = project(f0, params.nx, params.nv, params.vmax);
  const double m0 = g.mass();
  for (double& v : g.values()) v /= m0;

  const auto steps = static_cast<std::size_t>(std::floor(t_final / params.dt + 1e-9));
  GridSolution sol;
  sol.trace.times.reserve(steps + 1);
  sol.trace.sup_norms.reserve(steps + 1);
  sol.trace.times.push_back(0.0);
  sol.trace.sup_norms.push_back(density(g).sup_norm);
  if (keep(0, steps)) {
    sol.snapshots.push_back(g);
  }
  for (std::size_t k = 1; k <= steps; ++k) {
    g = step_strang(g, params.dt);
    g.time = static_cast<double>(k) * params.dt;
    sol.trace.times.push_back(g.time);
    sol.trace.sup_norms.push_back(density(g).sup_norm);
    if (keep(k, steps)) {
      sol.snapshots.push_back(g);
    }
  }
  return sol;
}

}  // namespace

GridSolution solve(const InitialDistribution& f0, const GridParams& params,
                   double t_final, std::size_t snapshot_every) {
  if (snapshot_every == 0) {
    throw InvalidArgument("solve: snapshot_every must be at least 1");
  }
  return run_solver(f0, params, t_final, [&](std::size_t k, std::size_t steps) {
    return k % snapshot_every == 0 || k == steps;
  });
}

GridSolution solve_at(const InitialDistribution& f0, const GridParams& params,
                      double t_final, const std::vector<double>& snapshot_times) {
  std::vector<std::size_t> wanted;
  for (double t : snapshot_times) {
    const double q = t / params.dt;
    const double r = std::round(q);
    if (std::abs(q - r) > 1e-9 * std::max(1.0, q) || r < 0.0) {
      throw InvalidArgument("solve_at: snapshot time " + std::to_string(t) +
                            " is not a multiple of dt");
    }
    wanted.push_back(static_cast<std::size_t>(r));
  }
  std::sort(wanted.begin(), wanted.end());
  return run_solver(f0, params, t_final, [&](std::size_t k, std::size_t) {
    return std::binary_search(wanted.begin(), wanted.end(), k);
  });
}

double a_of_t(const DensityTrace& trace, double t) {
  if (trace.times.empty() || trace.times.size() != trace.sup_norms.size()) {
    throw InvalidArgument("a_of_t: malformed trace");
  }
  if (t < 0.0 || t > trace.times.back() + 1e-12) {
    throw OutOfRange("a_of_t: t = " + std::to_string(t) + " is outside the trace");
  }
  double integral = 0.0;
  for (std::size_t k = 1; k < trace.times.size(); ++k) {
    const double t0 = trace.times[k - 1];
    const double t1 = trace.times[k];
    if (t <= t0) break;
    const double r0 = trace.sup_norms[k - 1];
    const double r1 = trace.sup_norms[k];
    if (t >= t1) {
      integral += 0.5 * (t1 - t0) * (r0 + r1);
    } else {
      const double rt = r0 + (r1 - r0) * (t - t0) / (t1 - t0);
      integral += 0.5 * (t - t0) * (r0 + rt);
      break;
    }
  }
  return std::sqrt(2.0) * t + 8.0 * integral;
}

double density_bound(const InitialDistribution& f0, double t) {
  const double g0 = f0.g0_integral();
  if (!std::isfinite(g0)) {
    throw InvalidArgument("density_bound: envelope is not integrable");
  }
  return 2.0 * g0 + f0.sup_norm() * t;
}

DiscreteMeasure grid_to_measure(const PhaseGrid& grid, const GridMeasureMode& mode) {
  const double total = std::accumulate(grid.values().begin(), grid.values().end(), 0.0);
  if (!(total > 0.0)) {
    throw PreconditionError("grid_to_measure: empty grid");
  }
  auto center = [&](std::size_t cell) {
    const std::size_t i = cell / grid.nv();
    const std::size_t j = cell % grid.nv();
    return PhasePoint{wrap(grid.x_center(i)), grid.v_center(j)};
  };
  DiscreteMeasure mu;
  if (std::holds_alternative<CellAtoms>(mode)) {
    for (std::size_t c = 0; c < grid.values().size(); ++c) {
      const double f = grid.values()[c];
      if (f > 0.0) {
        mu.atoms.push_back(center(c));
        mu.weights.push_back(f / total);
      }
    }
    return mu;
  }
  const auto& s = std::get<GridSample>(mode);
  if (s.m == 0) {
    throw InvalidArgument("grid_to_measure: m must be at least 1");
  }
  // Walk the cells along a Hilbert curve in physical coordinates so the comb
  // spreads atoms evenly in both x and v.
  const std::size_t cells = grid.values().size();
  const double side = std::max(1.0, 2.0 * grid.vmax());
  std::vector<std::pair<std::uint64_t, std::size_t>> order(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    const PhasePoint p = center(c);
    const auto qx = static_cast<std::uint32_t>((p.x.value() + 0.5) / side * 65536.0);
    const auto qv = static_cast<std::uint32_t>((p.v + grid.vmax()) / side * 65536.0);
    order[c] = {hilbert_index(qx, qv), c};
  }
  std::sort(order.begin(), order.end());
  std::vector<double> w(cells);
  for (std::size_t k = 0; k < cells; ++k) w[k] = grid.values()[order[k].second];

  Rng rng(derive_seed(s.seed, streams::kGridSample));
  const auto picks = systematic_resample(w, s.m, rng.uniform());
  std::vector<PhasePoint> atoms;
  atoms.reserve(s.m);
  for (std::size_t k : picks) {
    atoms.push_back(center(order[k].second));
  }
  return DiscreteMeasure::uniform(std::move(atoms));
}

}  // namespace vlasov1d
