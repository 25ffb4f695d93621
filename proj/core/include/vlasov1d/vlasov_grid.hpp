#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "vlasov1d/discrete_measure.hpp"
#include "vlasov1d/measures.hpp"

namespace vlasov1d {

/// Cell-averaged phase density on [-1/2, 1/2) x [-vmax, vmax].
/// Cell (i, j) has center (-1/2 + (i + 1/2) dx, -vmax + (j + 1/2) dv);
/// values are stored row-major as values[i * nv + j].
class PhaseGrid {
 public:
  PhaseGrid(std::size_t nx, std::size_t nv, double vmax);

  std::size_t nx() const { return nx_; }
  std::size_t nv() const { return nv_; }
  double vmax() const { return vmax_; }
  double dx() const { return 1.0 / static_cast<double>(nx_); }
  double dv() const { return 2.0 * vmax_ / static_cast<double>(nv_); }
  double x_center(std::size_t i) const;
  double v_center(std::size_t j) const;

  double& at(std::size_t i, std::size_t j) { return values_[i * nv_ + j]; }
  double at(std::size_t i, std::size_t j) const { return values_[i * nv_ + j]; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  double time = 0.0;

  double mass() const;

 private:
  std::size_t nx_;
  std::size_t nv_;
  double vmax_;
  std::vector<double> values_;
};

/// Exact cell averages of f0.
PhaseGrid project(const InitialDistribution& f0, std::size_t nx, std::size_t nv,
                  double vmax);

struct DensityProfile {
  std::vector<double> rho;
  double sup_norm = 0.0;
};

struct FieldProfile {
  std::vector<double> e;
};

struct DensityTrace {
  std::vector<double> times;
  std::vector<double> sup_norms;
};

/// Midpoint quadrature in v: rho_i = sum_j f_ij dv.
DensityProfile density(const PhaseGrid& grid);

/// e_i = -sum_k W'(wrap(x_i - x_k)) rho_k dx on cell centers, mean zero.
/// Throws PreconditionError unless sum rho dx = 1 within 1e-6.
FieldProfile field(const DensityProfile& rho);

/// Strang splitting: half x-advection, full v-advection in the
/// self-consistent field, half x-advection. Semi-Lagrangian with cubic
/// Lagrange interpolation, periodic in x and zero inflow at |v| = vmax.
/// Negative undershoots are clipped and the mass reset to its pre-step value.
PhaseGrid step_strang(const PhaseGrid& grid, double dt);

struct GridParams {
  std::size_t nx = 128;
  std::size_t nv = 128;
  double vmax = 2.0;
  double dt = 1e-2;
};

struct GridSolution {
  std::vector<PhaseGrid> snapshots;
  DensityTrace trace;
};

/// Smallest vmax accepted by solve() for this datum and horizon.
double required_vmax(const InitialDistribution& f0, double t_final);

/// Runs floor(t_final / dt) steps. The trace samples ||rho||_inf after every
/// step (and at t = 0); snapshots are kept every `snapshot_every` steps plus
/// the final one.
///
/// Throws PreconditionError when more than 1e-6 of the mass of f0 lies
/// beyond vmax - t_final / 2 (velocities grow at most at rate 1/2).
GridSolution solve(const InitialDistribution& f0, const GridParams& params,
                   double t_final, std::size_t snapshot_every = 1);

/// Same, but keeps snapshots at the listed times, each of which must be a
/// multiple of dt within 1e-9 (InvalidArgument otherwise).
GridSolution solve_at(const InitialDistribution& f0, const GridParams& params,
                      double t_final, const std::vector<double>& snapshot_times);

/// sqrt(2) t + 8 int_0^t ||rho_s||_inf ds, trapezoidal in the trace.
double a_of_t(const DensityTrace& trace, double t);

/// 2 int_0^inf g0 + ||f0||_inf t.
double density_bound(const InitialDistribution& f0, double t);

struct CellAtoms {};
struct GridSample {
  std::size_t m = 1024;
  std::uint64_t seed = 0;
};
using GridMeasureMode = std::variant<CellAtoms, GridSample>;

/// CellAtoms: one atom per nonzero cell at its center, weight cell mass /
/// total. GridSample: m atoms by systematic resampling of the cell masses,
/// weight 1/m each.
DiscreteMeasure grid_to_measure(const PhaseGrid& grid, const GridMeasureMode& mode);

}  // namespace vlasov1d
