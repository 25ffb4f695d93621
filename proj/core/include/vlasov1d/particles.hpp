#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "vlasov1d/discrete_measure.hpp"
#include "vlasov1d/geometry.hpp"
#include "vlasov1d/kernel.hpp"

namespace vlasov1d {

/// N particles on T x R at a common time.
struct ParticleState {
  std::vector<TorusCoord> positions;
  std::vector<double> velocities;
  double time = 0.0;

  std::size_t size() const { return positions.size(); }

  /// Wraps raw positions. Throws InvalidArgument on length mismatch or N = 0.
  static ParticleState from_raw(std::span<const double> x,
                                std::span<const double> v, double time = 0.0);
};

enum class Integrator { SemiImplicitEuler, VelocityVerlet };

const char* to_string(Integrator scheme);

/// F_i = -(1/N) sum_j K'(x_i - x_j), O(N^2). Works for every kernel kind.
std::vector<double> force_naive(const ParticleState& state,
                                const KernelKind& kind);

/// Same as force_naive with the exact kernel, in O(N log N).
///
/// With W'(d) = wrap(d) - sign(wrap(d))/2, the sum over partners splits into
/// a sum of wrapped differences (N x_i - sum x_j plus a +-1 correction per
/// partner further than 1/2 away) and a sum of signs, both read off a sorted
/// copy of the positions. Equal positions contribute nothing.
std::vector<double> force_sorted(const ParticleState& state);

/// Throws UnsupportedKernel unless `kind` is exact.
std::vector<double> force_sorted(const ParticleState& state,
                                 const KernelKind& kind);

/// force_sorted for the exact kernel, force_naive otherwise.
std::vector<double> compute_force(const ParticleState& state,
                                  const KernelKind& kind);

/// Weighted periodic sawtooth sums against sorted sources:
/// out[q] = sum_k weights[k] * W'(wrap(queries[q] - sources[k])).
/// `sources` must be sorted ascending. Shared by the particle force and the
/// grid field.
std::vector<double> sawtooth_sums(std::span<const double> sources,
                                  std::span<const double> weights,
                                  std::span<const double> queries);

/// One step of size dt. Positions are re-wrapped.
ParticleState step(const ParticleState& state, double dt,
                   const KernelKind& kind,
                   Integrator scheme = Integrator::VelocityVerlet);

/// Stepper that caches the force between velocity-Verlet steps.
class Propagator {
 public:
  Propagator(ParticleState initial, KernelKind kind, Integrator scheme);

  void advance(double dt);
  const ParticleState& state() const { return state_; }
  const std::vector<double>& force() const { return force_; }

 private:
  ParticleState state_;
  KernelKind kind_;
  Integrator scheme_;
  std::vector<double> force_;
};

struct TrajectoryRecord {
  std::vector<double> sample_times;
  std::vector<ParticleState> states;
  Integrator scheme = Integrator::VelocityVerlet;
  double dt = 0.0;
  KernelKind kind = KernelKind::exact();
};

/// Integrates to t_final. Records the initial state, every `sample_every`-th
/// step, and the final state. The last step is shortened when t_final is not
/// a multiple of dt. Sample times are k * dt, not accumulated sums.
TrajectoryRecord simulate(const ParticleState& initial, double t_final,
                          double dt, const KernelKind& kind,
                          std::size_t sample_every,
                          Integrator scheme = Integrator::VelocityVerlet);

/// Atoms (x_i, v_i), weight 1/N each. Coincident particles stay separate.
DiscreteMeasure empirical_measure(const ParticleState& state);

struct Diagnostics {
  double momentum = 0.0;   // mean velocity
  double energy = 0.0;     // (1/2N) sum v^2 + (1/2N^2) sum_{i != j} W
  double max_speed = 0.0;
};

Diagnostics diagnostics(const ParticleState& state,
                        const KernelKind& kind = KernelKind::exact());

/// Test function on T x R with its partial derivatives. x is periodic.
struct TestFunction {
  std::function<double(double, double)> phi;
  std::function<double(double, double)> dphi_dx;
  std::function<double(double, double)> dphi_dv;
};

/// Residual of the weak formulation of the kinetic equation for the
/// empirical measure along a recorded trajectory, at its last sample time:
///   <mu_t, phi> - <mu_0, phi> - int <mu_s, v phi_x> ds
///     + int (1/N^2) sum_ij W'(x_i - x_j) phi_v(x_i, v_i) ds.
/// Time integrals use the trapezoidal rule over the recorded samples, so the
/// record should hold every step.
double weak_residual(const TrajectoryRecord& record, const TestFunction& phi);

}  // namespace vlasov1d
