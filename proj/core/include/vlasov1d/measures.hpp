#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "vlasov1d/discrete_measure.hpp"
#include "vlasov1d/particles.hpp"

namespace vlasov1d {

/// Uniform in x on the whole torus, uniform in v on [-h, h].
struct UniformBox {
  double v_half_width = 0.5;
};

/// Uniform in x, Gaussian in v with standard deviation sigma, cut at |v| = vcut.
struct TruncatedMaxwellian {
  double sigma = 1.0;
  double vcut = 4.0;
};

/// Piecewise-constant density on an nx x nv table covering
/// [-1/2, 1/2) x [-vmax, vmax]; values row-major, values[i * nv + j] for the
/// cell (x_i, v_j). Normalised to unit mass on construction.
struct TableGrid {
  std::size_t nx = 0;
  std::size_t nv = 0;
  double vmax = 1.0;
  std::vector<double> values;
};

using DistributionSpec = std::variant<UniformBox, TruncatedMaxwellian, TableGrid>;

enum class SamplingStrategy { IID, Stratified };

/// An analytic initial datum f0 together with the quantities the a priori
/// estimates need: the envelope g0(v) = sup_{x, |w| >= v} f0(x, w), its
/// integral over [0, inf), the sup norm, and the first velocity moment.
///
/// Construction validates the spec and checks unit mass by quadrature
/// (InvalidArgument otherwise).
class InitialDistribution {
 public:
  explicit InitialDistribution(DistributionSpec spec);

  const DistributionSpec& spec() const { return spec_; }
  std::string name() const;

  double pdf(double x, double v) const;
  /// Exact mass of the box [x0, x1] x [v0, v1] (x0 <= x1 within one period).
  double cell_mass(double x0, double x1, double v0, double v1) const;

  double g0_envelope(double v) const;
  /// Integral of g0 over [0, inf).
  double g0_integral() const;
  double sup_norm() const;
  double first_v_moment() const;
  /// Smallest V with f0 = 0 for |v| > V.
  double v_support() const;
  /// Mass carried by |v| > v.
  double mass_outside(double v) const;

  /// Maps a point of the unit square to phase space through the inverse
  /// cumulative distribution: u1 picks x from the x-marginal, u2 picks v from
  /// the conditional law given x.
  PhasePoint inverse_transform(double u1, double u2) const;

 private:
  void validate() const;

  DistributionSpec spec_;
  // TableGrid only: unnormalised x-marginal per table row.
  std::vector<double> row_mass_;
  double normaliser_ = 1.0;
};

/// n phase points drawn from f0. IID uses independent uniforms; Stratified
/// uses a jittered k x k lattice of the unit square when n = k^2 and a
/// Latin hypercube otherwise, pushed through inverse_transform.
ParticleState sample_initial(const InitialDistribution& f0, std::size_t n,
                             std::uint64_t seed, SamplingStrategy strategy);

/// (1 + amplitude cos(2 pi k x)) times a truncated Maxwellian, tabulated on
/// an nx x nv table. A convenient non-equilibrium datum with bounded g0.
TableGrid perturbed_maxwellian_table(double amplitude, int mode, double sigma,
                                     double vcut, std::size_t nx,
                                     std::size_t nv);

}  // namespace vlasov1d
