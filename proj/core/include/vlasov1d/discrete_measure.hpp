#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vlasov1d/geometry.hpp"

namespace vlasov1d {

/// Finitely many weighted atoms on T x R. Weights are positive and sum to 1.
struct DiscreteMeasure {
  std::vector<PhasePoint> atoms;
  std::vector<double> weights;

  std::size_t size() const { return atoms.size(); }

  /// Throws PreconditionError if lengths differ, a weight is not positive,
  /// or the total deviates from 1 by more than `tol`.
  void validate(double tol = 1e-12) const;

  double total_weight() const;

  /// n atoms with weight 1/n each.
  static DiscreteMeasure uniform(std::vector<PhasePoint> atoms);
};

/// Sum of weights * |v|.
double first_v_moment(const DiscreteMeasure& mu);

/// m equally weighted atoms by systematic resampling proportional to the
/// weights. Deterministic given the seed; atom order follows the input.
DiscreteMeasure subsample(const DiscreteMeasure& mu, std::size_t m,
                          std::uint64_t seed);

}  // namespace vlasov1d
