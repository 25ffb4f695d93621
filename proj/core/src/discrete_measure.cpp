#include "vlasov1d/discrete_measure.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "vlasov1d/errors.hpp"
#include "vlasov1d/rng.hpp"
#include "vlasov1d/systematic.hpp"

namespace vlasov1d {

void DiscreteMeasure::validate(double tol) const {
  if (atoms.size() != weights.size()) {
    throw PreconditionError("measure: atom and weight counts differ");
  }
  if (atoms.empty()) {
    throw PreconditionError("measure: no atoms");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw PreconditionError("measure: weights must be positive and finite");
    }
  }
  for (const auto& a : atoms) {
    if (!std::isfinite(a.v)) {
      throw PreconditionError("measure: non-finite velocity");
    }
  }
  const double total = total_weight();
  if (std::abs(total - 1.0) > tol) {
    throw PreconditionError("measure: total weight " + std::to_string(total) +
                            " is not 1");
  }
}

double DiscreteMeasure::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

DiscreteMeasure DiscreteMeasure::uniform(std::vector<PhasePoint> atoms) {
  DiscreteMeasure mu;
  const double w = 1.0 / static_cast<double>(atoms.size());
  mu.weights.assign(atoms.size(), w);
  mu.atoms = std::move(atoms);
  return mu;
}

double first_v_moment(const DiscreteMeasure& mu) {
  double m = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    m += mu.weights[i] * std::abs(mu.atoms[i].v);
  }
  return m;
}

DiscreteMeasure subsample(const DiscreteMeasure& mu, std::size_t m,
                          std::uint64_t seed) {
  if (m == 0) {
    throw InvalidArgument("subsample: m must be at least 1");
  }
  mu.validate(1e-9);
  Rng rng(derive_seed(seed, streams::kSubsample));
  const auto picks = systematic_resample(mu.weights, m, rng.uniform());
  std::vector<PhasePoint> atoms;
  atoms.reserve(m);
  for (std::size_t k : picks) {
    atoms.push_back(mu.atoms[k]);
  }
  return DiscreteMeasure::uniform(std::move(atoms));
}

}  // namespace vlasov1d
