#include "vlasov1d/systematic.hpp"

#include <numeric>

#include "vlasov1d/errors.hpp"

namespace vlasov1d {

std::vector<std::size_t> systematic_resample(std::span<const double> weights,
                                             std::size_t m, double offset) {
  if (weights.empty()) {
    throw InvalidArgument("systematic_resample: empty weight vector");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) {
    throw InvalidArgument("systematic_resample: weights sum to zero");
  }
  std::vector<std::size_t> picks;
  picks.reserve(m);
  std::size_t idx = 0;
  double cumulative = weights[0] / total;
  for (std::size_t k = 0; k < m; ++k) {
    const double u = (static_cast<double>(k) + offset) / static_cast<double>(m);
    while (u >= cumulative && idx + 1 < weights.size()) {
      ++idx;
      cumulative += weights[idx] / total;
    }
    // Rounding in the running sum can leave the comb past a zero tail.
    std::size_t pick = idx;
    while (weights[pick] <= 0.0 && pick > 0) {
      --pick;
    }
    picks.push_back(pick);
  }
  return picks;
}

}  // namespace vlasov1d
