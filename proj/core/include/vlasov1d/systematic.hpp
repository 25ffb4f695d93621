#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vlasov1d {

/// Systematic resampling: indices hit by the comb (k + offset)/m, k < m, on
/// the cumulative normalised weights. `offset` lies in [0, 1). Returned
/// indices are nondecreasing.
std::vector<std::size_t> systematic_resample(std::span<const double> weights,
                                             std::size_t m, double offset);

}  // namespace vlasov1d
