#pragma once

#include <cstddef>
#include <vector>

#include "vlasov1d/discrete_measure.hpp"

namespace vlasov1d {

struct TransportEntry {
  std::size_t source = 0;
  std::size_t target = 0;
  double mass = 0.0;
};

/// Optimal plan between the atoms of two measures. Only positive-mass
/// entries are stored.
struct TransportPlan {
  std::vector<TransportEntry> entries;
  double cost = 0.0;
};

struct W1Options {
  // m * n above this is refused; subsample first.
  std::size_t max_cost_entries = 4'000'000;
};

struct W1Result {
  double distance = 0.0;
  TransportPlan plan;
  // Largest negative reduced cost u_i + v_j - c_ij < 0 violation of the
  // final dual solution; the optimality certificate.
  double max_dual_violation = 0.0;
  std::size_t pivots = 0;
};

/// Exact W1 under phase_distance by a primal network simplex on the
/// complete bipartite transportation network.
///
/// Throws ResourceLimit when m * n exceeds the cap and PreconditionError
/// for unnormalised or unbalanced inputs.
W1Result w1_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                  const W1Options& options = {});

/// Optimal assignment cost / n by the O(n^3) Hungarian method. Both
/// measures must have n atoms of weight 1/n. Independent of w1_exact.
double w1_assignment_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Exact transportation solver on a dense cost matrix (row-major m x n)
/// with integer supplies and demands of equal totals. Exposed for testing
/// and benchmarking the network simplex on its own.
struct IntegerTransportResult {
  std::vector<long long> flow;  // m * n
  std::vector<double> row_potential;
  std::vector<double> col_potential;
  double cost = 0.0;
  std::size_t pivots = 0;
};

IntegerTransportResult solve_transport(const std::vector<long long>& supply,
                                       const std::vector<long long>& demand,
                                       const std::vector<double>& cost);

}  // namespace vlasov1d
