#include "vlasov1d/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "vlasov1d/errors.hpp"

namespace vlasov1d {
namespace {

constexpr long long kMaxScale = 1LL << 50;

bool equal_weights(const DiscreteMeasure& mu) {
  return std::all_of(mu.weights.begin(), mu.weights.end(),
                     [&](double w) { return w == mu.weights.front(); });
}

// Common integer scale for both marginals. Uniform measures with m and n
// atoms get a multiple of lcm(m, n), so their supplies are exact.
long long pick_scale(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (equal_weights(mu) && equal_weights(nu)) {
    const auto l = std::lcm(static_cast<long long>(mu.size()),
                            static_cast<long long>(nu.size()));
    if (l <= kMaxScale) {
      return l * (kMaxScale / l);
    }
  }
  return kMaxScale;
}

// Largest-remainder rounding of weights * scale so the integers sum to scale.
std::vector<long long> integer_masses(const std::vector<double>& weights,
                                      long long scale) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<long long> out(weights.size());
  std::vector<std::pair<double, std::size_t>> remainders(weights.size());
  long long assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = weights[i] / total * static_cast<double>(scale);
    const double fl = std::floor(exact);
    out[i] = static_cast<long long>(fl);
    assigned += out[i];
    remainders[i] = {exact - fl, i};
  }
  long long left = scale - assigned;
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) {
              return a.first != b.first ? a.first > b.first : a.second < b.second;
            });
  for (std::size_t k = 0; left > 0; k = (k + 1) % remainders.size(), --left) {
    ++out[remainders[k].second];
  }
  for (std::size_t k = 0; left < 0; k = (k + 1) % remainders.size()) {
    auto& v = out[remainders[remainders.size() - 1 - k].second];
    if (v > 0) {
      --v;
      ++left;
    }
  }
  return out;
}

}  // namespace

W1Result w1_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                  const W1Options& options) {
  mu.validate(1e-9);
  nu.validate(1e-9);
  if (std::abs(mu.total_weight() - nu.total_weight()) > 1e-9) {
    throw PreconditionError("w1_exact: measures have different total mass");
  }
  const std::size_t m = mu.size();
  const std::size_t n = nu.size();
  if (m > options.max_cost_entries / n) {
    throw ResourceLimit("w1_exact: " + std::to_string(m) + " x " +
                        std::to_string(n) +
                        " cost entries exceed the cap of " +
                        std::to_string(options.max_cost_entries) +
                        "; subsample the measures first");
  }

  std::vector<double> cost(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[i * n + j] = phase_distance(mu.atoms[i], nu.atoms[j]);
    }
  }
  const long long scale = pick_scale(mu, nu);
  const auto supply = integer_masses(mu.weights, scale);
  const auto demand = integer_masses(nu.weights, scale);
  const IntegerTransportResult tr = solve_transport(supply, demand, cost);

  W1Result res;
  res.pivots = tr.pivots;
  const double inv_scale = 1.0 / static_cast<double>(scale);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const long long f = tr.flow[i * n + j];
      if (f > 0) {
        const double mass = static_cast<double>(f) * inv_scale;
        res.plan.entries.push_back({i, j, mass});
        total += mass * cost[i * n + j];
      }
    }
  }
  double violation = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double rc = cost[i * n + j] + tr.row_potential[i] - tr.col_potential[j];
      violation = std::max(violation, -rc);
    }
  }
  res.max_dual_violation = violation;
  res.plan.cost = total;
  res.distance = total;
  return res;
}

double w1_assignment_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const std::size_t n = mu.size();
  if (n == 0 || nu.size() != n) {
    throw InvalidArgument("assignment oracle: measures need equal, nonzero atom counts");
  }
  const double w = 1.0 / static_cast<double>(n);
  for (const auto* m : {&mu, &nu}) {
    for (double wi : m->weights) {
      if (std::abs(wi - w) > 1e-12) {
        throw InvalidArgument("assignment oracle: all weights must equal 1/n");
      }
    }
  }

  // Shortest augmenting path Hungarian method, 1-based with a dummy column 0.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  auto c = [&](std::size_t i, std::size_t j) {
    return phase_distance(mu.atoms[i - 1], nu.atoms[j - 1]);
  };
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = c(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    total += c(p[j], j);
  }
  return total * w;
}

}  // namespace vlasov1d
