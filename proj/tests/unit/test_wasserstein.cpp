#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vlasov1d/errors.hpp"
#include "vlasov1d/rng.hpp"
#include "vlasov1d/wasserstein.hpp"

using namespace vlasov1d;

namespace {

std::vector<PhasePoint> cloud(std::size_t n, Rng& rng) {
  std::vector<PhasePoint> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({wrap(rng.uniform()), 2 * rng.uniform() - 1});
  return pts;
}

double brute_force_assignment(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::vector<std::size_t> p(mu.size());
  std::iota(p.begin(), p.end(), 0);
  double best = INFINITY;
  do {
    double c = 0;
    for (std::size_t i = 0; i < p.size(); ++i) c += phase_distance(mu.atoms[i], nu.atoms[p[i]]);
    best = std::min(best, c);
  } while (std::next_permutation(p.begin(), p.end()));
  return best / static_cast<double>(mu.size());
}

// Weights that are multiples of 1/total, expanded into equal atoms.
DiscreteMeasure rational(const std::vector<PhasePoint>& pts, const std::vector<int>& counts) {
  const int total = std::accumulate(counts.begin(), counts.end(), 0);
  DiscreteMeasure mu;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    mu.atoms.push_back(pts[i]);
    mu.weights.push_back(static_cast<double>(counts[i]) / total);
  }
  return mu;
}

DiscreteMeasure expand(const std::vector<PhasePoint>& pts, const std::vector<int>& counts) {
  std::vector<PhasePoint> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (int k = 0; k < counts[i]; ++k) out.push_back(pts[i]);
  }
  return DiscreteMeasure::uniform(out);
}

void check_plan(const W1Result& r, const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::vector<double> rows(mu.size(), 0.0), cols(nu.size(), 0.0);
  double cost = 0;
  for (const auto& e : r.plan.entries) {
    EXPECT_GT(e.mass, 0.0);
    rows[e.source] += e.mass;
    cols[e.target] += e.mass;
    cost += e.mass * phase_distance(mu.atoms[e.source], nu.atoms[e.target]);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_NEAR(rows[i], mu.weights[i], 1e-10);
  for (std::size_t j = 0; j < cols.size(); ++j) EXPECT_NEAR(cols[j], nu.weights[j], 1e-10);
  EXPECT_NEAR(cost, r.plan.cost, 1e-12);
  EXPECT_NEAR(r.distance, r.plan.cost, 1e-12);
  EXPECT_LE(r.max_dual_violation, 1e-9);
}

}  // namespace

TEST(W1Exact, Examples) {
  const auto a = DiscreteMeasure::uniform({{wrap(0), 0}});
  const auto b = DiscreteMeasure::uniform({{wrap(0), 1}});
  EXPECT_DOUBLE_EQ(w1_exact(a, b).distance, 1.0);
  Rng rng(1);
  const auto mu = DiscreteMeasure::uniform(cloud(20, rng));
  EXPECT_EQ(w1_exact(mu, mu).distance, 0.0);
}

TEST(AssignmentOracle, Examples) {
  const auto mu = DiscreteMeasure::uniform({{wrap(-0.1), 0}, {wrap(0.1), 0}});
  const auto nu = DiscreteMeasure::uniform({{wrap(-0.1), 1}, {wrap(0.1), 1}});
  EXPECT_DOUBLE_EQ(w1_assignment_oracle(mu, nu), 1.0);
  const auto p = DiscreteMeasure::uniform({{wrap(0.3), 0.4}});
  const auto q = DiscreteMeasure::uniform({{wrap(0.0), 0.0}});
  EXPECT_DOUBLE_EQ(w1_assignment_oracle(p, q), 0.5);
  Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = DiscreteMeasure::uniform(cloud(3, rng));
    const auto y = DiscreteMeasure::uniform(cloud(3, rng));
    EXPECT_NEAR(w1_assignment_oracle(x, y), brute_force_assignment(x, y), 1e-15);
  }
}

TEST(AssignmentOracle, MatchesBruteForceUpTo7) {
  Rng rng(3);
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto x = DiscreteMeasure::uniform(cloud(n, rng));
    const auto y = DiscreteMeasure::uniform(cloud(n, rng));
    EXPECT_NEAR(w1_assignment_oracle(x, y), brute_force_assignment(x, y), 1e-14);
  }
}

TEST(AssignmentOracle, RejectsUnequalInputs) {
  Rng rng(4);
  const auto x = DiscreteMeasure::uniform(cloud(3, rng));
  const auto y = DiscreteMeasure::uniform(cloud(4, rng));
  EXPECT_THROW(w1_assignment_oracle(x, y), InvalidArgument);
  const DiscreteMeasure z{cloud(2, rng), {0.25, 0.75}};
  EXPECT_THROW(w1_assignment_oracle(z, z), InvalidArgument);
}

TEST(W1Exact, MatchesOracleOnEqualWeights) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng.below(64);
    const auto x = DiscreteMeasure::uniform(cloud(n, rng));
    const auto y = DiscreteMeasure::uniform(cloud(n, rng));
    const auto r = w1_exact(x, y);
    EXPECT_NEAR(r.distance, w1_assignment_oracle(x, y), 1e-9);
    check_plan(r, x, y);
  }
}

TEST(W1Exact, MatchesExpandedOracleOnRationalWeights) {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 1 + rng.below(8), n = 1 + rng.below(8);
    const int total = 24;
    auto split = [&](std::size_t k) {
      std::vector<int> c(k, 1);
      for (int extra = total - static_cast<int>(k); extra > 0; --extra) c[rng.below(k)]++;
      return c;
    };
    const auto pa = cloud(m, rng), pb = cloud(n, rng);
    const auto ca = split(m), cb = split(n);
    const auto mu = rational(pa, ca), nu = rational(pb, cb);
    const auto r = w1_exact(mu, nu);
    EXPECT_NEAR(r.distance, w1_assignment_oracle(expand(pa, ca), expand(pb, cb)), 1e-9);
    check_plan(r, mu, nu);
  }
}

TEST(W1Exact, UnequalSizesAndIrrationalWeights) {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    auto pts = cloud(30, rng);
    std::vector<double> w(30);
    double s = 0;
    for (auto& x : w) s += (x = 0.1 + rng.uniform());
    for (auto& x : w) x /= s;
    const DiscreteMeasure mu{pts, w};
    const auto nu = DiscreteMeasure::uniform(cloud(17, rng));
    const auto r = w1_exact(mu, nu);
    check_plan(r, mu, nu);
  }
}

TEST(W1Exact, MetricAxioms) {
  Rng rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = DiscreteMeasure::uniform(cloud(1 + rng.below(32), rng));
    const auto b = DiscreteMeasure::uniform(cloud(1 + rng.below(32), rng));
    const auto c = DiscreteMeasure::uniform(cloud(1 + rng.below(32), rng));
    const double ab = w1_exact(a, b).distance, ba = w1_exact(b, a).distance;
    EXPECT_NEAR(ab, ba, 1e-10);
    EXPECT_EQ(w1_exact(a, a).distance, 0.0);
    EXPECT_LE(w1_exact(a, c).distance, ab + w1_exact(b, c).distance + 1e-9);
  }
}

TEST(W1Exact, TranslationCovarianceInV) {
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    auto pa = cloud(20, rng), pb = cloud(25, rng);
    const double d0 = w1_exact(DiscreteMeasure::uniform(pa), DiscreteMeasure::uniform(pb)).distance;
    const double shift = 3 * rng.uniform() - 1.5;
    for (auto& p : pa) p.v += shift;
    for (auto& p : pb) p.v += shift;
    const double d1 = w1_exact(DiscreteMeasure::uniform(pa), DiscreteMeasure::uniform(pb)).distance;
    EXPECT_NEAR(d0, d1, 1e-10);
  }
}

TEST(W1Exact, Errors) {
  Rng rng(10);
  const auto a = DiscreteMeasure::uniform(cloud(100, rng));
  const auto b = DiscreteMeasure::uniform(cloud(100, rng));
  W1Options small;
  small.max_cost_entries = 9999;
  try {
    w1_exact(a, b, small);
    FAIL() << "expected ResourceLimit";
  } catch (const ResourceLimit& e) {
    EXPECT_NE(std::string(e.what()).find("subsample"), std::string::npos);
  }
  DiscreteMeasure heavy = a;
  for (auto& w : heavy.weights) w *= 2;
  EXPECT_THROW(w1_exact(heavy, b), PreconditionError);
}

TEST(W1Exact, DegenerateTies) {
  // many identical atoms and equal costs stress degenerate pivots
  std::vector<PhasePoint> a(40, PhasePoint{wrap(0.0), 0.0}), b;
  for (int i = 0; i < 40; ++i) b.push_back({wrap(i % 2 ? 0.25 : -0.25), 0.0});
  const auto mu = DiscreteMeasure::uniform(a), nu = DiscreteMeasure::uniform(b);
  const auto r = w1_exact(mu, nu);
  EXPECT_NEAR(r.distance, 0.25, 1e-12);
  check_plan(r, mu, nu);
}

TEST(SolveTransport, SmallIntegerInstance) {
  // 2x3 instance solvable by inspection
  const std::vector<long long> supply = {3, 2}, demand = {1, 2, 2};
  const std::vector<double> cost = {1, 2, 3, 4, 1, 1};
  const auto r = solve_transport(supply, demand, cost);
  // row 1 fills column 2, row 0 the rest: 1 + 4 + 2
  EXPECT_DOUBLE_EQ(r.cost, 7.0);
  long long total = 0;
  for (auto f : r.flow) {
    EXPECT_GE(f, 0);
    total += f;
  }
  EXPECT_EQ(total, 5);
}

TEST(W1Exact, VelocityTranslateCostsTheShift) {
  Rng rng(12);
  const auto mu = DiscreteMeasure::uniform(cloud(300, rng));
  std::vector<PhasePoint> shifted = mu.atoms;
  for (auto& p : shifted) p.v += 0.3;
  const auto nu = DiscreteMeasure::uniform(shifted);
  const double full = w1_exact(mu, nu).distance;
  EXPECT_NEAR(full, 0.3, 1e-12);
}
