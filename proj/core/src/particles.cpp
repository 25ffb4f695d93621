#include "vlasov1d/particles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vlasov1d/errors.hpp"

namespace vlasov1d {

ParticleState ParticleState::from_raw(std::span<const double> x,
                                      std::span<const double> v, double time) {
  if (x.size() != v.size()) {
    throw InvalidArgument("particle state: position/velocity length mismatch");
  }
  if (x.empty()) {
    throw InvalidArgument("particle state: need at least one particle");
  }
  ParticleState s;
  s.positions.reserve(x.size());
  for (double xi : x) {
    s.positions.push_back(wrap(xi));
  }
  s.velocities.assign(v.begin(), v.end());
  s.time = time;
  return s;
}

const char* to_string(Integrator scheme) {
  switch (scheme) {
    case Integrator::SemiImplicitEuler:
      return "semi_implicit_euler";
    case Integrator::VelocityVerlet:
      return "velocity_verlet";
  }
  return "unknown";
}

std::vector<double> force_naive(const ParticleState& state,
                                const KernelKind& kind) {
  const std::size_t n = state.size();
  std::vector<double> f(n, 0.0);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += kernel_force(torus_diff(state.positions[i], state.positions[j]),
                          kind);
    }
    f[i] = -inv_n * sum;
  }
  return f;
}

std::vector<double> sawtooth_sums(std::span<const double> sources,
                                  std::span<const double> weights,
                                  std::span<const double> queries) {
  if (sources.size() != weights.size()) {
    throw InvalidArgument("sawtooth_sums: sources/weights length mismatch");
  }
  const std::size_t n = sources.size();
  // prefix_w[k] = sum of the first k weights, prefix_ws[k] likewise for w*s.
  std::vector<double> prefix_w(n + 1, 0.0);
  std::vector<double> prefix_ws(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    prefix_w[k + 1] = prefix_w[k] + weights[k];
    prefix_ws[k + 1] = prefix_ws[k] + weights[k] * sources[k];
  }
  const double total_w = prefix_w[n];
  const double total_ws = prefix_ws[n];

  // For y, s in [-1/2, 1/2): W'(wrap(y - s)) = (y - s) - 1/2 if s < y,
  // (y - s) + 1/2 if s > y, and 0 if s == y. The sawtooth is continuous
  // across the antipode, so only ties need care.
  std::vector<double> out(queries.size());
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const double y = queries[q];
    const auto lo = static_cast<std::size_t>(
        std::lower_bound(sources.begin(), sources.end(), y) - sources.begin());
    const auto hi = static_cast<std::size_t>(
        std::upper_bound(sources.begin() + static_cast<std::ptrdiff_t>(lo),
                         sources.end(), y) -
        sources.begin());
    const double below = prefix_w[lo];
    const double above = total_w - prefix_w[hi];
    const double linear = y * total_w - total_ws;
    out[q] = linear - 0.5 * below + 0.5 * above;
  }
  return out;
}

std::vector<double> force_sorted(const ParticleState& state) {
  const std::size_t n = state.size();
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) {
    sorted[i] = state.positions[i].value();
  }
  std::vector<double> queries = sorted;
  std::sort(sorted.begin(), sorted.end());
  const std::vector<double> ones(n, 1.0);
  std::vector<double> f = sawtooth_sums(sorted, ones, queries);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& fi : f) {
    fi *= -inv_n;
  }
  return f;
}

std::vector<double> force_sorted(const ParticleState& state,
                                 const KernelKind& kind) {
  if (!kind.is_exact()) {
    throw UnsupportedKernel("force_sorted: only the exact kernel is supported");
  }
  return force_sorted(state);
}

std::vector<double> compute_force(const ParticleState& state,
                                  const KernelKind& kind) {
  return kind.is_exact() ? force_sorted(state) : force_naive(state, kind);
}

Propagator::Propagator(ParticleState initial, KernelKind kind,
                       Integrator scheme)
    : state_(std::move(initial)), kind_(kind), scheme_(scheme) {
  if (state_.size() == 0 || state_.velocities.size() != state_.size()) {
    throw InvalidArgument("propagator: malformed particle state");
  }
  if (scheme_ == Integrator::VelocityVerlet) {
    force_ = compute_force(state_, kind_);
  }
}

void Propagator::advance(double dt) {
  if (!(dt > 0.0)) {
    throw InvalidArgument("step: dt must be positive");
  }
  auto& x = state_.positions;
  auto& v = state_.velocities;
  const std::size_t n = state_.size();
  if (scheme_ == Integrator::SemiImplicitEuler) {
    force_ = compute_force(state_, kind_);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] += dt * force_[i];
      x[i] = wrap(x[i].value() + dt * v[i]);
    }
  } else {
    const double half = 0.5 * dt;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] += half * force_[i];
      x[i] = wrap(x[i].value() + dt * v[i]);
    }
    force_ = compute_force(state_, kind_);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] += half * force_[i];
    }
  }
  state_.time += dt;
}

ParticleState step(const ParticleState& state, double dt,
                   const KernelKind& kind, Integrator scheme) {
  Propagator p(state, kind, scheme);
  p.advance(dt);
  return p.state();
}

TrajectoryRecord simulate(const ParticleState& initial, double t_final,
                          double dt, const KernelKind& kind,
                          std::size_t sample_every, Integrator scheme) {
  if (!(t_final > 0.0) || !(dt > 0.0)) {
    throw InvalidArgument("simulate: t_final and dt must be positive");
  }
  if (sample_every == 0) {
    throw InvalidArgument("simulate: sample_every must be at least 1");
  }
  const auto full_steps =
      static_cast<std::size_t>(std::floor(t_final / dt + 1e-9));
  const bool partial = t_final - static_cast<double>(full_steps) * dt >
                       1e-12 * std::max(1.0, t_final);

  TrajectoryRecord rec;
  rec.scheme = scheme;
  rec.dt = dt;
  rec.kind = kind;

  ParticleState start = initial;
  start.time = 0.0;
  Propagator prop(std::move(start), kind, scheme);
  auto record = [&](double t) {
    ParticleState s = prop.state();
    s.time = t;
    rec.sample_times.push_back(t);
    rec.states.push_back(std::move(s));
  };
  record(0.0);
  for (std::size_t k = 1; k <= full_steps; ++k) {
    prop.advance(dt);
    const bool last = (k == full_steps) && !partial;
    if (last) {
      record(t_final);
    } else if (k % sample_every == 0) {
      record(static_cast<double>(k) * dt);
    }
  }
  if (partial) {
    prop.advance(t_final - static_cast<double>(full_steps) * dt);
    record(t_final);
  }
  return rec;
}

DiscreteMeasure empirical_measure(const ParticleState& state) {
  std::vector<PhasePoint> atoms(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    atoms[i] = PhasePoint{state.positions[i], state.velocities[i]};
  }
  return DiscreteMeasure::uniform(std::move(atoms));
}

Diagnostics diagnostics(const ParticleState& state, const KernelKind& kind) {
  const std::size_t n = state.size();
  const double dn = static_cast<double>(n);
  Diagnostics d;
  double kinetic = 0.0;
  for (double v : state.velocities) {
    d.momentum += v;
    kinetic += v * v;
    d.max_speed = std::max(d.max_speed, std::abs(v));
  }
  d.momentum /= dn;
  double pot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      pot += kernel_potential(torus_diff(state.positions[i], state.positions[j]),
                              kind);
    }
  }
  // W is even, so each unordered pair counts twice.
  d.energy = kinetic / (2.0 * dn) + pot / (dn * dn);
  return d;
}

double weak_residual(const TrajectoryRecord& record, const TestFunction& phi) {
  if (record.states.size() < 2) {
    throw InvalidArgument("weak_residual: need at least two samples");
  }
  auto pairing = [&](const ParticleState& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      acc += phi.phi(s.positions[i].value(), s.velocities[i]);
    }
    return acc / static_cast<double>(s.size());
  };
  // Integrand of the time integral: <mu_s, v phi_x + F phi_v>.
  auto generator = [&](const ParticleState& s) {
    const std::vector<double> f = compute_force(s, record.kind);
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double x = s.positions[i].value();
      const double v = s.velocities[i];
      acc += v * phi.dphi_dx(x, v) + f[i] * phi.dphi_dv(x, v);
    }
    return acc / static_cast<double>(s.size());
  };

  double integral = 0.0;
  double g_prev = generator(record.states.front());
  for (std::size_t k = 1; k < record.states.size(); ++k) {
    const double g = generator(record.states[k]);
    integral += 0.5 * (record.sample_times[k] - record.sample_times[k - 1]) *
                (g_prev + g);
    g_prev = g;
  }
  return pairing(record.states.back()) - pairing(record.states.front()) -
         integral;
}

}  // namespace vlasov1d
