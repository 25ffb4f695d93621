#include "vlasov1d/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/special_functions/erf.hpp>

#include "vlasov1d/errors.hpp"
#include "vlasov1d/rng.hpp"

namespace vlasov1d {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double overlap(double a0, double a1, double b0, double b1) {
  return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

// Integral of exp(-v^2 / (2 sigma^2)) over [a, b].
double gauss_integral(double sigma, double a, double b) {
  const double s = sigma * std::numbers::sqrt2;
  return 0.5 * std::sqrt(std::numbers::pi) * s * (std::erf(b / s) - std::erf(a / s));
}

double maxwellian_norm(const TruncatedMaxwellian& m) {
  return gauss_integral(m.sigma, -m.vcut, m.vcut);
}

// Integral of |v| over [a, b].
double abs_integral(double a, double b) {
  auto prim = [](double v) { return 0.5 * v * std::abs(v); };
  return prim(b) - prim(a);
}

struct TableGeometry {
  double dx, dv;
  double x_lo(std::size_t i) const { return -0.5 + static_cast<double>(i) * dx; }
  double v_lo(std::size_t j, double vmax) const {
    return -vmax + static_cast<double>(j) * dv;
  }
};

TableGeometry geometry_of(const TableGrid& t) {
  return {1.0 / static_cast<double>(t.nx), 2.0 * t.vmax / static_cast<double>(t.nv)};
}

// |w| reach of a table column: largest |w| over its closed v-interval.
double column_reach(const TableGrid& t, std::size_t j) {
  const auto g = geometry_of(t);
  const double lo = g.v_lo(j, t.vmax);
  return std::max(std::abs(lo), std::abs(lo + g.dv));
}

std::vector<double> column_max(const TableGrid& t) {
  std::vector<double> cm(t.nv, 0.0);
  for (std::size_t i = 0; i < t.nx; ++i) {
    for (std::size_t j = 0; j < t.nv; ++j) {
      cm[j] = std::max(cm[j], t.values[i * t.nv + j]);
    }
  }
  return cm;
}

struct Inverted {
  std::size_t cell;
  double value;
};

// Inverts a piecewise-linear CDF given by cell masses over equal cells of
// width h starting at lo. Zero-mass cells are skipped.
Inverted invert_piecewise(std::span<const double> masses, double lo, double h,
                          double u) {
  const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  double target = u * total;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < masses.size(); ++k) {
    if (masses[k] <= 0.0) {
      continue;
    }
    last_positive = k;
    if (target < masses[k]) {
      return {k, lo + h * (static_cast<double>(k) + target / masses[k])};
    }
    target -= masses[k];
  }
  // u within rounding of 1.
  return {last_positive,
          lo + h * (static_cast<double>(last_positive) + 1.0 - 1e-12)};
}

}  // namespace

InitialDistribution::InitialDistribution(DistributionSpec spec)
    : spec_(std::move(spec)) {
  validate();
  if (auto* t = std::get_if<TableGrid>(&spec_)) {
    const auto g = geometry_of(*t);
    double mass = 0.0;
    for (double v : t->values) {
      mass += v;
    }
    mass *= g.dx * g.dv;
    if (!(mass > 0.0)) {
      throw InvalidArgument("table_grid: zero total mass");
    }
    for (double& v : t->values) {
      v /= mass;
    }
    row_mass_.assign(t->nx, 0.0);
    for (std::size_t i = 0; i < t->nx; ++i) {
      for (std::size_t j = 0; j < t->nv; ++j) {
        row_mass_[i] += t->values[i * t->nv + j];
      }
    }
  }
  if (const auto* m = std::get_if<TruncatedMaxwellian>(&spec_)) {
    normaliser_ = maxwellian_norm(*m);
  }

  // Unit mass by quadrature: composite Simpson in v (x-uniform specs), cell
  // sums for tables.
  double mass = 0.0;
  if (const auto* t = std::get_if<TableGrid>(&spec_)) {
    const auto g = geometry_of(*t);
    for (double v : t->values) {
      mass += v * g.dx * g.dv;
    }
  } else {
    const double vs = v_support();
    const int intervals = 20000;
    const double h = 2.0 * vs / intervals;
    for (int k = 0; k <= intervals; ++k) {
      const double v = -vs + h * k;
      // Evaluate just inside the closed support at the end points.
      const double vv = std::clamp(v, -vs, vs);
      const double w = (k == 0 || k == intervals) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      mass += w * pdf(0.0, vv);
    }
    mass *= h / 3.0;
  }
  if (std::abs(mass - 1.0) > 1e-9) {
    throw InvalidArgument("initial distribution does not integrate to 1 (got " +
                          std::to_string(mass) + ")");
  }
}

void InitialDistribution::validate() const {
  std::visit(
      Overloaded{
          [](const UniformBox& b) {
            if (!(b.v_half_width > 0.0) || !std::isfinite(b.v_half_width)) {
              throw InvalidArgument("uniform_box: v_half_width must be positive");
            }
          },
          [](const TruncatedMaxwellian& m) {
            if (!(m.sigma > 0.0) || !std::isfinite(m.sigma)) {
              throw InvalidArgument("truncated_maxwellian: sigma must be positive");
            }
            if (!(m.vcut > 0.0) || !std::isfinite(m.vcut)) {
              throw InvalidArgument("truncated_maxwellian: vcut must be positive");
            }
          },
          [](const TableGrid& t) {
            if (t.nx == 0 || t.nv == 0) {
              throw InvalidArgument("table_grid: nx and nv must be positive");
            }
            if (!(t.vmax > 0.0) || !std::isfinite(t.vmax)) {
              throw InvalidArgument("table_grid: vmax must be positive");
            }
            if (t.values.size() != t.nx * t.nv) {
              throw InvalidArgument("table_grid: expected nx*nv values");
            }
            for (double v : t.values) {
              if (!(v >= 0.0) || !std::isfinite(v)) {
                throw InvalidArgument("table_grid: values must be finite and >= 0");
              }
            }
          },
      },
      spec_);
}

std::string InitialDistribution::name() const {
  return std::visit(Overloaded{
                        [](const UniformBox&) { return std::string("uniform_box"); },
                        [](const TruncatedMaxwellian&) {
                          return std::string("truncated_maxwellian");
                        },
                        [](const TableGrid&) { return std::string("table_grid"); },
                    },
                    spec_);
}

double InitialDistribution::pdf(double x, double v) const {
  return std::visit(
      Overloaded{
          [&](const UniformBox& b) {
            return std::abs(v) <= b.v_half_width ? 0.5 / b.v_half_width : 0.0;
          },
          [&](const TruncatedMaxwellian& m) {
            if (std::abs(v) > m.vcut) {
              return 0.0;
            }
            return std::exp(-0.5 * v * v / (m.sigma * m.sigma)) / normaliser_;
          },
          [&](const TableGrid& t) {
            if (!(v >= -t.vmax && v < t.vmax)) {
              return 0.0;
            }
            const auto g = geometry_of(t);
            const double xc = wrap(x).value();
            auto i = static_cast<std::size_t>((xc + 0.5) / g.dx);
            auto j = static_cast<std::size_t>((v + t.vmax) / g.dv);
            i = std::min(i, t.nx - 1);
            j = std::min(j, t.nv - 1);
            return t.values[i * t.nv + j];
          },
      },
      spec_);
}

double InitialDistribution::cell_mass(double x0, double x1, double v0,
                                      double v1) const {
  if (x1 < x0 || v1 < v0) {
    throw InvalidArgument("cell_mass: empty box");
  }
  return std::visit(
      Overloaded{
          [&](const UniformBox& b) {
            return (x1 - x0) * overlap(v0, v1, -b.v_half_width, b.v_half_width) /
                   (2.0 * b.v_half_width);
          },
          [&](const TruncatedMaxwellian& m) {
            const double a = std::max(v0, -m.vcut);
            const double c = std::min(v1, m.vcut);
            if (c <= a) {
              return 0.0;
            }
            return (x1 - x0) * gauss_integral(m.sigma, a, c) / normaliser_;
          },
          [&](const TableGrid& t) {
            const auto g = geometry_of(t);
            double acc = 0.0;
            for (std::size_t i = 0; i < t.nx; ++i) {
              const double ox = overlap(x0, x1, g.x_lo(i), g.x_lo(i) + g.dx);
              if (ox <= 0.0) {
                continue;
              }
              for (std::size_t j = 0; j < t.nv; ++j) {
                const double lo = g.v_lo(j, t.vmax);
                const double ov = overlap(v0, v1, lo, lo + g.dv);
                if (ov > 0.0) {
                  acc += t.values[i * t.nv + j] * ox * ov;
                }
              }
            }
            return acc;
          },
      },
      spec_);
}

double InitialDistribution::g0_envelope(double v) const {
  const double va = std::max(v, 0.0);
  return std::visit(
      Overloaded{
          [&](const UniformBox& b) {
            return va <= b.v_half_width ? 0.5 / b.v_half_width : 0.0;
          },
          [&](const TruncatedMaxwellian& m) {
            return va <= m.vcut ? pdf(0.0, va) : 0.0;
          },
          [&](const TableGrid& t) {
            const auto cm = column_max(t);
            double g = 0.0;
            for (std::size_t j = 0; j < t.nv; ++j) {
              if (column_reach(t, j) >= va) {
                g = std::max(g, cm[j]);
              }
            }
            return g;
          },
      },
      spec_);
}

double InitialDistribution::g0_integral() const {
  return std::visit(
      Overloaded{
          [&](const UniformBox&) { return 0.5; },
          [&](const TruncatedMaxwellian&) { return 0.5; },
          [&](const TableGrid& t) {
            // g0 is a step function with jumps at the column reaches.
            const auto cm = column_max(t);
            std::vector<std::pair<double, double>> cols;  // (reach, max)
            cols.reserve(t.nv);
            for (std::size_t j = 0; j < t.nv; ++j) {
              cols.emplace_back(column_reach(t, j), cm[j]);
            }
            std::sort(cols.begin(), cols.end());
            // suffix[k] = max over columns k.. (reach >= cols[k].first).
            std::vector<double> suffix(cols.size() + 1, 0.0);
            for (std::size_t k = cols.size(); k-- > 0;) {
              suffix[k] = std::max(suffix[k + 1], cols[k].second);
            }
            double integral = 0.0;
            double prev = 0.0;
            for (std::size_t k = 0; k < cols.size(); ++k) {
              integral += (cols[k].first - prev) * suffix[k];
              prev = cols[k].first;
            }
            return integral;
          },
      },
      spec_);
}

double InitialDistribution::sup_norm() const { return g0_envelope(0.0); }

double InitialDistribution::first_v_moment() const {
  return std::visit(
      Overloaded{
          [&](const UniformBox& b) { return 0.5 * b.v_half_width; },
          [&](const TruncatedMaxwellian& m) {
            const double s2 = m.sigma * m.sigma;
            return 2.0 * s2 * (1.0 - std::exp(-0.5 * m.vcut * m.vcut / s2)) /
                   normaliser_;
          },
          [&](const TableGrid& t) {
            const auto g = geometry_of(t);
            double acc = 0.0;
            for (std::size_t i = 0; i < t.nx; ++i) {
              for (std::size_t j = 0; j < t.nv; ++j) {
                const double lo = g.v_lo(j, t.vmax);
                acc += t.values[i * t.nv + j] * g.dx * abs_integral(lo, lo + g.dv);
              }
            }
            return acc;
          },
      },
      spec_);
}

double InitialDistribution::v_support() const {
  return std::visit(Overloaded{
                        [](const UniformBox& b) { return b.v_half_width; },
                        [](const TruncatedMaxwellian& m) { return m.vcut; },
                        [](const TableGrid& t) {
                          const auto cm = column_max(t);
                          double s = 0.0;
                          for (std::size_t j = 0; j < t.nv; ++j) {
                            if (cm[j] > 0.0) {
                              s = std::max(s, column_reach(t, j));
                            }
                          }
                          return s;
                        },
                    },
                    spec_);
}

double InitialDistribution::mass_outside(double v) const {
  if (v <= 0.0) {
    return 1.0;
  }
  return std::max(0.0, 1.0 - cell_mass(-0.5, 0.5, -v, v));
}

PhasePoint InitialDistribution::inverse_transform(double u1, double u2) const {
  return std::visit(
      Overloaded{
          [&](const UniformBox& b) {
            return PhasePoint{wrap(u1 - 0.5), (2.0 * u2 - 1.0) * b.v_half_width};
          },
          [&](const TruncatedMaxwellian& m) {
            const double s = m.sigma * std::numbers::sqrt2;
            const double edge = std::erf(m.vcut / s);
            double arg = edge * (2.0 * u2 - 1.0);
            const double lim = std::nextafter(1.0, 0.0);
            arg = std::clamp(arg, -lim, lim);
            double v = s * boost::math::erf_inv(arg);
            v = std::clamp(v, -m.vcut, m.vcut);
            return PhasePoint{wrap(u1 - 0.5), v};
          },
          [&](const TableGrid& t) {
            const auto g = geometry_of(t);
            const auto [i, x] = invert_piecewise(row_mass_, -0.5, g.dx, u1);
            const std::span<const double> row(t.values.data() + i * t.nv, t.nv);
            const double v = invert_piecewise(row, -t.vmax, g.dv, u2).value;
            return PhasePoint{wrap(x), v};
          },
      },
      spec_);
}

ParticleState sample_initial(const InitialDistribution& f0, std::size_t n,
                             std::uint64_t seed, SamplingStrategy strategy) {
  if (n == 0) {
    throw InvalidArgument("sample_initial: n must be at least 1");
  }
  Rng rng(derive_seed(seed, streams::kInitialSample));
  std::vector<double> x(n), v(n);
  auto emit = [&](std::size_t i, double u1, double u2) {
    const PhasePoint p = f0.inverse_transform(u1, u2);
    x[i] = p.x.value();
    v[i] = p.v;
  };

  if (strategy == SamplingStrategy::IID) {
    for (std::size_t i = 0; i < n; ++i) {
      const double u1 = rng.uniform();
      const double u2 = rng.uniform();
      emit(i, u1, u2);
    }
  } else {
    const auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    const double dn = static_cast<double>(n);
    if (k * k == n) {
      // Jittered k x k lattice.
      const double dk = static_cast<double>(k);
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
          const double u1 = (static_cast<double>(a) + rng.uniform()) / dk;
          const double u2 = (static_cast<double>(b) + rng.uniform()) / dk;
          emit(a * k + b, u1, u2);
        }
      }
    } else {
      // Latin hypercube.
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      for (std::size_t i = n; i-- > 1;) {
        std::swap(perm[i], perm[rng.below(i + 1)]);
      }
      for (std::size_t i = 0; i < n; ++i) {
        const double u1 = (static_cast<double>(i) + rng.uniform()) / dn;
        const double u2 = (static_cast<double>(perm[i]) + rng.uniform()) / dn;
        emit(i, u1, u2);
      }
    }
  }
  return ParticleState::from_raw(x, v, 0.0);
}

TableGrid perturbed_maxwellian_table(double amplitude, int mode, double sigma,
                                     double vcut, std::size_t nx,
                                     std::size_t nv) {
  if (!(std::abs(amplitude) < 1.0)) {
    throw InvalidArgument("perturbed_maxwellian: |amplitude| must be < 1");
  }
  if (mode < 1) {
    throw InvalidArgument("perturbed_maxwellian: mode must be >= 1");
  }
  TableGrid t;
  t.nx = nx;
  t.nv = nv;
  t.vmax = vcut;
  t.values.resize(nx * nv);
  const auto g = geometry_of(t);
  const double k = 2.0 * std::numbers::pi * mode;
  for (std::size_t i = 0; i < nx; ++i) {
    const double x0 = g.x_lo(i);
    const double x1 = x0 + g.dx;
    // Cell average of the spatial profile.
    const double sx = 1.0 + amplitude * (std::sin(k * x1) - std::sin(k * x0)) / (k * g.dx);
    for (std::size_t j = 0; j < nv; ++j) {
      const double v0 = g.v_lo(j, vcut);
      const double sv = gauss_integral(sigma, v0, v0 + g.dv) / g.dv;
      t.values[i * nv + j] = sx * sv;
    }
  }
  return t;
}

}  // namespace vlasov1d
