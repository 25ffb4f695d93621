#include "vlasov1d/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vlasov1d/errors.hpp"

namespace vlasov1d {
namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  while (begin < end && *begin == ' ') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    // from_chars rejects "inf"/"nan" spelled by some writers.
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
    throw InvalidArgument("csv line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

// JSON has no infinities; encode them as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double from_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  return NAN;
}

json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

std::vector<double> from_numbers(const json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(from_number(x));
  return v;
}

}  // namespace

std::size_t NumericTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw InvalidArgument("table has no column '" + name + "'");
  }
  return static_cast<std::size_t>(it - columns.begin());
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_csv(std::ostream& os, const NumericTable& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c ? "," : "") << table.columns[c];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "," : "") << format_double(row[c]);
    }
    os << '\n';
  }
}

NumericTable read_csv(std::istream& is) {
  NumericTable t;
  std::string line;
  if (!std::getline(is, line)) {
    throw InvalidArgument("csv: missing header");
  }
  t.columns = split(line);
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    if (cells.size() != t.columns.size()) {
      throw InvalidArgument("csv line " + std::to_string(lineno) +
                            ": expected " + std::to_string(t.columns.size()) + " fields");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_double(c, lineno));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_csv_file(const std::filesystem::path& path, const NumericTable& table) {
  std::ofstream os(path);
  if (!os) throw InvalidArgument("cannot write " + path.string());
  write_csv(os, table);
}

NumericTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgument("cannot read " + path.string());
  return read_csv(is);
}

NumericTable measure_table(const DiscreteMeasure& mu) {
  NumericTable t{{"x", "v", "w"}, {}};
  for (std::size_t i = 0; i < mu.size(); ++i) {
    t.rows.push_back({mu.atoms[i].x.value(), mu.atoms[i].v, mu.weights[i]});
  }
  return t;
}

DiscreteMeasure measure_from_table(const NumericTable& t) {
  const auto cx = t.column("x"), cv = t.column("v"), cw = t.column("w");
  DiscreteMeasure mu;
  for (const auto& r : t.rows) {
    mu.atoms.push_back({wrap(r[cx]), r[cv]});
    mu.weights.push_back(r[cw]);
  }
  mu.validate(1e-9);
  return mu;
}

NumericTable grid_table(const PhaseGrid& grid) {
  NumericTable t{{"x", "v", "f"}, {}};
  t.rows.reserve(grid.nx() * grid.nv());
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    for (std::size_t j = 0; j < grid.nv(); ++j) {
      t.rows.push_back({grid.x_center(i), grid.v_center(j), grid.at(i, j)});
    }
  }
  return t;
}

PhaseGrid grid_from_table(const NumericTable& t) {
  const auto cx = t.column("x"), cv = t.column("v"), cf = t.column("f");
  std::set<double> xs, vs;
  for (const auto& r : t.rows) {
    xs.insert(r[cx]);
    vs.insert(r[cv]);
  }
  if (xs.empty() || xs.size() * vs.size() != t.rows.size()) {
    throw InvalidArgument("grid csv: rows do not form a full nx x nv table");
  }
  const std::size_t nx = xs.size(), nv = vs.size();
  const double vtop = *vs.rbegin();
  const double vbot = *vs.begin();
  // Centers sit half a cell inside +-vmax.
  const double vmax = nv > 1 ? 0.5 * (vtop - vbot) * static_cast<double>(nv) /
                                   static_cast<double>(nv - 1)
                             : 2.0 * std::abs(vtop);
  PhaseGrid g(nx, nv, vmax);
  std::size_t k = 0;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < nv; ++j, ++k) {
      g.at(i, j) = t.rows[k][cf];
    }
  }
  return g;
}

NumericTable trace_table(const DensityTrace& trace) {
  NumericTable t{{"t", "rho_sup"}, {}};
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    t.rows.push_back({trace.times[k], trace.sup_norms[k]});
  }
  return t;
}

DensityTrace trace_from_table(const NumericTable& t) {
  const auto ct = t.column("t"), cr = t.column("rho_sup");
  DensityTrace d;
  for (const auto& r : t.rows) {
    d.times.push_back(r[ct]);
    d.sup_norms.push_back(r[cr]);
  }
  return d;
}

NumericTable plan_table(const TransportPlan& plan, const DiscreteMeasure& mu,
                        const DiscreteMeasure& nu) {
  NumericTable t{{"src", "dst", "mass", "cost_contrib"}, {}};
  for (const auto& e : plan.entries) {
    t.rows.push_back({static_cast<double>(e.source), static_cast<double>(e.target),
                      e.mass, e.mass * phase_distance(mu.atoms[e.source], nu.atoms[e.target])});
  }
  return t;
}

NumericTable stability_series(const StabilityReport& r) {
  NumericTable t{{"t", "w1", "a", "bound", "ratio"}, {}};
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    t.rows.push_back({r.times[k], r.w1[k], r.a_values[k], r.bound[k], r.ratio[k]});
  }
  return t;
}

NumericTable chaos_series(const ChaosReport& r) {
  NumericTable t{{"t", "mean_w1", "ci95", "a", "bound"}, {}};
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    t.rows.push_back({r.times[k], r.mean_w1[k], r.ci95[k], r.a_values[k], r.bound[k]});
  }
  return t;
}

NumericTable convergence_series(const std::vector<ConvergenceRow>& rows) {
  NumericTable t{{"n", "t", "w1", "w1_sd", "grid_atoms"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({static_cast<double>(r.n), r.t, r.w1, r.w1_sd,
                      static_cast<double>(r.grid_atoms)});
  }
  return t;
}

NumericTable cauchy_series(const CauchyReport& r) {
  NumericTable t{{"eps", "eps_prime", "coupled_distance"}, {}};
  for (std::size_t k = 0; k < r.eps_pairs.size(); ++k) {
    t.rows.push_back({r.eps_pairs[k].first, r.eps_pairs[k].second, r.coupled_distance[k]});
  }
  return t;
}

std::string to_json(const StabilityReport& r) {
  json j;
  j["kind"] = "stability";
  j["pass"] = r.pass;
  j["margin"] = number(r.margin);
  j["w1_initial"] = number(r.w1_initial);
  j["max_ratio"] = number(r.ratio.empty() ? 0.0 : *std::max_element(r.ratio.begin(), r.ratio.end()));
  j["times"] = numbers(r.times);
  j["w1"] = numbers(r.w1);
  j["a"] = numbers(r.a_values);
  j["bound"] = numbers(r.bound);
  j["ratio"] = numbers(r.ratio);
  return j.dump(2);
}

std::string to_json(const ChaosReport& r) {
  json j;
  j["kind"] = "chaos";
  j["pass"] = r.pass;
  j["seeds"] = r.seeds;
  j["margin"] = number(r.margin);
  j["mean_w1_initial"] = number(r.mean_w1_initial);
  j["times"] = numbers(r.times);
  j["mean_w1"] = numbers(r.mean_w1);
  j["ci95"] = numbers(r.ci95);
  j["a"] = numbers(r.a_values);
  j["bound"] = numbers(r.bound);
  return j.dump(2);
}

std::string to_json(const CauchyReport& r) {
  json j;
  j["kind"] = "mollification";
  json pairs = json::array();
  for (const auto& [a, b] : r.eps_pairs) pairs.push_back({number(a), number(b)});
  j["eps_pairs"] = pairs;
  j["coupled_distance"] = numbers(r.coupled_distance);
  j["fitted_slope"] = number(r.fitted_slope);
  return j.dump(2);
}

StabilityReport stability_report_from_json(const std::string& text) {
  const json j = json::parse(text);
  StabilityReport r;
  r.pass = j.at("pass").get<bool>();
  r.margin = from_number(j.at("margin"));
  r.w1_initial = from_number(j.at("w1_initial"));
  r.times = from_numbers(j.at("times"));
  r.w1 = from_numbers(j.at("w1"));
  r.a_values = from_numbers(j.at("a"));
  r.bound = from_numbers(j.at("bound"));
  r.ratio = from_numbers(j.at("ratio"));
  return r;
}

ChaosReport chaos_report_from_json(const std::string& text) {
  const json j = json::parse(text);
  ChaosReport r;
  r.pass = j.at("pass").get<bool>();
  r.seeds = j.at("seeds").get<std::size_t>();
  r.margin = from_number(j.at("margin"));
  r.mean_w1_initial = from_number(j.at("mean_w1_initial"));
  r.times = from_numbers(j.at("times"));
  r.mean_w1 = from_numbers(j.at("mean_w1"));
  r.ci95 = from_numbers(j.at("ci95"));
  r.a_values = from_numbers(j.at("a"));
  r.bound = from_numbers(j.at("bound"));
  return r;
}

CauchyReport cauchy_report_from_json(const std::string& text) {
  const json j = json::parse(text);
  CauchyReport r;
  for (const auto& p : j.at("eps_pairs")) {
    r.eps_pairs.emplace_back(from_number(p.at(0)), from_number(p.at(1)));
  }
  r.coupled_distance = from_numbers(j.at("coupled_distance"));
  r.fitted_slope = from_number(j.at("fitted_slope"));
  return r;
}

}  // namespace vlasov1d
