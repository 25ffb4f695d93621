#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>

#include "vlasov1d/errors.hpp"
#include "vlasov1d/experiments.hpp"
#include "vlasov1d/vlasov_grid.hpp"

namespace vlasov1d::cli {
namespace {

using nlohmann::json;

const std::map<std::string, Command>& command_names() {
  static const std::map<std::string, Command> names = {
      {"simulate", Command::Simulate},   {"solve", Command::Solve},
      {"stability", Command::Stability}, {"chaos", Command::Chaos},
      {"convergence", Command::Convergence}, {"mollify", Command::Mollify},
      {"w1", Command::W1}};
  return names;
}

const std::vector<std::string> kTopKeys = {
    "command",  "initial_distribution", "n",          "dt",
    "dt_grid",  "t_final",              "nx",         "nv",
    "vmax",     "w1_atoms",             "w1_cap",     "seeds",
    "eps_list", "n_list",               "t_snapshots", "margin",
    "sample_interval", "strategy",      "scheme",     "kernel_eps",
    "sample_every", "mu",               "nu",         "output_dir",
    "seed"};

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigValidationError(field, field + ": " + what);
}

void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      const std::string field = prefix + key;
      throw ConfigValidationError(
          field, "unknown key '" + field + "' (did you mean '" + prefix +
                     suggest_key(key, allowed) + "'?)");
    }
  }
}

double get_double(const json& obj, const std::string& key, const std::string& field) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail(field, "must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(field, "must be finite");
  return d;
}

std::size_t get_size(const json& obj, const std::string& key, const std::string& field) {
  const json& v = obj.at(key);
  if (v.is_number_integer() && v.get<long long>() < 0) fail(field, "must be non-negative");
  if (!v.is_number_unsigned()) fail(field, "must be a non-negative integer");
  return v.get<std::size_t>();
}

std::string get_string(const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_string()) fail(key, "must be a string");
  return v.get<std::string>();
}

std::vector<double> get_doubles(const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_array()) fail(key, "must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(key, "must be an array of numbers");
    out.push_back(v[i].get<double>());
    if (!std::isfinite(out.back())) fail(key, "entries must be finite");
  }
  return out;
}

std::vector<std::size_t> get_sizes(const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_array()) fail(key, "must be an array of integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_unsigned()) fail(key, "must be an array of non-negative integers");
    out.push_back(v[i].get<std::size_t>());
  }
  return out;
}

DistributionSpec parse_distribution(const json& j) {
  const std::string f = "initial_distribution";
  if (!j.is_object()) fail(f, "must be an object");
  if (!j.contains("type")) fail(f + ".type", "is required");
  if (!j.at("type").is_string()) fail(f + ".type", "must be a string");
  const std::string type = j.at("type").get<std::string>();
  const std::string p = f + ".";
  auto num = [&](const char* key, double fallback) {
    return j.contains(key) ? get_double(j, key, p + key) : fallback;
  };
  auto size = [&](const char* key) {
    if (!j.contains(key)) fail(p + key, "is required");
    return get_size(j, key, p + key);
  };
  if (type == "uniform_box") {
    check_keys(j, {"type", "v_half_width"}, p);
    return UniformBox{num("v_half_width", 0.5)};
  }
  if (type == "truncated_maxwellian") {
    check_keys(j, {"type", "sigma", "vcut"}, p);
    return TruncatedMaxwellian{num("sigma", 1.0), num("vcut", 4.0)};
  }
  if (type == "table_grid") {
    check_keys(j, {"type", "nx", "nv", "vmax", "values"}, p);
    TableGrid t;
    t.nx = size("nx");
    t.nv = size("nv");
    if (!j.contains("vmax")) fail(p + "vmax", "is required");
    t.vmax = get_double(j, "vmax", p + "vmax");
    if (!j.contains("values")) fail(p + "values", "is required");
    const json& vals = j.at("values");
    if (!vals.is_array()) fail(p + "values", "must be an array of numbers");
    for (const auto& v : vals) {
      if (!v.is_number()) fail(p + "values", "must be an array of numbers");
      t.values.push_back(v.get<double>());
    }
    return t;
  }
  if (type == "perturbed_maxwellian") {
    check_keys(j, {"type", "amplitude", "mode", "sigma", "vcut", "nx", "nv"}, p);
    const double amplitude = num("amplitude", 0.3);
    if (!(std::abs(amplitude) < 1.0)) fail(p + "amplitude", "must lie in (-1, 1)");
    int mode = 1;
    if (j.contains("mode")) {
      if (!j.at("mode").is_number_integer()) fail(p + "mode", "must be an integer");
      mode = j.at("mode").get<int>();
      if (mode < 1) fail(p + "mode", "must be at least 1");
    }
    const double sigma = num("sigma", 0.5);
    const double vcut = num("vcut", 3.0 * sigma);
    if (!(sigma > 0.0)) fail(p + "sigma", "must be positive");
    if (!(vcut > 0.0)) fail(p + "vcut", "must be positive");
    const std::size_t nx = j.contains("nx") ? get_size(j, "nx", p + "nx") : 64;
    const std::size_t nv = j.contains("nv") ? get_size(j, "nv", p + "nv") : 64;
    if (nx < 1) fail(p + "nx", "must be at least 1");
    if (nv < 1) fail(p + "nv", "must be at least 1");
    return perturbed_maxwellian_table(amplitude, mode, sigma, vcut, nx, nv);
  }
  fail(p + "type", "unknown distribution type '" + type +
                       "' (expected uniform_box, truncated_maxwellian, "
                       "table_grid or perturbed_maxwellian)");
}

json distribution_json(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, UniformBox>) {
          return {{"type", "uniform_box"}, {"v_half_width", s.v_half_width}};
        } else if constexpr (std::is_same_v<T, TruncatedMaxwellian>) {
          return {{"type", "truncated_maxwellian"}, {"sigma", s.sigma}, {"vcut", s.vcut}};
        } else {
          return {{"type", "table_grid"},
                  {"nx", s.nx},
                  {"nv", s.nv},
                  {"vmax", s.vmax},
                  {"values", s.values}};
        }
      },
      spec);
}

bool needs_distribution(Command c) { return c != Command::W1; }
bool needs_particles(Command c) {
  return c == Command::Simulate || c == Command::Stability || c == Command::Chaos ||
         c == Command::Mollify;
}
bool needs_grid(Command c) {
  return c == Command::Solve || c == Command::Stability || c == Command::Chaos ||
         c == Command::Convergence;
}

// Largest multiple of dt_grid not above t_final / 10 that divides t_final.
double default_interval(const RunConfig& c) {
  const double step = c.dt_grid;
  const auto steps = static_cast<long long>(std::llround(c.t_final / step));
  for (long long k = std::max<long long>(steps / 10, 1); k >= 1; --k) {
    if (steps % k == 0) return static_cast<double>(k) * step;
  }
  return step;
}

StabilityConfig as_stability(const RunConfig& c) {
  StabilityConfig s;
  s.n = c.n;
  s.t_final = c.t_final;
  s.dt_particles = c.dt;
  s.grid = GridParams{c.nx, c.nv, c.vmax, c.dt_grid};
  s.sample_interval = c.sample_interval;
  s.w1_atoms = c.w1_atoms;
  s.seed = c.seed;
  s.strategy = c.strategy;
  s.margin = c.margin;
  s.w1.max_cost_entries = c.w1_cap;
  return s;
}

}  // namespace

std::optional<Command> command_from_string(const std::string& s) {
  const auto& names = command_names();
  const auto it = names.find(s);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

const char* to_string(Command c) {
  for (const auto& [name, value] : command_names()) {
    if (value == c) return name.c_str();
  }
  return "?";
}

std::string suggest_key(const std::string& key, const std::vector<std::string>& allowed) {
  // A known key that prefixes the typo is the likeliest intent.
  std::string best;
  for (const auto& a : allowed) {
    if (key.size() > a.size() && key.compare(0, a.size(), a) == 0 &&
        key[a.size()] == '_' && a.size() > best.size()) {
      best = a;
    }
  }
  if (!best.empty()) return best;
  std::size_t best_d = std::numeric_limits<std::size_t>::max();
  for (const auto& a : allowed) {
    std::vector<std::size_t> row(a.size() + 1);
    for (std::size_t j = 0; j <= a.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= key.size(); ++i) {
      std::size_t diag = row[0];
      row[0] = i;
      for (std::size_t j = 1; j <= a.size(); ++j) {
        const std::size_t up = row[j];
        row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                           diag + (key[i - 1] == a[j - 1] ? 0u : 1u)});
        diag = up;
      }
    }
    if (row.back() < best_d) {
      best_d = row.back();
      best = a;
    }
  }
  return best;
}

RunConfig parse_config(const std::string& text, std::optional<Command> command) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " +
                           e.what());
  }
  if (!j.is_object()) throw ConfigParseError("config must be a JSON object (at byte 1)");
  check_keys(j, kTopKeys, "");

  RunConfig c;
  if (j.contains("command")) {
    const auto named = command_from_string(get_string(j, "command"));
    if (!named) fail("command", "unknown command '" + j.at("command").get<std::string>() + "'");
    if (command && *command != *named) {
      fail("command", std::string("config says '") + to_string(*named) +
                          "' but '" + to_string(*command) + "' was requested");
    }
    c.command = *named;
  } else if (command) {
    c.command = *command;
  } else {
    fail("command", "is required");
  }
  const Command cmd = c.command;

  auto opt_size = [&](const char* key, std::size_t& out) {
    if (j.contains(key)) out = get_size(j, key, key);
  };
  auto opt_double = [&](const char* key, double& out) {
    if (j.contains(key)) out = get_double(j, key, key);
  };
  auto require = [&](const char* key) {
    if (!j.contains(key)) fail(key, std::string("is required for '") + to_string(cmd) + "'");
  };

  if (needs_distribution(cmd)) {
    require("initial_distribution");
    c.initial_distribution = parse_distribution(j.at("initial_distribution"));
  }
  if (needs_particles(cmd)) require("n");
  if (cmd != Command::W1 && cmd != Command::Convergence) require("t_final");

  opt_size("n", c.n);
  opt_double("dt", c.dt);
  opt_double("dt_grid", c.dt_grid);
  opt_double("t_final", c.t_final);
  opt_size("nx", c.nx);
  opt_size("nv", c.nv);
  opt_size("w1_atoms", c.w1_atoms);
  opt_size("w1_cap", c.w1_cap);
  opt_size("seeds", c.seeds);
  opt_double("margin", c.margin);
  opt_size("sample_every", c.sample_every);
  if (j.contains("eps_list")) c.eps_list = get_doubles(j, "eps_list");
  if (j.contains("n_list")) c.n_list = get_sizes(j, "n_list");
  if (j.contains("t_snapshots")) c.t_snapshots = get_doubles(j, "t_snapshots");
  if (j.contains("kernel_eps")) c.kernel_eps = get_double(j, "kernel_eps", "kernel_eps");
  if (j.contains("mu")) c.mu = get_string(j, "mu");
  if (j.contains("nu")) c.nu = get_string(j, "nu");
  if (j.contains("output_dir")) c.output_dir = get_string(j, "output_dir");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) fail("seed", "must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("strategy")) {
    const std::string s = get_string(j, "strategy");
    if (s == "iid") c.strategy = SamplingStrategy::IID;
    else if (s == "stratified") c.strategy = SamplingStrategy::Stratified;
    else fail("strategy", "must be 'iid' or 'stratified'");
  } else if (cmd == Command::Mollify) {
    c.strategy = SamplingStrategy::IID;
  }
  if (j.contains("scheme")) {
    const std::string s = get_string(j, "scheme");
    if (s == "verlet") c.scheme = Integrator::VelocityVerlet;
    else if (s == "euler") c.scheme = Integrator::SemiImplicitEuler;
    else fail("scheme", "must be 'verlet' or 'euler'");
  }

  if (!(c.dt > 0.0)) fail("dt", "must be positive");
  if (!(c.dt_grid > 0.0)) fail("dt_grid", "must be positive");
  if (!(c.margin >= 0.0)) fail("margin", "must be non-negative");
  if (c.w1_atoms < 1) fail("w1_atoms", "must be at least 1");
  if (c.w1_cap < 1) fail("w1_cap", "must be at least 1");
  if (c.sample_every < 1) fail("sample_every", "must be at least 1");
  if (needs_particles(cmd) && c.n < 1) fail("n", "must be at least 1");
  if (cmd == Command::Mollify && c.n < 2) fail("n", "must be at least 2");
  if (cmd == Command::Chaos && c.seeds < 2) fail("seeds", "must be at least 2");
  if (cmd == Command::Convergence && c.seeds < 1) fail("seeds", "must be at least 1");
  if (!j.contains("seeds") && cmd == Command::Convergence) c.seeds = 5;
  if (c.kernel_eps && !(*c.kernel_eps > 0.0 && *c.kernel_eps < 0.5)) {
    fail("kernel_eps", "must lie in (0, 0.5)");
  }

  if (cmd == Command::Convergence) {
    require("n_list");
    require("t_snapshots");
    if (c.n_list.empty()) fail("n_list", "must not be empty");
    for (std::size_t k = 0; k < c.n_list.size(); ++k) {
      if (c.n_list[k] < 1) fail("n_list", "entries must be at least 1");
      if (k > 0 && c.n_list[k] <= c.n_list[k - 1]) fail("n_list", "must be strictly increasing");
    }
    if (c.t_snapshots.empty()) fail("t_snapshots", "must not be empty");
    for (double t : c.t_snapshots) {
      if (!(t >= 0.0)) fail("t_snapshots", "entries must be non-negative");
      const double k = t / c.dt_grid;
      const double kp = t / c.dt;
      if (std::abs(k - std::round(k)) > 1e-9 || std::abs(kp - std::round(kp)) > 1e-9) {
        fail("t_snapshots", "entries must be multiples of dt and dt_grid");
      }
    }
    const double t_max = *std::max_element(c.t_snapshots.begin(), c.t_snapshots.end());
    if (!(t_max > 0.0)) fail("t_snapshots", "need at least one positive time");
    if (j.contains("t_final") && c.t_final < t_max) {
      fail("t_final", "must cover every entry of t_snapshots");
    }
    c.t_final = t_max;
  }
  if (cmd == Command::Mollify) {
    require("eps_list");
    if (c.eps_list.size() < 2) fail("eps_list", "needs at least 2 entries");
    for (std::size_t k = 0; k < c.eps_list.size(); ++k) {
      const double e = c.eps_list[k];
      if (!(e > 0.0 && e < 0.5)) fail("eps_list", "entries must lie in (0, 0.5)");
      if (k > 0 && e >= c.eps_list[k - 1]) fail("eps_list", "must be strictly decreasing");
    }
  }
  if (cmd != Command::W1 && !(c.t_final > 0.0)) fail("t_final", "must be positive");

  if (cmd == Command::W1) {
    require("mu");
    require("nu");
    if (c.mu.empty()) fail("mu", "must name a CSV file");
    if (c.nu.empty()) fail("nu", "must name a CSV file");
  }

  if (c.initial_distribution) {
    try {
      const InitialDistribution f0(*c.initial_distribution);
      if (needs_grid(cmd)) {
        const double need = required_vmax(f0, c.t_final);
        if (j.contains("vmax")) {
          c.vmax = get_double(j, "vmax", "vmax");
          if (!(c.vmax > 0.0)) fail("vmax", "must be positive");
          if (c.vmax < need) {
            fail("vmax", "must be at least " + std::to_string(need) +
                             " to hold f0 up to t_final");
          }
        } else {
          c.vmax = f0.v_support() + 0.5 * c.t_final + 0.5;
          c.vmax = std::max(c.vmax, need);
        }
      }
    } catch (const InvalidArgument& e) {
      fail("initial_distribution", e.what());
    }
  }
  if (needs_grid(cmd)) {
    if (c.nx < 4) fail("nx", "must be at least 4");
    if (c.nv < 4) fail("nv", "must be at least 4");
  }

  if (cmd == Command::Mollify) {
    c.sample_interval = 0.01;
    opt_double("sample_interval", c.sample_interval);
    if (!(c.sample_interval > 0.0)) fail("sample_interval", "must be positive");
    const double k = c.sample_interval / c.dt;
    if (std::abs(k - std::round(k)) > 1e-9 || std::round(k) < 1) {
      fail("sample_interval", "must be a positive multiple of dt");
    }
  } else if (cmd == Command::Stability || cmd == Command::Chaos) {
    c.sample_interval = default_interval(c);
    opt_double("sample_interval", c.sample_interval);
    if (!(c.sample_interval > 0.0)) fail("sample_interval", "must be positive");
    try {
      stability_times(as_stability(c));
    } catch (const InvalidExperiment& e) {
      fail("sample_interval", std::string("must divide t_final and be a multiple of dt "
                                          "and dt_grid (") + e.what() + ")");
    }
  } else if (j.contains("sample_interval")) {
    fail("sample_interval", std::string("is not used by '") + to_string(cmd) + "'");
  }
  return c;
}

std::string canonical_json(const RunConfig& c) {
  json j;
  j["command"] = to_string(c.command);
  if (c.initial_distribution) j["initial_distribution"] = distribution_json(*c.initial_distribution);
  j["n"] = c.n;
  j["dt"] = c.dt;
  j["dt_grid"] = c.dt_grid;
  j["t_final"] = c.t_final;
  j["nx"] = c.nx;
  j["nv"] = c.nv;
  j["vmax"] = c.vmax;
  j["w1_atoms"] = c.w1_atoms;
  j["w1_cap"] = c.w1_cap;
  j["seeds"] = c.seeds;
  j["eps_list"] = c.eps_list;
  j["n_list"] = c.n_list;
  j["t_snapshots"] = c.t_snapshots;
  j["margin"] = c.margin;
  j["sample_interval"] = c.sample_interval;
  j["strategy"] = c.strategy == SamplingStrategy::IID ? "iid" : "stratified";
  j["scheme"] = c.scheme == Integrator::VelocityVerlet ? "verlet" : "euler";
  if (c.kernel_eps) j["kernel_eps"] = *c.kernel_eps;
  j["sample_every"] = c.sample_every;
  if (!c.mu.empty()) j["mu"] = c.mu;
  if (!c.nu.empty()) j["nu"] = c.nu;
  j["seed"] = c.seed;
  return j.dump();
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : canonical_json(cfg)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace vlasov1d::cli
