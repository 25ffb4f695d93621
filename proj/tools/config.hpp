#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vlasov1d/measures.hpp"
#include "vlasov1d/particles.hpp"

namespace vlasov1d::cli {

enum class Command { Simulate, Solve, Stability, Chaos, Convergence, Mollify, W1 };

std::optional<Command> command_from_string(const std::string& s);
const char* to_string(Command c);

/// Malformed JSON. `what()` carries the byte offset of the failure.
class ConfigParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed JSON with a bad or unknown field. `field()` names it.
class ConfigValidationError : public std::runtime_error {
 public:
  ConfigValidationError(std::string field, const std::string& message)
      : std::runtime_error(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Fully resolved run description; every default is filled in.
struct RunConfig {
  Command command = Command::Stability;
  std::optional<DistributionSpec> initial_distribution;
  std::size_t n = 1024;
  double dt = 1e-3;
  double dt_grid = 1e-2;
  double t_final = 1.0;
  std::size_t nx = 128;
  std::size_t nv = 128;
  double vmax = 0.0;
  std::size_t w1_atoms = 1024;
  std::size_t w1_cap = 4'000'000;
  std::size_t seeds = 20;
  std::vector<double> eps_list;
  std::vector<std::size_t> n_list;
  std::vector<double> t_snapshots;
  double margin = 0.10;
  double sample_interval = 0.0;
  SamplingStrategy strategy = SamplingStrategy::Stratified;
  Integrator scheme = Integrator::VelocityVerlet;
  std::optional<double> kernel_eps;
  std::size_t sample_every = 100;
  std::string mu;
  std::string nu;
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;
};

/// Parses and validates a strict JSON config. `command` (from argv) wins
/// over a "command" key, which must agree with it when both are present.
/// Unknown keys are rejected with a suggestion.
RunConfig parse_config(const std::string& text,
                       std::optional<Command> command = std::nullopt);

/// Canonical JSON of the resolved config.
std::string canonical_json(const RunConfig& cfg);

/// 16 hex digits of FNV-1a over canonical_json.
std::string config_hash(const RunConfig& cfg);

/// Closest allowed key to `key`, for error messages.
std::string suggest_key(const std::string& key, const std::vector<std::string>& allowed);

}  // namespace vlasov1d::cli
