#pragma once

#include <filesystem>
#include <iosfwd>

#include "config.hpp"

namespace vlasov1d::cli {

enum ExitCode : int { kPass = 0, kInequalityFailed = 1, kUsageError = 2 };

/// Runs one validated config and writes report.json, series.csv (and
/// plot.svg with `emit_svg`) under <output_dir>/<config-hash>/. Relative
/// data paths in the config resolve against `config_dir`.
int run_command(const RunConfig& cfg, const std::filesystem::path& config_dir,
                bool emit_svg, std::ostream& out);

/// Whole command line: argument parsing, config loading, dispatch. Every
/// failure before the computation maps to kUsageError with a message on `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vlasov1d::cli
