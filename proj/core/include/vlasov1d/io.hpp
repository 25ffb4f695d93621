#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "vlasov1d/discrete_measure.hpp"
#include "vlasov1d/experiments.hpp"
#include "vlasov1d/vlasov_grid.hpp"
#include "vlasov1d/wasserstein.hpp"

namespace vlasov1d {

/// A header line plus rows of doubles. Numbers are written in shortest
/// round-trip form, so write/read reproduces every value bit for bit.
struct NumericTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

std::string format_double(double v);

void write_csv(std::ostream& os, const NumericTable& table);
NumericTable read_csv(std::istream& is);
void write_csv_file(const std::filesystem::path& path, const NumericTable& table);
NumericTable read_csv_file(const std::filesystem::path& path);

// x,v,w
NumericTable measure_table(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_table(const NumericTable& t);

// x,v,f at cell centers
NumericTable grid_table(const PhaseGrid& grid);
PhaseGrid grid_from_table(const NumericTable& t);

// t,rho_sup
NumericTable trace_table(const DensityTrace& trace);
DensityTrace trace_from_table(const NumericTable& t);

// src,dst,mass,cost_contrib
NumericTable plan_table(const TransportPlan& plan, const DiscreteMeasure& mu,
                        const DiscreteMeasure& nu);

// Time series of the reports.
NumericTable stability_series(const StabilityReport& r);
NumericTable chaos_series(const ChaosReport& r);
NumericTable convergence_series(const std::vector<ConvergenceRow>& rows);
NumericTable cauchy_series(const CauchyReport& r);

// JSON documents (pretty-printed) and their parsers.
std::string to_json(const StabilityReport& r);
std::string to_json(const ChaosReport& r);
std::string to_json(const CauchyReport& r);
StabilityReport stability_report_from_json(const std::string& text);
ChaosReport chaos_report_from_json(const std::string& text);
CauchyReport cauchy_report_from_json(const std::string& text);

}  // namespace vlasov1d
