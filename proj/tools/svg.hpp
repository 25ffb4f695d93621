#pragma once

#include <string>
#include <vector>

namespace vlasov1d::cli {

struct Series {
  std::string label;
  std::vector<double> y;
};

/// Self-contained SVG line chart of several series against a shared x.
/// Non-positive values are dropped on a log axis, non-finite ones always.
std::string line_plot_svg(const std::string& title, const std::string& x_label,
                          const std::vector<double>& x,
                          const std::vector<Series>& series, bool log_y);

}  // namespace vlasov1d::cli
