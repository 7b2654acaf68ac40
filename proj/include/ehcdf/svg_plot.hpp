#ifndef EHCDF_SVG_PLOT_HPP
#define EHCDF_SVG_PLOT_HPP

#include <string>
#include <vector>

namespace ehcdf {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Standalone SVG line chart. A dotted horizontal line is drawn at
/// `reference_y`; non-finite points break the line.
std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label, const std::vector<PlotSeries>& series,
                             double reference_y = 1.0);

}  // namespace ehcdf

#endif  // EHCDF_SVG_PLOT_HPP
