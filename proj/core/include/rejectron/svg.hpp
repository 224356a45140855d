#ifndef REJECTRON_SVG_HPP
#define REJECTRON_SVG_HPP

#include <string>
#include <vector>

namespace rejectron {

struct PlotSeries {
  std::vector<double> x;
  std::vector<double> mean;
  std::vector<double> std_dev;  // may be empty for a bare line
};

// mean polyline with a translucent band of one standard deviation;
// output is deterministic for identical inputs
std::string render_plot_svg(const std::string& title, const std::string& x_label,
                            const std::string& y_label, const PlotSeries& series);

}

#endif
