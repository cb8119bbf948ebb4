#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace logdec {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotAxes {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

// Polyline chart; points that are non-finite or non-positive on a log axis are skipped.
void write_line_chart(const std::filesystem::path& path, const PlotAxes& axes, const std::vector<PlotSeries>& series);

}  // namespace logdec
