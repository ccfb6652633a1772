#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pkick/observables.hpp"

namespace pkick {

/// Minimal self-contained SVG line chart; no rendering dependencies.
class LineChart {
 public:
  LineChart(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

  void set_log_x(bool log_x) { log_x_ = log_x; }
  void set_log_y(bool log_y) { log_y_ = log_y; }
  void add_series(std::string name, std::vector<double> x, std::vector<double> y);

  void write(const std::filesystem::path& path) const;

 private:
  struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
  };

  std::string title_, x_label_, y_label_;
  bool log_x_ = false;
  bool log_y_ = false;
  std::vector<Series> series_;
};

/// Diverging-colormap heatmap of a Wigner grid.
void write_heatmap_svg(const std::filesystem::path& path, const WignerGrid& grid,
                       const std::string& title);

}  // namespace pkick
