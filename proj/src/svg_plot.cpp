#include "pkick/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace pkick {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 690.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 420.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Axis {
  double lo = 0.0, hi = 1.0;
  bool log = false;

  double to_unit(double v) const {
    if (log) return (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
    return (v - lo) / (hi - lo);
  }

  std::vector<double> ticks() const {
    std::vector<double> t;
    if (log) {
      const int d0 = static_cast<int>(std::floor(std::log10(lo)));
      const int d1 = static_cast<int>(std::ceil(std::log10(hi)));
      for (int d = d0; d <= d1; ++d) {
        const double v = std::pow(10.0, d);
        if (v >= lo * 0.999 && v <= hi * 1.001) t.push_back(v);
      }
      if (t.size() < 2) {
        t = {lo, hi};
      }
      return t;
    }
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
      if (raw <= m * mag) {
        step = m * mag;
        break;
      }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step)
      t.push_back(v);
    return t;
  }
};

}  // namespace

void LineChart::add_series(std::string name, std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("LineChart::add_series: x/y size mismatch");
  series_.push_back({std::move(name), std::move(x), std::move(y)});
}

void LineChart::write(const std::filesystem::path& path) const {
  Axis xa, ya;
  xa.log = log_x_;
  ya.log = log_y_;
  double xlo = std::numeric_limits<double>::max(), xhi = std::numeric_limits<double>::lowest();
  double ylo = xlo, yhi = xhi;
  for (const Series& s : series_)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_x_ && s.x[i] <= 0) continue;
      if (log_y_ && s.y[i] <= 0) continue;
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  if (xlo > xhi) {
    xlo = ylo = 0.0;
    xhi = yhi = 1.0;
  }
  if (xhi == xlo) xhi = xlo + 1.0;
  if (yhi == ylo) yhi = ylo + 1.0;
  if (!log_y_) {
    const double pad = 0.05 * (yhi - ylo);
    ylo -= pad;
    yhi += pad;
  }
  xa.lo = xlo;
  xa.hi = xhi;
  ya.lo = ylo;
  ya.hi = yhi;

  const auto px = [&](double v) { return kLeft + xa.to_unit(v) * (kRight - kLeft); };
  const auto py = [&](double v) { return kBottom - ya.to_unit(v) * (kBottom - kTop); };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("LineChart::write: cannot open " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title_ << "</text>\n";

  for (double v : xa.ticks()) {
    const double x = px(v);
    out << "<line x1=\"" << x << "\" y1=\"" << kTop << "\" x2=\"" << x << "\" y2=\""
        << kBottom << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << x << "\" y=\"" << kBottom + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(v) << "</text>\n";
  }
  for (double v : ya.ticks()) {
    const double y = py(v);
    out << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kRight << "\" y2=\""
        << y << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(v)
        << "</text>\n";
  }
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kRight - kLeft
      << "\" height=\"" << kBottom - kTop << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label_
      << "</text>\n"
      << "<text x=\"18\" y=\"" << (kTop + kBottom) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << (kTop + kBottom) / 2 << ")\">" << y_label_
      << "</text>\n";

  for (std::size_t s = 0; s < series_.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series_[s].x.size(); ++i) {
      const double xv = series_[s].x[i];
      double yv = series_[s].y[i];
      if (log_x_ && xv <= 0) continue;
      if (log_y_) yv = std::max(yv, ya.lo);
      out << fmt(px(xv)) << "," << fmt(py(yv)) << " ";
    }
    out << "\"/>\n";
    const double ly = kTop + 16 + 16 * static_cast<double>(s);
    out << "<line x1=\"" << kRight - 150 << "\" y1=\"" << ly << "\" x2=\"" << kRight - 125
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n"
        << "<text x=\"" << kRight - 120 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << series_[s].name << "</text>\n";
  }
  out << "</svg>\n";
}

void write_heatmap_svg(const std::filesystem::path& path, const WignerGrid& grid,
                       const std::string& title) {
  const int res = grid.spec.resolution;
  const double cell = std::min((kRight - kLeft) / res, (kBottom - kTop) / res);
  const double max_abs = std::max(grid.values.cwiseAbs().maxCoeff(), 1e-300);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_heatmap_svg: cannot open " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      const double v = grid.values(i, j) / max_abs;  // [-1, 1]
      // blue (negative) .. white .. red (positive)
      const int r = static_cast<int>(255 * std::min(1.0, 1.0 + std::min(v, 0.0)));
      const int b = static_cast<int>(255 * std::min(1.0, 1.0 - std::max(v, 0.0)));
      const int g = std::min(r, b);
      const double x = kLeft + j * cell;
      const double y = kBottom - (i + 1) * cell;
      out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(cell + 0.5)
          << "\" height=\"" << fmt(cell + 0.5) << "\" fill=\"rgb(" << r << "," << g << ","
          << b << ")\"/>\n";
    }
  }
  out << "<rect x=\"" << kLeft << "\" y=\"" << kBottom - res * cell << "\" width=\""
      << res * cell << "\" height=\"" << res * cell << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text x=\"" << kLeft << "\" y=\"" << kBottom + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\">Re: [" << fmt(grid.spec.re_min)
      << ", " << fmt(grid.spec.re_max) << "]  Im: [" << fmt(grid.spec.im_min) << ", "
      << fmt(grid.spec.im_max) << "]</text>\n</svg>\n";
}

}  // namespace pkick
