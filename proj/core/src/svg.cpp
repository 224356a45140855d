#include "rejectron/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace rejectron {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 20.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 52.0;

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string escape_text(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_plot_svg(const std::string& title, const std::string& x_label,
                            const std::string& y_label, const PlotSeries& series) {
  const std::size_t n = series.x.size();
  if (n == 0 || series.mean.size() != n)
    throw std::invalid_argument("plot series needs matching x and mean columns");
  const bool has_band = !series.std_dev.empty();
  if (has_band && series.std_dev.size() != n)
    throw std::invalid_argument("plot series std column length mismatch");

  double x_min = series.x.front(), x_max = series.x.front();
  double y_min = series.mean.front(), y_max = series.mean.front();
  for (std::size_t i = 0; i < n; ++i) {
    x_min = std::min(x_min, series.x[i]);
    x_max = std::max(x_max, series.x[i]);
    const double s = has_band ? series.std_dev[i] : 0.0;
    y_min = std::min(y_min, series.mean[i] - s);
    y_max = std::max(y_max, series.mean[i] + s);
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto sx = [&](double v) { return kLeft + (v - x_min) / (x_max - x_min) * plot_w; };
  const auto sy = [&](double v) { return kTop + (y_max - v) / (y_max - y_min) * plot_h; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

  if (has_band) {
    os << "<path fill=\"#4682b4\" fill-opacity=\"0.25\" stroke=\"none\" d=\"M";
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) os << " L";
      os << coord(sx(series.x[i])) << ' ' << coord(sy(series.mean[i] + series.std_dev[i]));
    }
    for (std::size_t i = n; i-- > 0;) {
      os << " L" << coord(sx(series.x[i])) << ' '
         << coord(sy(series.mean[i] - series.std_dev[i]));
    }
    os << " Z\"/>\n";
  }

  os << "<polyline fill=\"none\" stroke=\"#4682b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) os << ' ';
    os << coord(sx(series.x[i])) << ',' << coord(sy(series.mean[i]));
  }
  os << "\"/>\n";

  os << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kTop + plot_h) << "\" x2=\""
     << coord(kLeft + plot_w) << "\" y2=\"" << coord(kTop + plot_h)
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kTop) << "\" x2=\"" << coord(kLeft)
     << "\" y2=\"" << coord(kTop + plot_h) << "\" stroke=\"black\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_min + (x_max - x_min) * i / kTicks;
    const double px = sx(fx);
    os << "<line x1=\"" << coord(px) << "\" y1=\"" << coord(kTop + plot_h) << "\" x2=\""
       << coord(px) << "\" y2=\"" << coord(kTop + plot_h + 5.0) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << coord(px) << "\" y=\"" << coord(kTop + plot_h + 18.0)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
       << tick_label(fx) << "</text>\n";

    const double fy = y_min + (y_max - y_min) * i / kTicks;
    const double py = sy(fy);
    os << "<line x1=\"" << coord(kLeft - 5.0) << "\" y1=\"" << coord(py) << "\" x2=\""
       << coord(kLeft) << "\" y2=\"" << coord(py) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << coord(kLeft - 8.0) << "\" y=\"" << coord(py + 4.0)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << tick_label(fy)
       << "</text>\n";
  }

  os << "<text x=\"" << coord(kLeft + plot_w / 2.0) << "\" y=\"" << coord(kHeight - 14.0)
     << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
     << escape_text(x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << coord(kTop + plot_h / 2.0)
     << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << coord(kTop + plot_h / 2.0) << ")\">" << escape_text(y_label) << "</text>\n";
  os << "<text x=\"" << coord(kLeft + plot_w / 2.0) << "\" y=\"22\""
     << " font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">"
     << escape_text(title) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}
