#include "blade/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "blade/error.hpp"

namespace blade {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};
constexpr int kPaletteSize = sizeof kPalette / sizeof kPalette[0];

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// 1-2-5 step covering [lo, hi] with about `target` ticks.
std::vector<double> linear_ticks(double lo, double hi, int target) {
  const double span = hi - lo;
  const double raw = span / target;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  double step = magnitude;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * magnitude;
    if (span / step <= target) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    ticks.push_back(std::fabs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ticks;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

// Default sweeps use rate 1/n, which changes with every n; such rows belong
// to one curve.
std::string schedule_family(const std::string& schedule, int n) {
  constexpr std::string_view prefix = "static:";
  if (!schedule.starts_with(prefix)) return schedule;
  char* end = nullptr;
  const double rate = std::strtod(schedule.c_str() + prefix.size(), &end);
  if (std::fabs(rate * n - 1.0) < 1e-5) return "static:1/n";
  return schedule;
}

}  // namespace

std::vector<PlotSeries> build_series(const std::vector<BenchRow>& rows, PlotOptions::Mode mode) {
  using Key = std::tuple<std::string, std::string, std::string, int>;
  std::map<Key, PlotSeries> grouped;
  auto label_for = [](const std::string& problem, const std::string& variant, const std::string& schedule,
                      int clients) {
    return problem + " " + variant + " " + schedule + " c=" + std::to_string(clients);
  };

  if (mode == PlotOptions::Mode::Generations) {
    for (const auto& row : rows) {
      if (!row.has_stats) continue;
      const auto family = schedule_family(row.schedule, row.n);
      auto& s = grouped[{row.problem, row.variant, family, row.clients}];
      s.label = label_for(row.problem, row.variant, family, row.clients);
      s.points.push_back({static_cast<double>(row.n), row.mean_generations, row.ci95_low, row.ci95_high});
    }
  } else {
    for (const auto& r : ratio_table(rows)) {
      const auto family = schedule_family(r.schedule, r.n);
      auto& s = grouped[{r.problem, r.variant, family, r.clients}];
      s.label = label_for(r.problem, r.variant, family, r.clients);
      s.points.push_back({static_cast<double>(r.n), r.estimate.ratio, r.estimate.ci95_low, r.estimate.ci95_high});
    }
  }
  std::vector<PlotSeries> out;
  for (auto& [key, s] : grouped) {
    std::stable_sort(s.points.begin(), s.points.end(),
                     [](const PlotPoint& a, const PlotPoint& b) { return a.x < b.x; });
    out.push_back(std::move(s));
  }
  return out;
}

std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options) {
  const bool ratio = options.mode == PlotOptions::Mode::Ratio;
  const double left = 80, right = 240, top = 40, bottom = 60;
  const double width = options.width, height = options.height;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  if (plot_w <= 0 || plot_h <= 0) throw ConfigError("chart too small");

  Range xr, yr;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      xr.add(p.x);
      for (double v : {p.y, p.low, p.high}) {
        if (!options.log_y || v > 0) yr.add(v);
      }
    }
  }
  if (ratio) yr.add(1.0);
  if (!std::isfinite(xr.lo)) xr = Range{0.0, 1.0};
  if (!std::isfinite(yr.lo)) yr = Range{options.log_y ? 1.0 : 0.0, options.log_y ? 10.0 : 1.0};
  if (xr.hi == xr.lo) {
    xr.lo -= 1.0;
    xr.hi += 1.0;
  }

  double ylo = options.log_y ? std::floor(std::log10(yr.lo)) : yr.lo;
  double yhi = options.log_y ? std::ceil(std::log10(yr.hi)) : yr.hi;
  if (!options.log_y) {
    const double pad = (yhi - ylo) * 0.05;
    ylo = (ylo >= 0 && ylo - pad < 0) ? 0.0 : ylo - pad;
    yhi += pad;
  }
  if (yhi == ylo) {
    ylo -= 1.0;
    yhi += 1.0;
  }

  auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double y) {
    const double v = options.log_y ? std::log10(std::max(y, std::pow(10.0, ylo))) : y;
    return top + plot_h - (v - ylo) / (yhi - ylo) * plot_h;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
      << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << escape(options.title) << "</text>\n";
  }

  // Axes and ticks.
  svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
      << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + plot_h) << "\" x2=\"" << num(left + plot_w)
      << "\" y2=\"" << num(top + plot_h) << "\"/>\n"
      << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\""
      << num(top + plot_h) << "\"/>\n</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double t : linear_ticks(xr.lo, xr.hi, 8)) {
    svg << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(top + plot_h) << "\" x2=\"" << num(px(t))
        << "\" y2=\"" << num(top + plot_h + 5) << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(px(t)) << "\" y=\"" << num(top + plot_h + 18) << "\" text-anchor=\"middle\">"
        << tick_label(t) << "</text>\n";
  }
  std::vector<double> yticks;
  if (options.log_y) {
    for (double e = ylo; e <= yhi; e += 1.0) yticks.push_back(std::pow(10.0, e));
  } else {
    yticks = linear_ticks(ylo, yhi, 6);
  }
  for (double t : yticks) {
    svg << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(left)
        << "\" y2=\"" << num(py(t)) << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(left - 8) << "\" y=\"" << num(py(t) + 4) << "\" text-anchor=\"end\">"
        << tick_label(t) << "</text>\n";
  }
  svg << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(height - 15)
      << "\" text-anchor=\"middle\" font-size=\"13\">N</text>\n"
      << "<text x=\"18\" y=\"" << num(top + plot_h / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << num(top + plot_h / 2) << ")\">"
      << (ratio ? "speedup ratio" : "mean generations") << "</text>\n</g>\n";

  if (ratio) {
    svg << "<line class=\"reference\" x1=\"" << num(left) << "\" y1=\"" << num(py(1.0)) << "\" x2=\""
        << num(left + plot_w) << "\" y2=\"" << num(py(1.0))
        << "\" stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
  }

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % kPaletteSize];
    svg << "<g class=\"series\" data-label=\"" << escape(s.label) << "\">\n";
    if (!s.points.empty()) {
      svg << "<polygon class=\"band\" fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
      for (const auto& p : s.points) svg << num(px(p.x)) << ',' << num(py(p.high)) << ' ';
      for (auto it = s.points.rbegin(); it != s.points.rend(); ++it) {
        svg << num(px(it->x)) << ',' << num(py(it->low)) << ' ';
      }
      svg << "\"/>\n<polyline class=\"mean\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t k = 0; k < s.points.size(); ++k) {
        svg << (k ? " " : "") << num(px(s.points[k].x)) << ',' << num(py(s.points[k].y));
      }
      svg << "\"/>\n";
    }
    const double ly = top + 10 + 18.0 * static_cast<double>(i);
    svg << "<line x1=\"" << num(left + plot_w + 15) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(left + plot_w + 35) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/><text x=\"" << num(left + plot_w + 40) << "\" y=\"" << num(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(s.label) << "</text>\n</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace blade
