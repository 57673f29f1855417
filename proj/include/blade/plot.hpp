#pragma once

#include <string>
#include <vector>

#include "blade/csv.hpp"

namespace blade {

struct PlotOptions {
  enum class Mode { Generations, Ratio };
  Mode mode = Mode::Generations;
  bool log_y = false;
  std::string title;
  int width = 800;
  int height = 500;
};

struct PlotPoint {
  double x = 0.0;
  double y = 0.0;
  double low = 0.0;
  double high = 0.0;
};

struct PlotSeries {
  std::string label;
  std::vector<PlotPoint> points;  // sorted by x
};

/// Groups bench rows into series: one per (problem, variant, schedule,
/// clients) for generations, one per multi-client group for ratios.
[[nodiscard]] std::vector<PlotSeries> build_series(const std::vector<BenchRow>& rows, PlotOptions::Mode mode);

/// Self-contained SVG: one polyline per series over a shaded CI band, axes
/// with ticks, a legend, and a dashed reference line at 1.0 in ratio mode.
/// Output depends only on the inputs.
[[nodiscard]] std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options);

}  // namespace blade
