// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Minimal native SVG output for curves and colour maps.

#pragma once

#include <string>
#include <vector>

namespace spinqudit::svg {

struct Series {
  std::string label;
  std::vector<double> x, y;
  std::string color = "#1f77b4";
  bool markers = false;
  bool line = true;
};

struct PlotSpec {
  std::string title, xlabel, ylabel;
  bool logx = false, logy = false;
  int width = 640, height = 420;
  std::vector<double> vlines;  // x positions of dashed markers
};

std::string line_plot(const std::vector<Series>& series, const PlotSpec& spec);

// Blue-white-red colour for value in [-limit, limit]; clipped outside.
std::string diverging_color(double value, double limit);

struct Polygon {
  std::vector<std::pair<double, double>> pts;  // data coordinates
  double value = 0;
};

// Polygons in data coordinates [x0,x1]x[y0,y1] filled with the diverging palette,
// plus a colour bar.
std::string color_map(const std::vector<Polygon>& cells, double x0, double x1, double y0, double y1,
                      double limit, const std::string& title);

}  // namespace spinqudit::svg
