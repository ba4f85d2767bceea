// Copyright 2026 The spinqudit Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinqudit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace spinqudit::svg {

namespace {

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> ticks(double lo, double hi, bool log) {
  std::vector<double> out;
  if (log) {
    for (double e = std::floor(lo); e <= std::ceil(hi) + 1e-9; e += 1.0)
      if (e >= lo - 1e-9 && e <= hi + 1e-9) out.push_back(e);
    return out;
  }
  const double span = hi - lo;
  if (!(span > 0)) return {lo};
  const double raw = span / 5;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) out.push_back(v);
  return out;
}

}  // namespace

std::string line_plot(const std::vector<Series>& series, const PlotSpec& spec) {
  const double ml = 70, mr = 20, mt = 36, mb = 50;
  const double pw = spec.width - ml - mr, ph = spec.height - mt - mb;
  auto tx = [&](double v) { return spec.logx ? std::log10(v) : v; };
  auto ty = [&](double v) { return spec.logy ? std::log10(v) : v; };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      const double a = tx(s.x[i]), b = ty(s.y[i]);
      if (!std::isfinite(a) || !std::isfinite(b)) continue;
      x0 = std::min(x0, a), x1 = std::max(x1, a), y0 = std::min(y0, b), y1 = std::max(y1, b);
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad, y1 += pad;
  auto px = [&](double a) { return ml + (a - x0) / (x1 - x0) * pw; };
  auto py = [&](double b) { return mt + ph - (b - y0) / (y1 - y0) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
     << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << spec.width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
     << esc(spec.title) << "</text>\n";
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(x0, x1, spec.logx)) {
    os << "<line x1=\"" << num(px(t)) << "\" y1=\"" << mt + ph << "\" x2=\"" << num(px(t))
       << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>";
    os << "<text x=\"" << num(px(t)) << "\" y=\"" << mt + ph + 18 << "\" text-anchor=\"middle\">"
       << tick_label(spec.logx ? std::pow(10.0, t) : t) << "</text>\n";
  }
  for (double t : ticks(y0, y1, spec.logy)) {
    os << "<line x1=\"" << ml - 5 << "\" y1=\"" << num(py(t)) << "\" x2=\"" << ml << "\" y2=\""
       << num(py(t)) << "\" stroke=\"black\"/>";
    os << "<text x=\"" << ml - 8 << "\" y=\"" << num(py(t) + 4) << "\" text-anchor=\"end\">"
       << tick_label(spec.logy ? std::pow(10.0, t) : t) << "</text>\n";
  }
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << spec.height - 10
     << "\" text-anchor=\"middle\">" << esc(spec.xlabel) << "</text>\n";
  os << "<text transform=\"translate(16," << mt + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
     << esc(spec.ylabel) << "</text>\n";
  for (double v : spec.vlines) {
    const double a = tx(v);
    if (a < x0 || a > x1) continue;
    os << "<line x1=\"" << num(px(a)) << "\" y1=\"" << mt << "\" x2=\"" << num(px(a)) << "\" y2=\""
       << mt + ph << "\" stroke=\"gray\" stroke-dasharray=\"5,4\"/>\n";
  }
  double ly = mt + 14;
  for (const auto& s : series) {
    if (s.line) {
      os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
      for (size_t i = 0; i < s.x.size(); ++i) {
        const double a = tx(s.x[i]), b = ty(s.y[i]);
        if (std::isfinite(a) && std::isfinite(b)) os << num(px(a)) << "," << num(py(b)) << " ";
      }
      os << "\"/>\n";
    }
    if (s.markers)
      for (size_t i = 0; i < s.x.size(); ++i) {
        const double a = tx(s.x[i]), b = ty(s.y[i]);
        if (std::isfinite(a) && std::isfinite(b))
          os << "<circle cx=\"" << num(px(a)) << "\" cy=\"" << num(py(b)) << "\" r=\"3\" fill=\""
             << s.color << "\"/>";
      }
    if (!s.label.empty()) {
      os << "<line x1=\"" << ml + pw - 120 << "\" y1=\"" << ly - 4 << "\" x2=\"" << ml + pw - 100
         << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>";
      os << "<text x=\"" << ml + pw - 95 << "\" y=\"" << ly << "\">" << esc(s.label) << "</text>\n";
      ly += 16;
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string diverging_color(double value, double limit) {
  double t = limit > 0 ? value / limit : 0;
  t = std::clamp(t, -1.0, 1.0);
  // white at zero, #b2182b at +limit, #2166ac at -limit
  const double r1 = 178, g1 = 24, b1 = 43, r0 = 33, g0 = 102, b0 = 172;
  double r, g, b;
  if (t >= 0) {
    r = 255 + (r1 - 255) * t, g = 255 + (g1 - 255) * t, b = 255 + (b1 - 255) * t;
  } else {
    r = 255 + (r0 - 255) * -t, g = 255 + (g0 - 255) * -t, b = 255 + (b0 - 255) * -t;
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", int(std::lround(r)), int(std::lround(g)),
                int(std::lround(b)));
  return buf;
}

std::string color_map(const std::vector<Polygon>& cells, double x0, double x1, double y0, double y1,
                      double limit, const std::string& title) {
  const double w = 640, ml = 20, mt = 36, bar = 70;
  const double pw = w - ml - bar - 20;
  const double ph = pw * (y1 - y0) / (x1 - x0);
  const double h = ph + mt + 20;
  auto px = [&](double a) { return ml + (a - x0) / (x1 - x0) * pw; };
  auto py = [&](double b) { return mt + ph - (b - y0) / (y1 - y0) * ph; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << num(h)
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << esc(title)
     << "</text>\n";
  for (const auto& c : cells) {
    const std::string col = diverging_color(c.value, limit);
    os << "<polygon fill=\"" << col << "\" stroke=\"" << col << "\" stroke-width=\"0.3\" points=\"";
    for (const auto& [a, b] : c.pts) os << num(px(a)) << "," << num(py(b)) << " ";
    os << "\"/>\n";
  }
  const double bx = w - bar, by = mt, bh = ph;
  const int nb = 50;
  for (int i = 0; i < nb; ++i) {
    const double v = limit * (1 - 2.0 * (i + 0.5) / nb);
    os << "<rect x=\"" << bx << "\" y=\"" << num(by + bh * i / nb) << "\" width=\"16\" height=\""
       << num(bh / nb + 0.5) << "\" fill=\"" << diverging_color(v, limit) << "\"/>\n";
  }
  for (double v : {limit, 0.0, -limit})
    os << "<text x=\"" << bx + 20 << "\" y=\"" << num(by + bh * (1 - (v / limit + 1) / 2) + 4)
       << "\">" << tick_label(v) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace spinqudit::svg
