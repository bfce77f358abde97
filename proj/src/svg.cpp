// SPDX-License-Identifier: Apache-2.0
#include "fairscore/svg.hpp"

#include <algorithm>
#include <cmath>

#include "fairscore/numeric.hpp"

namespace fairscore {

namespace {

// Plot geometry, fixed for every emitted file.
constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 610.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 430.0;

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out.push_back(ch);
    }
  }
  return out;
}

std::string num(double v) { return format_double(v); }

void open_svg(std::string& out, const std::string& title) {
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
         "height=\"480\" viewBox=\"0 0 640 480\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" "
         "fill=\"#ffffff\"/>\n";
  out += "<text x=\"320\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"monospace\" font-size=\"16\" fill=\"#222222\">" +
         escape_xml(title) + "</text>\n";
}

void axes(std::string& out) {
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kBottom) +
         "\" x2=\"" + num(kRight) + "\" y2=\"" + num(kBottom) +
         "\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" +
         num(kLeft) + "\" y2=\"" + num(kBottom) +
         "\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
}

void tick_label(std::string& out, double x, double y, const std::string& text,
                const char* anchor) {
  out += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" +
         anchor +
         "\" font-family=\"monospace\" font-size=\"12\" "
         "fill=\"#222222\">" +
         escape_xml(text) + "</text>\n";
}

}  // namespace

std::vector<std::pair<double, double>> qq_points(
    const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<std::pair<double, double>> points;
  points.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(n);
    points.emplace_back(a.quantile(u), b.quantile(u));
  }
  return points;
}

std::string qq_plot_svg(const EmpiricalDistribution& a,
                        const EmpiricalDistribution& b,
                        const std::string& label_a,
                        const std::string& label_b) {
  const auto points = qq_points(a, b);
  double lo = std::min(a.min(), b.min());
  double hi = std::max(a.max(), b.max());
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  auto sx = [&](double v) {
    return kLeft + (v - lo) / (hi - lo) * (kRight - kLeft);
  };
  auto sy = [&](double v) {
    return kBottom - (v - lo) / (hi - lo) * (kBottom - kTop);
  };

  std::string out;
  open_svg(out, "Q-Q matching: " + label_a + " vs " + label_b);
  axes(out);
  out += "<line x1=\"" + num(sx(lo)) + "\" y1=\"" + num(sy(lo)) +
         "\" x2=\"" + num(sx(hi)) + "\" y2=\"" + num(sy(hi)) +
         "\" stroke=\"#999999\" stroke-width=\"1\" "
         "stroke-dasharray=\"6,4\"/>\n";
  for (const auto& [x, y] : points) {
    out += "<circle cx=\"" + num(sx(x)) + "\" cy=\"" + num(sy(y)) +
           "\" r=\"3\" fill=\"#1f6fb4\" fill-opacity=\"0.7\"/>\n";
  }
  tick_label(out, kLeft, kBottom + 18.0, num(lo), "start");
  tick_label(out, kRight, kBottom + 18.0, num(hi), "end");
  tick_label(out, kLeft - 8.0, kBottom, num(lo), "end");
  tick_label(out, kLeft - 8.0, kTop + 4.0, num(hi), "end");
  tick_label(out, (kLeft + kRight) / 2.0, kBottom + 36.0,
             label_a + " quantiles", "middle");
  tick_label(out, kLeft, kTop - 10.0, label_b + " quantiles", "start");
  out += "</svg>\n";
  return out;
}

std::string density_plot_svg(const BinnedDistribution& hist,
                             const std::string& label) {
  const double lo = hist.edges.front();
  const double hi = hist.edges.back();
  double peak = 0.0;
  for (double m : hist.masses) {
    peak = std::max(peak, m);
  }
  if (peak == 0.0) {
    peak = 1.0;
  }
  auto sx = [&](double v) {
    return kLeft + (v - lo) / (hi - lo) * (kRight - kLeft);
  };

  std::string out;
  open_svg(out, "Score density: " + label);
  axes(out);
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    const double x0 = sx(hist.edges[i]);
    const double x1 = sx(hist.edges[i + 1]);
    const double h = hist.masses[i] / peak * (kBottom - kTop);
    out += "<rect x=\"" + num(x0) + "\" y=\"" + num(kBottom - h) +
           "\" width=\"" + num(x1 - x0) + "\" height=\"" + num(h) +
           "\" fill=\"#1f6fb4\" fill-opacity=\"0.6\" stroke=\"#14507f\" "
           "stroke-width=\"1\"/>\n";
  }
  tick_label(out, kLeft, kBottom + 18.0, num(lo), "start");
  tick_label(out, kRight, kBottom + 18.0, num(hi), "end");
  tick_label(out, kLeft - 8.0, kTop + 4.0, num(peak), "end");
  tick_label(out, (kLeft + kRight) / 2.0, kBottom + 36.0, "score", "middle");
  tick_label(out, kLeft, kTop - 10.0, "bin mass", "start");
  out += "</svg>\n";
  return out;
}

}  // namespace fairscore
