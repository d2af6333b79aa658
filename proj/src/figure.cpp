#include "mobility/figure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string_view>

#include "mobility/error.hpp"

namespace mobility {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 640.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 16.0;  // square plot area
constexpr double kTop = 24.0;
constexpr double kBottom = 72.0;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // Avoid "-0.00" so output does not depend on the sign of tiny values.
  if (std::string_view(buf) == "-0.00") return "0.00";
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::fabs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

// A 1-2-5 step giving roughly `target` intervals over `span`.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double factor = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
  return factor * mag;
}

struct Axis {
  double lo;
  double hi;
  double px(double x) const { return kLeft + (x - lo) / (hi - lo) * kPlotW; }
  double py(double y) const { return kTop + kPlotH - (y - lo) / (hi - lo) * kPlotH; }
};

}  // namespace

std::string render_figure(const LogIncomeSample& sample, const RegressionFit& fit) {
  if (sample.size() < 2) throw InsufficientData("figure needs at least 2 pairs");
  const auto parent = sample.parent();
  const auto child = sample.child();
  const auto [pmin, pmax] = std::minmax_element(parent.begin(), parent.end());
  const auto [cmin, cmax] = std::minmax_element(child.begin(), child.end());
  const double data_lo = std::min(*pmin, *cmin);
  const double data_hi = std::max(*pmax, *cmax);
  const double span = data_hi > data_lo ? data_hi - data_lo : 1.0;
  const Axis axis{data_lo - 0.05 * span, data_lo + 1.05 * span};

  std::string svg;
  svg.reserve(256 + sample.size() * 96);
  const auto add = [&svg](std::string_view s) { svg += s; };

  add("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
  add("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"");
  add(fixed(kWidth) + "\" height=\"" + fixed(kHeight) + "\" viewBox=\"0 0 " + fixed(kWidth) +
      " " + fixed(kHeight) + "\">\n");
  add("<defs><clipPath id=\"plot-area\"><rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) +
      "\" width=\"" + fixed(kPlotW) + "\" height=\"" + fixed(kPlotH) +
      "\"/></clipPath></defs>\n");
  add("<rect x=\"0\" y=\"0\" width=\"" + fixed(kWidth) + "\" height=\"" + fixed(kHeight) +
      "\" fill=\"white\"/>\n");
  add("<rect class=\"frame\" x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" +
      fixed(kPlotW) + "\" height=\"" + fixed(kPlotH) +
      "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n");

  // Ticks, shared by both axes.
  const double step = nice_step(axis.hi - axis.lo, 6);
  add("<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n");
  for (double t = std::ceil(axis.lo / step) * step; t <= axis.hi + 1e-9 * step; t += step) {
    const std::string x = fixed(axis.px(t));
    const std::string y = fixed(axis.py(t));
    const std::string base = fixed(kTop + kPlotH);
    add("<line x1=\"" + x + "\" y1=\"" + base + "\" x2=\"" + x + "\" y2=\"" +
        fixed(kTop + kPlotH + 5) + "\" stroke=\"black\"/>\n");
    add("<text x=\"" + x + "\" y=\"" + fixed(kTop + kPlotH + 20) +
        "\" text-anchor=\"middle\">" + tick_label(t) + "</text>\n");
    add("<line x1=\"" + fixed(kLeft - 5) + "\" y1=\"" + y + "\" x2=\"" + fixed(kLeft) +
        "\" y2=\"" + y + "\" stroke=\"black\"/>\n");
    add("<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(axis.py(t) + 4) +
        "\" text-anchor=\"end\">" + tick_label(t) + "</text>\n");
  }
  add("</g>\n");

  add("<text class=\"axis-label\" x=\"" + fixed(kLeft + kPlotW / 2) + "\" y=\"" +
      fixed(kHeight - 24) +
      "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">"
      "Parent log-income</text>\n");
  const std::string ylx = fixed(24);
  const std::string yly = fixed(kTop + kPlotH / 2);
  add("<text class=\"axis-label\" x=\"" + ylx + "\" y=\"" + yly + "\" transform=\"rotate(-90 " +
      ylx + " " + yly +
      ")\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">"
      "Child log-income</text>\n");

  add("<g clip-path=\"url(#plot-area)\">\n");
  add("<g class=\"markers\" fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n");
  for (std::size_t i = 0; i < sample.size(); ++i) {
    add("<circle class=\"marker\" cx=\"" + fixed(axis.px(parent[i])) + "\" cy=\"" +
        fixed(axis.py(child[i])) + "\" r=\"3.00\"/>\n");
  }
  add("</g>\n");
  add("<line class=\"identity\" x1=\"" + fixed(axis.px(data_lo)) + "\" y1=\"" +
      fixed(axis.py(data_lo)) + "\" x2=\"" + fixed(axis.px(data_hi)) + "\" y2=\"" +
      fixed(axis.py(data_hi)) + "\" stroke=\"blue\" stroke-width=\"1.5\"/>\n");
  add("<line class=\"regression\" x1=\"" + fixed(axis.px(data_lo)) + "\" y1=\"" +
      fixed(axis.py(fit.alpha + fit.beta * data_lo)) + "\" x2=\"" + fixed(axis.px(data_hi)) +
      "\" y2=\"" + fixed(axis.py(fit.alpha + fit.beta * data_hi)) +
      "\" stroke=\"red\" stroke-width=\"1.5\"/>\n");
  add("</g>\n");

  // Legend
  const double lx = kLeft + 12;
  const double ly = kTop + 16;
  add("<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n");
  add("<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly) + "\" x2=\"" + fixed(lx + 24) +
      "\" y2=\"" + fixed(ly) + "\" stroke=\"blue\" stroke-width=\"1.5\"/>\n");
  add("<text x=\"" + fixed(lx + 30) + "\" y=\"" + fixed(ly + 4) + "\">y = x</text>\n");
  add("<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly + 18) + "\" x2=\"" + fixed(lx + 24) +
      "\" y2=\"" + fixed(ly + 18) + "\" stroke=\"red\" stroke-width=\"1.5\"/>\n");
  char fit_label[96];
  std::snprintf(fit_label, sizeof fit_label, "y = %.3g %c %.3g x", fit.alpha,
                fit.beta < 0.0 ? '-' : '+', std::fabs(fit.beta));
  add("<text x=\"" + fixed(lx + 30) + "\" y=\"" + fixed(ly + 22) + "\">" + fit_label +
      "</text>\n");
  add("</g>\n");
  add("</svg>\n");
  return svg;
}

}  // namespace mobility
