#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "latinhib/io.hpp"

namespace latinhib {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 24.0;
constexpr double kTop = 24.0;
constexpr double kBottom = 56.0;

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Tick spacing of 1, 2 or 5 times a power of ten giving at most ~8 ticks.
double tick_step(double range) {
  if (!(range > 0.0)) return 1.0;
  const double raw = range / 8.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (const double f : {1.0, 2.0, 5.0, 10.0}) {
    if (f * mag >= raw) return f * mag;
  }
  return 10.0 * mag;
}

struct Frame {
  double t0, t1;
  double k_max;

  double x(double t) const {
    const double span = t1 > t0 ? t1 - t0 : 1.0;
    return kLeft + (t - t0) / span * (kWidth - kLeft - kRight);
  }
  double y(double k) const {
    return kHeight - kBottom - k / k_max * (kHeight - kTop - kBottom);
  }
};

// Step path over converged runs; horizontal moves are emitted only where k
// changes, so a constant run is a single segment.
template <typename KOf>
std::string step_path(const SweepCurve& curve, const Frame& f, KOf k_of) {
  std::string d;
  const auto& s = curve.samples;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!s[i].converged) {
      ++i;
      continue;
    }
    d += "M" + fixed(f.x(s[i].t)) + "," + fixed(f.y(static_cast<double>(k_of(s[i]))));
    std::size_t j = i;
    while (j + 1 < s.size() && s[j + 1].converged) {
      ++j;
      if (k_of(s[j]) != k_of(s[j - 1])) {
        d += "H" + fixed(f.x(s[j].t)) + "V" + fixed(f.y(static_cast<double>(k_of(s[j]))));
      }
    }
    if (j > i && f.x(s[j].t) != f.x(s[i].t)) d += "H" + fixed(f.x(s[j].t));
    i = j + 1;
  }
  return d;
}

}  // namespace

std::string curve_to_svg(const SweepCurve& curve, const std::vector<Plateau>& plateaus) {
  Frame f{0.0, 1.0, 1.0};
  if (!curve.samples.empty()) {
    f.t0 = curve.samples.front().t;
    f.t1 = curve.samples.back().t;
  }
  for (const SweepSample& s : curve.samples) f.k_max = std::max(f.k_max, double(s.k_raw));

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) +
         "\" height=\"" + fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " +
         fixed(kHeight, 0) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + fixed(x0) + "\" y1=\"" + fixed(y0) + "\" x2=\"" + fixed(x1) +
         "\" y2=\"" + fixed(y0) + "\"/>\n";
  svg += "<line x1=\"" + fixed(x0) + "\" y1=\"" + fixed(y0) + "\" x2=\"" + fixed(x0) +
         "\" y2=\"" + fixed(y1) + "\"/>\n";
  svg += "</g>\n";

  const double t_step = tick_step(f.t1 - f.t0);
  const int t_digits = t_step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(t_step)));
  svg += "<g text-anchor=\"middle\">\n";
  for (double t = std::ceil(f.t0 / t_step) * t_step; t <= f.t1 + 1e-9 * t_step; t += t_step) {
    const double x = f.x(t);
    svg += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(y0) + "\" x2=\"" + fixed(x) +
           "\" y2=\"" + fixed(y0 + 5) + "\" stroke=\"black\"/>";
    svg += "<text x=\"" + fixed(x) + "\" y=\"" + fixed(y0 + 18) + "\">" + fixed(t, t_digits) +
           "</text>\n";
  }
  svg += "<text x=\"" + fixed((x0 + x1) / 2) + "\" y=\"" + fixed(kHeight - 12) +
         "\">interaction threshold T</text>\n";
  svg += "</g>\n";

  const double k_step = std::max(1.0, std::ceil(tick_step(f.k_max)));
  svg += "<g text-anchor=\"end\">\n";
  for (double k = 0; k <= f.k_max + 1e-9; k += k_step) {
    const double y = f.y(k);
    svg += "<line x1=\"" + fixed(x0 - 5) + "\" y1=\"" + fixed(y) + "\" x2=\"" + fixed(x0) +
           "\" y2=\"" + fixed(y) + "\" stroke=\"black\"/>";
    svg += "<text x=\"" + fixed(x0 - 8) + "\" y=\"" + fixed(y + 4) + "\">" + fixed(k, 0) +
           "</text>\n";
  }
  svg += "</g>\n";
  svg += "<text x=\"16\" y=\"" + fixed((y0 + y1) / 2) + "\" transform=\"rotate(-90 16 " +
         fixed((y0 + y1) / 2) + ")\" text-anchor=\"middle\">number of classes K</text>\n";

  // plateau highlights under the curve
  const std::size_t shown = std::min<std::size_t>(3, plateaus.size());
  for (std::size_t p = 0; p < shown; ++p) {
    const Plateau& pl = plateaus[p];
    const double y = f.y(static_cast<double>(pl.k));
    svg += "<line x1=\"" + fixed(f.x(pl.t_start)) + "\" y1=\"" + fixed(y) + "\" x2=\"" +
           fixed(f.x(pl.t_end)) + "\" y2=\"" + fixed(y) +
           "\" stroke=\"#f4a259\" stroke-width=\"8\" stroke-opacity=\"0.6\"/>\n";
    svg += "<text x=\"" + fixed((f.x(pl.t_start) + f.x(pl.t_end)) / 2) + "\" y=\"" +
           fixed(y - 8) + "\" text-anchor=\"middle\" fill=\"#b5541c\">K=" +
           std::to_string(pl.k) + "</text>\n";
  }

  const std::string raw = step_path(curve, f, [](const SweepSample& s) { return s.k_raw; });
  if (!raw.empty()) {
    svg += "<path d=\"" + raw + "\" fill=\"none\" stroke=\"#1d3557\" stroke-width=\"1.5\"/>\n";
  }
  if (curve.min_class_size > 1) {
    const std::string filtered =
        step_path(curve, f, [](const SweepSample& s) { return s.k_filtered; });
    if (!filtered.empty()) {
      svg += "<path d=\"" + filtered +
             "\" fill=\"none\" stroke=\"#2a9d8f\" stroke-width=\"1.5\" stroke-dasharray=\"5,3\"/>\n";
    }
  }
  for (const SweepSample& s : curve.samples) {
    if (s.converged) continue;
    svg += "<circle cx=\"" + fixed(f.x(s.t)) + "\" cy=\"" + fixed(y0) +
           "\" r=\"3\" fill=\"#e63946\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace latinhib
