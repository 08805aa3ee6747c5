#include "lstreg/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "lstreg/simulation.hpp"

namespace lstreg {

BoxStats box_stats(std::vector<double> v) {
  BoxStats b;
  if (v.empty()) return b;
  std::sort(v.begin(), v.end());
  b.q1 = quantile(v, 0.25);
  b.median = quantile(v, 0.5);
  b.q3 = quantile(v, 0.75);
  const double iqr = b.q3 - b.q1, lo = b.q1 - 1.5 * iqr, hi = b.q3 + 1.5 * iqr;
  b.whisker_low = b.q1;
  b.whisker_high = b.q3;
  for (double x : v) {
    if (x < lo || x > hi) {
      b.outliers.push_back(x);
      continue;
    }
    b.whisker_low = std::min(b.whisker_low, x);
    b.whisker_high = std::max(b.whisker_high, x);
  }
  return b;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50, kHeight = 320;

}  // namespace

std::string boxplot_svg(const std::string& title, const std::vector<BoxGroup>& groups) {
  const double slot = 80.0;
  const double width = kLeft + kRight + slot * static_cast<double>(std::max<std::size_t>(groups.size(), 1));
  const double total_h = kTop + kHeight + kBottom;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& g : groups)
    for (double x : g.second) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-12) lo -= 0.5, hi += 0.5;
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  auto ypos = [&](double v) { return kTop + kHeight * (hi - v) / (hi - lo); };

  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(total_h) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
       escape(title) + "</text>\n";
  s += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(kTop + kHeight) +
       "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = lo + (hi - lo) * i / 4.0, y = ypos(v);
    s += "<line x1=\"" + num(kLeft - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(y) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" + tick(v) + "</text>\n";
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double cx = kLeft + slot * (static_cast<double>(g) + 0.5), half = slot * 0.3;
    s += "<g class=\"box\" data-method=\"" + escape(groups[g].first) + "\">\n";
    if (!groups[g].second.empty()) {
      const BoxStats b = box_stats(groups[g].second);
      s += "<line x1=\"" + num(cx) + "\" y1=\"" + num(ypos(b.whisker_high)) + "\" x2=\"" + num(cx) + "\" y2=\"" +
           num(ypos(b.q3)) + "\" stroke=\"black\"/>\n";
      s += "<line x1=\"" + num(cx) + "\" y1=\"" + num(ypos(b.q1)) + "\" x2=\"" + num(cx) + "\" y2=\"" +
           num(ypos(b.whisker_low)) + "\" stroke=\"black\"/>\n";
      for (double w : {b.whisker_low, b.whisker_high})
        s += "<line x1=\"" + num(cx - half / 2) + "\" y1=\"" + num(ypos(w)) + "\" x2=\"" + num(cx + half / 2) +
             "\" y2=\"" + num(ypos(w)) + "\" stroke=\"black\"/>\n";
      s += "<rect x=\"" + num(cx - half) + "\" y=\"" + num(ypos(b.q3)) + "\" width=\"" + num(2 * half) +
           "\" height=\"" + num(std::max(ypos(b.q1) - ypos(b.q3), 0.5)) +
           "\" fill=\"#cfe0f3\" stroke=\"black\"/>\n";
      s += "<line x1=\"" + num(cx - half) + "\" y1=\"" + num(ypos(b.median)) + "\" x2=\"" + num(cx + half) +
           "\" y2=\"" + num(ypos(b.median)) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
      for (double o : b.outliers)
        s += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(ypos(o)) + "\" r=\"2.5\" fill=\"none\" stroke=\"black\"/>\n";
    }
    s += "<text x=\"" + num(cx) + "\" y=\"" + num(kTop + kHeight + 20) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + escape(groups[g].first) +
         "</text>\n</g>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string loglog_trace_svg(const std::string& title, const std::vector<double>& x, const std::vector<double>& y) {
  const double width = 480, total_h = kTop + kHeight + kBottom;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (x[i] > 0 && y[i] > 0 && std::isfinite(x[i]) && std::isfinite(y[i]))
      pts.emplace_back(std::log10(x[i]), std::log10(y[i]));
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!pts.empty()) {
    x0 = x1 = pts[0].first;
    y0 = y1 = pts[0].second;
    for (auto [a, b] : pts) {
      x0 = std::min(x0, a), x1 = std::max(x1, a);
      y0 = std::min(y0, b), y1 = std::max(y1, b);
    }
  }
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  const double plot_w = width - kLeft - kRight;
  auto px = [&](double v) { return kLeft + plot_w * (v - x0) / (x1 - x0); };
  auto py = [&](double v) { return kTop + kHeight * (y1 - v) / (y1 - y0); };

  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(total_h) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(width / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
       escape(title) + "</text>\n";
  s += "<text x=\"" + num(width / 2) + "\" y=\"" + num(total_h - 10) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">log10 delta</text>\n";
  s += "<text x=\"14\" y=\"" + num(kTop + kHeight / 2) +
       "\" font-family=\"sans-serif\" font-size=\"11\" transform=\"rotate(-90 14 " + num(kTop + kHeight / 2) +
       ")\">log10 norm</text>\n";
  s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w) + "\" height=\"" + num(kHeight) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  std::string poly;
  for (auto [a, b] : pts) poly += num(px(a)) + "," + num(py(b)) + " ";
  if (!poly.empty()) poly.pop_back();
  s += "<polyline points=\"" + poly + "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  for (auto [a, b] : pts) {
    s += "<circle cx=\"" + num(px(a)) + "\" cy=\"" + num(py(b)) + "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    s += "<text x=\"" + num(px(a)) + "\" y=\"" + num(kTop + kHeight + 14) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" + tick(a) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace lstreg
