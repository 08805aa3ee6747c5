#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lstreg {

struct BoxStats {
  double q1 = 0.0, median = 0.0, q3 = 0.0;
  double whisker_low = 0.0, whisker_high = 0.0;  // most extreme points within 1.5 IQR of the box
  std::vector<double> outliers;
};

BoxStats box_stats(std::vector<double> values);

using BoxGroup = std::pair<std::string, std::vector<double>>;

// Standalone SVG with one box per group (groups with no values are drawn as
// labels only).
std::string boxplot_svg(const std::string& title, const std::vector<BoxGroup>& groups);

// log10(x) against log10(y) polyline, used for norm-versus-delta traces.
std::string loglog_trace_svg(const std::string& title, const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lstreg
