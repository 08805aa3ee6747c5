#include "lstreg/robust_stats.hpp"

#include <algorithm>
#include <cmath>

#include "lstreg/error.hpp"

namespace lstreg {

namespace {

void check_sample(std::span<const double> v, const char* what) {
  if (v.empty()) throw InvalidArgument(std::string(what) + ": empty input");
  for (double x : v)
    if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + ": non-finite entry");
}

// Median of a scratch buffer, reordering it.
double median_inplace(std::vector<double>& buf) {
  const std::size_t n = buf.size();
  const std::size_t mid = n / 2;
  auto mid_it = buf.begin() + static_cast<std::ptrdiff_t>(mid);
  std::nth_element(buf.begin(), mid_it, buf.end());
  double med = *mid_it;
  if (n % 2 == 0) med = 0.5 * (med + *std::max_element(buf.begin(), mid_it));
  return med;
}

CenterScale center_scale_unchecked(std::span<const double> v) {
  std::vector<double> buf(v.begin(), v.end());
  CenterScale cs;
  cs.center = median_inplace(buf);
  for (std::size_t i = 0; i < v.size(); ++i) buf[i] = std::fabs(v[i] - cs.center);
  const double m = median_inplace(buf);
  if (m < kDegenerateMad) {
    cs.scale = 1.0;
    cs.degenerate = true;
  } else {
    cs.scale = m;
  }
  return cs;
}

}  // namespace

double median(std::span<const double> v) {
  check_sample(v, "median");
  std::vector<double> buf(v.begin(), v.end());
  return median_inplace(buf);
}

double mad(std::span<const double> v) {
  check_sample(v, "mad");
  std::vector<double> buf(v.begin(), v.end());
  const double med = median_inplace(buf);
  for (std::size_t i = 0; i < v.size(); ++i) buf[i] = std::fabs(v[i] - med);
  return median_inplace(buf);
}

CenterScale center_scale(std::span<const double> sample) {
  check_sample(sample, "center_scale");
  return center_scale_unchecked(sample);
}

double outlyingness(double x, std::span<const double> sample) {
  const CenterScale cs = center_scale(sample);
  return std::fabs(x - cs.center) / cs.scale;
}

TrimState trim_weights(std::span<const double> residuals, double alpha) {
  if (!(alpha >= 1.0)) throw InvalidArgument("trim_weights: alpha must be >= 1");
  check_sample(residuals, "trim_weights");
  const CenterScale cs = center_scale_unchecked(residuals);
  TrimState t;
  t.center = cs.center;
  t.scale = cs.scale;
  t.degenerate = cs.degenerate;
  t.weights.assign(residuals.size(), 0);
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    if (std::fabs(residuals[i] - cs.center) / cs.scale <= alpha) {
      t.weights[i] = 1;
      t.kept.push_back(static_cast<Index>(i));
    }
  }
  t.k = static_cast<Index>(t.kept.size());
  return t;
}

TrimState trim_weights(const Vector& residuals, double alpha) {
  return trim_weights(std::span<const double>(residuals.data(), static_cast<std::size_t>(residuals.size())), alpha);
}

}  // namespace lstreg
