#pragma once

#include <span>
#include <vector>

#include "lstreg/types.hpp"

namespace lstreg {

// Scale below which the residual sample is treated as degenerate (a majority
// of identical values) and the outlyingness scale is forced to one.
inline constexpr double kDegenerateMad = 1e-12;

// Median; even-length inputs return the mean of the two middle order
// statistics. Throws InvalidArgument on empty input or non-finite entries.
double median(std::span<const double> v);

// Raw median absolute deviation about the median (no consistency constant).
double mad(std::span<const double> v);

struct CenterScale {
  double center = 0.0;
  double scale = 1.0;
  bool degenerate = false;
};

// Median and MAD of the sample, with the degenerate-scale rule applied.
CenterScale center_scale(std::span<const double> sample);

// |x - Med(sample)| / scale, the univariate projection outlyingness.
double outlyingness(double x, std::span<const double> sample);

struct TrimState {
  std::vector<unsigned char> weights;  // 0/1 per observation
  IndexList kept;                      // sorted indices with weight 1
  Index k = 0;
  double center = 0.0;
  double scale = 1.0;
  bool degenerate = false;

  bool operator==(const TrimState&) const = default;
};

// Keeps residual i iff outlyingness(r_i, residuals) <= alpha. Requires alpha >= 1.
TrimState trim_weights(std::span<const double> residuals, double alpha);
TrimState trim_weights(const Vector& residuals, double alpha);

}  // namespace lstreg
