#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "lstreg/dataset.hpp"
#include "lstreg/rng.hpp"

namespace testing {

using lstreg::Dataset;
using lstreg::Index;
using lstreg::Matrix;
using lstreg::Rng;
using lstreg::Vector;

inline Matrix gaussian_matrix(Index n, Index p, Rng& rng, double sd = 1.0) {
  std::normal_distribution<double> g(0.0, sd);
  Matrix m(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p; ++j) m(i, j) = g(rng);
  return m;
}

inline Vector gaussian_vector(Index n, Rng& rng, double sd = 1.0) {
  std::normal_distribution<double> g(0.0, sd);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

inline Index uniform_index(Index lo, Index hi, Rng& rng) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

inline double uniform(double lo, double hi, Rng& rng) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// y = X beta + noise_sd * e.
inline Dataset linear_data(Index n, Index p, Rng& rng, double noise_sd = 1.0, Vector* beta_out = nullptr) {
  Matrix x = gaussian_matrix(n, p, rng);
  Vector beta = gaussian_vector(p, rng);
  Vector y = x * beta + gaussian_vector(n, rng, noise_sd);
  if (beta_out) *beta_out = beta;
  return Dataset(std::move(x), std::move(y));
}

inline std::vector<double> to_std(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

// Sort-based order statistics, independent of the library's selection code.
inline double sorted_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double sorted_mad(const std::vector<double>& v) {
  const double m = sorted_median(v);
  std::vector<double> d;
  for (double x : v) d.push_back(std::fabs(x - m));
  return sorted_median(d);
}

// Depth-trimmed mean of squares written out from the definitions.
inline double definitional_lst(const Vector& r, double alpha) {
  const auto v = to_std(r);
  const double med = sorted_median(v);
  double s = sorted_mad(v);
  if (s < 1e-12) s = 1.0;
  double sum = 0.0;
  for (double x : v)
    if (std::fabs(x - med) / s <= alpha) sum += x * x;
  return sum / static_cast<double>(v.size());
}

}  // namespace testing
