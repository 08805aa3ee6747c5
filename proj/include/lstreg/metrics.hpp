#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lstreg/dataset.hpp"

namespace lstreg {

// Squared Euclidean distance.
double l2_error(const Vector& beta0, const Vector& beta_hat);
// Fraction of the zero coordinates of beta0 that are also zero in beta_hat.
// |beta_hat_i| <= zero_threshold counts as zero (default: exact zero).
// Throws UndefinedMetric when beta0 has no zero coordinate.
double tsdr(const Vector& beta0, const Vector& beta_hat, double zero_threshold = 0.0);
// Fraction of the nonzero coordinates of beta0 that beta_hat sets to zero.
// Throws UndefinedMetric when beta0 is all zero.
double fsdr(const Vector& beta0, const Vector& beta_hat, double zero_threshold = 0.0);
// Root mean squared prediction error on the test rows.
double rmse(const Dataset& test, const Vector& beta_hat);
// (1/R) sum ||b_i - mean||^2 over R >= 2 estimates.
double emse(const std::vector<Vector>& estimates);

struct MetricSet {
  double l2_error = 0.0;
  std::optional<double> tsdr;
  std::optional<double> fsdr;
  std::optional<double> rmse;
};

// beta_hat in Dataset layout is accepted; a leading intercept is dropped when
// it is one entry longer than beta0.
MetricSet compute_metrics(const Vector& beta0, const Vector& beta_hat, const Dataset* test = nullptr,
                          double zero_threshold = 0.0);

struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

enum class RbpKind { kLst, kPenalized };

// Replacement breakdown point, unreduced over denominator n.
//   kLst, p = 1:  floor((n+1)/2)/n
//   kLst, p > 1:  (floor(n/2) - p + 2)/n
//   kPenalized:   (n - k + 1)/n with k the guaranteed kept count
Rational theoretical_rbp(long long n, long long p, RbpKind kind, std::optional<long long> k = std::nullopt);

}  // namespace lstreg
