#pragma once

#include "lstreg/estimators.hpp"

namespace lstreg {

struct BoundReport {
  double lhs = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  Index n_d = 0;
  double c_x = 0.0;
  double delta = 0.0;
  double sigma = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  bool lambda1_at_least_q1 = false;
  double rhs = 0.0;
  // Same first two terms with 2 sigma^2 q2 / n in place of (sigma/n)(q2 + N_d).
  double rhs_alternate = 0.0;
  bool holds = false;
  bool holds_alternate = false;
};

// q1 = (4 c_x sigma / n)(2 sqrt(p) + sqrt(2 log(2/delta)))
double bound_q1(Index n, Index p, double c_x, double sigma, double delta);
// q2 = 2 sqrt(log(2/delta)) (sqrt(k0) + sqrt(log(2/delta))), k0 = |I(beta0)|
double bound_q2(Index k0, double delta);

// Prediction-error bound for a penalized trimmed fit (gamma = 1):
//   (1/n) sum_{i in I(beta_hat)} (x_i'(beta_hat - beta0))^2
//     <= 2 lambda1 sqrt(p) ||beta0|| + lambda2 ||beta0||^2 + (sigma/n)(q2 + N_d)
// with N_d = |I(beta0)| - |I(beta0) & I(beta_hat)|. Penalties and the trimming
// level come from fit.selected_penalty. beta0 holds the slopes only.
BoundReport bound_check(const Dataset& data, const Vector& beta0, const FitResult& fit, double delta, double sigma);

}  // namespace lstreg
