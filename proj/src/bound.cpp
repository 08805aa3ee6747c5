#include "lstreg/bound.hpp"

#include <algorithm>
#include <cmath>

#include "lstreg/error.hpp"

namespace lstreg {

double bound_q1(Index n, Index p, double c_x, double sigma, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("bound_q1: delta must lie in (0, 1)");
  return 4.0 * c_x * sigma / static_cast<double>(n) *
         (2.0 * std::sqrt(static_cast<double>(p)) + std::sqrt(2.0 * std::log(2.0 / delta)));
}

double bound_q2(Index k0, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("bound_q2: delta must lie in (0, 1)");
  const double l = std::log(2.0 / delta);
  return 2.0 * std::sqrt(l) * (std::sqrt(static_cast<double>(k0)) + std::sqrt(l));
}

BoundReport bound_check(const Dataset& data, const Vector& beta0, const FitResult& fit, double delta, double sigma) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("bound_check: delta must lie in (0, 1)");
  if (!(sigma > 0.0)) throw InvalidArgument("bound_check: sigma must be > 0");
  if (data.intercept()) throw InvalidArgument("bound_check: intercept must be off");
  check_coef(data, beta0, "bound_check");
  check_coef(data, fit.beta, "bound_check");
  const PenaltySpec pen = fit.selected_penalty.value_or(PenaltySpec{});
  if (pen.gamma != 1.0) throw InvalidArgument("bound_check: the bound needs gamma = 1");

  const Index n = data.n(), p = data.p();
  BoundReport b;
  b.delta = delta;
  b.sigma = sigma;
  b.lambda1 = pen.lambda1;
  b.lambda2 = pen.lambda2;
  b.c_x = data.x().colwise().norm().maxCoeff();
  b.q1 = bound_q1(n, p, b.c_x, sigma, delta);
  b.lambda1_at_least_q1 = pen.lambda1 >= b.q1;

  const TrimState t0 = trim_weights(residuals(data, beta0), pen.alpha);
  const TrimState th = trim_weights(residuals(data, fit.beta), pen.alpha);
  b.q2 = bound_q2(t0.k, delta);
  Index common = 0;
  for (Index i : t0.kept) common += th.weights[static_cast<std::size_t>(i)];
  b.n_d = t0.k - common;

  const Vector fitdiff = data.x() * (fit.beta - beta0);
  double s = 0.0;
  for (Index i : th.kept) s += fitdiff[i] * fitdiff[i];
  b.lhs = s / static_cast<double>(n);

  const double head = 2.0 * pen.lambda1 * std::sqrt(static_cast<double>(p)) * beta0.norm() +
                      pen.lambda2 * beta0.squaredNorm();
  b.rhs = head + sigma / static_cast<double>(n) * (b.q2 + static_cast<double>(b.n_d));
  b.rhs_alternate = head + 2.0 * sigma * sigma * b.q2 / static_cast<double>(n);
  b.holds = b.lhs <= b.rhs;
  b.holds_alternate = b.lhs <= b.rhs_alternate;
  return b;
}

}  // namespace lstreg
