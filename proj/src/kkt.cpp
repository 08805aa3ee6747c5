#include "lstreg/kkt.hpp"

#include <cmath>

#include "lstreg/error.hpp"
#include "lstreg/objectives.hpp"

namespace lstreg {

KktReport kkt_check(const Dataset& data, double lambda1, double lambda2, const Vector& beta, double tol) {
  const Vector r = residuals(data, beta);
  const double n = static_cast<double>(data.n());
  const Vector corr = (2.0 / n) * (data.x().transpose() * r);
  const Vector b = penalized_part(data, beta);
  double worst = 0.0;
  if (data.intercept()) worst = std::fabs(2.0 * r.sum() / n);
  for (Index j = 0; j < data.p(); ++j) {
    double v;
    if (b[j] != 0.0)
      v = std::fabs(-corr[j] + 2.0 * lambda2 * b[j] + lambda1 * (b[j] > 0.0 ? 1.0 : -1.0));
    else
      v = std::max(0.0, std::fabs(corr[j]) - lambda1);
    worst = std::max(worst, v);
  }
  return KktReport{worst <= tol, worst};
}

}  // namespace lstreg
