#include "lstreg/breakdown.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lstreg/error.hpp"

namespace lstreg {

void place_adversarial_point(Matrix& x, Vector& y, Index row, double delta) {
  x.row(row).setZero();
  x(row, 0) = delta;
  y[row] = delta * delta;
}

BreakdownTrace breakdown_probe(const Dataset& data, const Estimator& estimator, Index m,
                               const std::vector<double>& deltas) {
  if (m < 0 || m > data.n()) throw InvalidArgument("breakdown_probe: m must lie in [0, n]");
  if (deltas.empty()) throw InvalidArgument("breakdown_probe: no deltas");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (!(deltas[i] > deltas[i - 1])) throw InvalidArgument("breakdown_probe: deltas must be strictly increasing");

  BreakdownTrace tr;
  tr.m = m;
  tr.deltas = deltas;
  tr.clean_norm = estimator(data).norm();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (double d : deltas) {
    if (m == 0) {
      tr.norms.push_back(tr.clean_norm);
      continue;
    }
    Matrix x = data.x();
    Vector y = data.y();
    for (Index i = 0; i < m; ++i) place_adversarial_point(x, y, i, d);
    try {
      const Vector b = estimator(Dataset(std::move(x), std::move(y), data.intercept()));
      const double nb = b.norm();
      if (!std::isfinite(nb)) throw std::runtime_error("non-finite estimate");
      tr.norms.push_back(nb);
    } catch (const std::exception& e) {
      tr.norms.push_back(nan);
      tr.failures.push_back("delta " + std::to_string(d) + ": " + e.what());
    }
  }

  bool broken = !tr.failures.empty();
  const std::size_t k = deltas.size();
  if (!broken && k >= 3) {
    broken = true;
    for (std::size_t i = k - 2; i < k; ++i) {
      const double need = deltas[i] / deltas[i - 1];
      // Small relative slack: the untouched coordinates keep the ratio a hair below the exact factor.
      if (!(tr.norms[i] >= need * tr.norms[i - 1] * (1.0 - 1e-6))) broken = false;
    }
  }
  const double max_norm = *std::max_element(tr.norms.begin(), tr.norms.end());
  if (broken)
    tr.verdict = "broken";
  else if (max_norm <= 10.0 * tr.clean_norm)
    tr.verdict = "bounded";
  else
    tr.verdict = "inconclusive";
  return tr;
}

}  // namespace lstreg
