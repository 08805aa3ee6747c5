#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lstreg/dataset.hpp"

namespace lstreg {

using Estimator = std::function<Vector(const Dataset&)>;

struct BreakdownTrace {
  Index m = 0;
  std::vector<double> deltas;
  std::vector<double> norms;  // ||beta_hat||_2 per delta; NaN where the fit failed
  double clean_norm = 0.0;
  std::string verdict;  // "broken", "bounded" or "inconclusive"
  std::vector<std::string> failures;
};

// Row of the adversarial sample: x = (delta, 0, ..., 0), y = kappa * delta with kappa = delta.
void place_adversarial_point(Matrix& x, Vector& y, Index row, double delta);

// Replaces rows 0..m-1 by the adversarial point for each delta and refits.
// "broken": over the last three deltas the norm grows by at least the factor
// the deltas grow by (x10 per decade), or a fit failed. "bounded": every norm
// stays within 10 x the clean norm. Otherwise "inconclusive".
BreakdownTrace breakdown_probe(const Dataset& data, const Estimator& estimator, Index m,
                               const std::vector<double>& deltas);

}  // namespace lstreg
