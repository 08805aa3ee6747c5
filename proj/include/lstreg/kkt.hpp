#pragma once

#include "lstreg/dataset.hpp"

namespace lstreg {

struct KktReport {
  bool ok = false;
  double max_violation = 0.0;
};

// Subgradient optimality of beta for
//   (1/n)||y - X b||^2 + lambda1 ||b||_1 + lambda2 ||b||^2
// (intercept, if any, must have zero gradient). For active j the violation is
// |-2 x_j'r/n + 2 lambda2 b_j + lambda1 sign(b_j)|; for inactive j it is
// max(0, |2 x_j'r/n| - lambda1).
KktReport kkt_check(const Dataset& data, double lambda1, double lambda2, const Vector& beta, double tol = 1e-8);

}  // namespace lstreg
