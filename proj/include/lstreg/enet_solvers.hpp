#pragma once

#include "lstreg/lars.hpp"

namespace lstreg {

struct ShootingResult {
  Vector beta;  // Dataset layout
  int sweeps = 0;
  bool converged = false;
  double max_change = 0.0;
};

// Cyclic coordinate descent (shooting) for
//   (1/N)||y - X b||^2 + lambda1 ||b||_1 + lambda2 ||b||^2.
// Converged when the largest coordinate change in a sweep drops below tol.
ShootingResult shooting_enet(const GramProblem& prob, double lambda1, double lambda2, double tol = 1e-10,
                             int max_sweeps = 100000, const Vector* warm_start = nullptr);
ShootingResult shooting_enet(const Dataset& data, double lambda1, double lambda2, double tol = 1e-10,
                             int max_sweeps = 100000);

// Elastic-net solution through the ridge augmentation and a LARS path run down
// to the target lambda1. Falls back to shooting when the path cannot reach the
// target (step cap or singular active set). Returns Dataset layout.
Vector solve_enet(const GramProblem& prob, double lambda1, double lambda2, int max_steps = kDefaultLarsSteps);

// Augmented sufficient statistics: gram* = (gram + N lambda2 I)/(1 + lambda2),
// xty* = xty / sqrt(1 + lambda2). Solutions map back by beta = beta*/sqrt(1+lambda2).
GramProblem augment_gram(const GramProblem& prob, double lambda2);

}  // namespace lstreg
