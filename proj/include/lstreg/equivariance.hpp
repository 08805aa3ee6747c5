#pragma once

#include <string>

#include "lstreg/methods.hpp"

namespace lstreg {

enum class TransformKind { kRegression, kScale, kAffine };

// (X, y) -> (X, y + X b), (X, s y) or (X A, y). Coefficients map to beta + b,
// s beta and A^{-1} beta respectively (the intercept only moves under the
// first two).
struct Transform {
  TransformKind kind = TransformKind::kScale;
  Vector b;
  double s = 1.0;
  Matrix a;

  static Transform regression(Vector b);
  static Transform scale(double s);
  static Transform affine(Matrix a);
  // Random instance: b ~ N(0, I), s ~ U[0.5, 3] with random sign, A = I + N(0, 1/p) entries
  // (redrawn until well conditioned).
  static Transform random(TransformKind kind, const Dataset& data, Rng& rng);

  Dataset apply(const Dataset& data) const;
  Vector map_beta(const Dataset& data, const Vector& beta) const;
  // Factor relating the objectives: s^2 for scale, 1 otherwise.
  double objective_factor() const { return kind == TransformKind::kScale ? s * s : 1.0; }
};

struct EquivarianceReport {
  std::string estimator;
  TransformKind kind = TransformKind::kScale;
  double objective_gap = 0.0;  // |O(Z_T, T beta) - f O(Z, beta)| / max(1, |f O(Z, beta)|)
  bool objective_identity = false;
  bool estimate_checked = false;  // closed-form estimators only
  double estimate_gap = 0.0;      // max |fit(Z_T) - T fit(Z)|
  bool estimate_identity = false;
};

// Fits `estimator` (ls, ridge, lasso, lst or lst-enet; penalties from
// options.lambda1/lambda2/ridge_lambda, trimming level from options.aa.alpha)
// and checks the objective identity at the fitted coefficients.
EquivarianceReport equivariance_check(const std::string& estimator, const Dataset& data, const Transform& t,
                                      const MethodOptions& options, double tol = 1e-8);

}  // namespace lstreg
