#pragma once

#include "lstreg/dataset.hpp"
#include "lstreg/robust_stats.hpp"

namespace lstreg {

// Penalty parameters in direct form. The mixing form (lambda_star, alpha_star)
// is derived on demand; see reparam_mixing.
struct PenaltySpec {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gamma = 1.0;  // exponent of the first penalty
  double alpha = 1.0;  // trimming level
  double lambda0 = 0.0;  // grid ceiling recorded by model selection, informational

  // Direct form from (lambda*, alpha*).
  static PenaltySpec from_mixing(double lambda_star, double alpha_star, double alpha = 1.0,
                                 double gamma = 1.0);
  double lambda_star() const { return lambda1 + lambda2; }
  double alpha_star() const;

  // Throws InvalidArgument on negative lambdas, gamma < 1 or alpha < 1.
  void validate() const;
  // Strict convexity of the penalty within every trimming region
  // (lambda1 > 0 and gamma > 1, or lambda2 > 0), which makes the minimizer unique.
  bool guarantees_uniqueness() const;
};

struct ObjectiveValue {
  double total = 0.0;
  double loss_part = 0.0;
  double penalty_part = 0.0;
  TrimState trim;
};

Vector residuals(const Dataset& data, const Vector& beta);

// (1/n) sum_i r_i^2 w_i with depth-based weights.
ObjectiveValue lst_objective(const Dataset& data, const Vector& beta, double alpha);

// Sum of the h smallest squared residuals (no 1/n factor).
double lts_objective(const Dataset& data, const Vector& beta, Index h);

// LST loss plus lambda1 sum|b_j|^gamma + lambda2 sum b_j^2 (intercept excluded).
ObjectiveValue lst_enet_objective(const Dataset& data, const Vector& beta, const PenaltySpec& spec);

// sum |r_i| + lambda sum |b_j|, evaluation only.
double lad_lasso_objective(const Dataset& data, const Vector& beta, double lambda);

// Augmented data turning the ridge term into extra least-squares rows.
//   X* = s^{-1} [X; sqrt(n lambda2) I_p],  y* = [y; 0_p],  s = sqrt(1 + lambda2)
// so that beta* = s beta and lambda1* = lambda1 / s reproduce the elastic-net
// objective under the (1/n) loss with n = number of original rows.
struct AugmentedData {
  Dataset data;
  double scale = 1.0;  // s
  Index original_rows = 0;
};
AugmentedData reparam_augment(const Dataset& data, double lambda2);

// Objective on augmented data: (1/n)||y* - X* b*||^2_{D*} + lambda1* sum|b*_j|^gamma,
// where D* trims the first n rows by depth and always keeps the appended rows.
ObjectiveValue augmented_objective(const AugmentedData& aug, const Vector& beta_star, double lambda1_star,
                                   double alpha, double gamma = 1.0);

struct MixingForm {
  double lambda_star = 0.0;
  double alpha_star = 0.0;
};
MixingForm reparam_mixing(double lambda1, double lambda2);
// Inverse of reparam_mixing: returns (lambda1, lambda2).
std::pair<double, double> mixing_to_direct(double lambda_star, double alpha_star);

// max_j |2 y' x_j| / n over the predictor columns.
double lambda_max(const Dataset& data);

}  // namespace lstreg
