#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lstreg/kkt.hpp"
#include "lstreg/lars.hpp"
#include "lstreg/model_selection.hpp"
#include "lstreg/objectives.hpp"

namespace lstreg {

struct FitResult {
  Vector beta;  // Dataset layout
  ObjectiveValue objective;
  TrimState trim;
  std::string method;
  std::uint64_t seed = 0;
  int candidates_evaluated = 0;
  std::optional<PenaltySpec> selected_penalty;
  std::optional<KktReport> kkt;
  // Objective after each accepted step (LTS C-steps) or running best after
  // each candidate (AA searches).
  std::vector<double> trace;
  std::vector<std::string> warnings;
};

struct AaConfig {
  int outer_repeats = 50;
  int candidates_per_repeat = 0;  // 0 or anything below p means p
  int concentration_iters = 10;
  int lars_step_cap = kDefaultLarsSteps;
  double alpha = 1.0;
  double gamma = 1.0;
  std::uint64_t seed = 0;

  int candidates_for(Index p) const;
  void validate() const;
};

FitResult fit_ls(const Dataset& data);
// (X'X + lambda I)^{-1} X'y on the sum-of-squares scale; an intercept is left unpenalized.
FitResult fit_ridge(const Dataset& data, double lambda);
// Random elemental starts refined by C-steps; outer_repeats * candidates starts.
FitResult fit_lts(const Dataset& data, Index h, const AaConfig& config);

// Least squares on the given rows. Falls back to a ridge term
// 1e-8 * trace(X'X)/q when the rows do not determine the coefficients.
Vector ls_on_rows(const Dataset& data, std::span<const Index> rows, bool* used_ridge = nullptr);

// One guarded refit on the rows kept at beta. Unpenalized LS when both lambdas
// are zero, otherwise coordinate descent on the kept rows with the full-sample
// (1/n) normalization. The refit is returned only if it lowers the objective.
Vector concentration_step(const Dataset& data, const Vector& beta, double alpha, const PenaltySpec& spec);

// Repeated concentration steps: stops after `iters`, when the kept set repeats
// or when a step is rejected. Appends the objective after each step to `trace`.
Vector concentrate(const Dataset& data, Vector beta, const PenaltySpec& spec, int iters,
                   std::vector<double>* trace = nullptr);

// Concentrated candidates of one repeat (candidates_for(p) of them).
std::vector<Vector> candidate_betas(const Dataset& data, const AaConfig& config, int repeat);
// All repeats, in (repeat, candidate) order.
std::vector<Vector> candidate_betas(const Dataset& data, const AaConfig& config);

FitResult fit_lst(const Dataset& data, double alpha, const AaConfig& config);

// Candidate search for the penalized trimmed estimator: each candidate gets its
// own (lambda*, alpha*) by cross-validation on the rows it keeps, is re-solved
// there by LARS, and both versions are scored by the full penalized objective
// under that pair. The zero vector is the first candidate.
FitResult fit_lst_enet(const Dataset& data, const AaConfig& config, const CvGrid& grid);

FitResult fit_lasso(const Dataset& data, double lambda1);
FitResult fit_enet(const Dataset& data, double lambda1, double lambda2);

// Untrimmed elastic-net objective (1/n)||r||^2 + lambda1 ||b||_1 + lambda2 ||b||^2.
ObjectiveValue enet_objective(const Dataset& data, const Vector& beta, double lambda1, double lambda2);

// TrimState that keeps every row.
TrimState keep_all(Index n);

}  // namespace lstreg
