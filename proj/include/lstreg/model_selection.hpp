#pragma once

#include <cstdint>
#include <vector>

#include "lstreg/dataset.hpp"
#include "lstreg/rng.hpp"

namespace lstreg {

// Penalty grid in mixing form. With `relative` set, lambdas are multipliers
// of the working data's lambda_max and are resolved per dataset.
struct CvGrid {
  std::vector<double> lambdas;  // increasing
  std::vector<double> alphas;   // mixing weights in [0, 1)
  int folds = 5;
  int repeats = 10;
  bool relative = false;
  bool trimmed_mse = false;  // score folds by the mean of the smallest 80% squared errors

  // lambdas {1/size, ..., 1} x lambda0, alphas {0, 1/size, ..., (size-1)/size}.
  static CvGrid relative_default(int size = 10);
  // Single fixed cell; no cross-validation is needed to select it.
  static CvGrid fixed(double lambda_star, double alpha_star);

  CvGrid resolve(double lambda0) const;
  std::size_t cells() const { return lambdas.size() * alphas.size(); }
  void validate() const;
};

// Absolute grid on (0, lambda0]: lambda0/size steps, alphas over [0, 1).
CvGrid build_grid(double lambda0, int size = 10);

// Disjoint folds covering 0..n-1 with sizes differing by at most one.
std::vector<IndexList> kfold_split(Index n, int k, Rng& rng);

struct CvReport {
  Matrix error_surface;              // lambdas x alphas, averaged over folds and repeats
  std::vector<Matrix> repeat_errors;  // one surface per repeat
  Index lambda_index = 0;
  Index alpha_index = 0;
  double lambda_star = 0.0;
  double alpha_star = 0.0;
  double lambda0 = 0.0;
  CvGrid grid;  // resolved
};

// Repeated k-fold CV of the elastic net (augmentation + LARS) over the grid,
// scored by held-out mean squared prediction error. Repeat r draws its folds
// from derive_seed(seed, {r}). Ties within 1e-12 go to the larger lambda*,
// then the larger alpha*.
CvReport cv_select(const Dataset& data, const CvGrid& grid, std::uint64_t seed, int lars_step_cap = 900);

// Selection on a precomputed surface (exposed for testing the tie rule).
std::pair<Index, Index> choose_cell(const Matrix& surface);

}  // namespace lstreg
