#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lstreg/estimators.hpp"

namespace lstreg {

// Settings for fitting any estimator by name. Penalties left negative are
// chosen by cross-validation.
struct MethodOptions {
  AaConfig aa;
  CvGrid lst_enet_grid = CvGrid::relative_default(10);
  int cv_folds = 5;
  int cv_repeats = 10;
  int grid_size = 10;       // lasso / enet grids
  int lars_grid_size = 50;  // geometric lambda grid along the LARS path
  double lambda1 = -1.0;    // lasso / enet
  double lambda2 = -1.0;    // enet
  double ridge_lambda = 1.0;
  Index lts_h = 0;  // 0 means floor((n + p + 1) / 2)
  std::uint64_t seed = 0;
};

// ls, ridge, lts, lasso, lars, enet, lst, lst-enet.
const std::vector<std::string>& method_names();
bool is_method(const std::string& name);

FitResult fit_method(const std::string& name, const Dataset& data, const MethodOptions& options);

}  // namespace lstreg
