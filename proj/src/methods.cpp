#include "lstreg/methods.hpp"

#include <algorithm>
#include <cmath>

#include "lstreg/enet_solvers.hpp"
#include "lstreg/error.hpp"

namespace lstreg {

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names = {"ls", "ridge", "lts", "lasso", "lars", "enet", "lst", "lst-enet"};
  return names;
}

bool is_method(const std::string& name) {
  const auto& n = method_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

namespace {

CvGrid base_grid(const MethodOptions& o) {
  CvGrid g;
  g.folds = o.cv_folds;
  g.repeats = o.cv_repeats;
  g.relative = true;
  return g;
}

FitResult lasso_cv(const Dataset& data, const MethodOptions& o) {
  CvGrid g = CvGrid::relative_default(o.grid_size);
  g.alphas = {0.0};
  g.folds = o.cv_folds;
  g.repeats = o.cv_repeats;
  const CvReport rep = cv_select(data, g, derive_seed(o.seed, {0x1A55}), o.aa.lars_step_cap);
  FitResult f = fit_lasso(data, rep.lambda_star);
  f.selected_penalty->lambda0 = rep.lambda0;
  return f;
}

// CV over a geometric grid from lambda0 down to lambda0 * 1e-3, then the path
// evaluated at the chosen lambda.
FitResult lars_cv(const Dataset& data, const MethodOptions& o) {
  CvGrid g = base_grid(o);
  const int m = std::max(2, o.lars_grid_size);
  for (int i = 0; i < m; ++i) g.lambdas.push_back(std::pow(10.0, -3.0 + 3.0 * i / (m - 1)));
  g.alphas = {0.0};
  const CvReport rep = cv_select(data, g, derive_seed(o.seed, {0x1A25}), o.aa.lars_step_cap);
  const LarsPath path = lars_path(make_gram(data), o.aa.lars_step_cap, rep.lambda_star);
  FitResult f;
  f.method = "lars";
  f.beta = lasso_at(path, rep.lambda_star);
  f.objective = enet_objective(data, f.beta, rep.lambda_star, 0.0);
  f.trim = f.objective.trim;
  f.kkt = kkt_check(data, rep.lambda_star, 0.0, f.beta);
  PenaltySpec pen;
  pen.lambda1 = rep.lambda_star;
  pen.lambda0 = rep.lambda0;
  f.selected_penalty = pen;
  f.candidates_evaluated = 1;
  return f;
}

FitResult enet_cv(const Dataset& data, const MethodOptions& o) {
  CvGrid g = CvGrid::relative_default(o.grid_size);
  g.folds = o.cv_folds;
  g.repeats = o.cv_repeats;
  const CvReport rep = cv_select(data, g, derive_seed(o.seed, {0xE7E7}), o.aa.lars_step_cap);
  const auto [l1, l2] = mixing_to_direct(rep.lambda_star, rep.alpha_star);
  FitResult f = fit_enet(data, l1, l2);
  f.selected_penalty->lambda0 = rep.lambda0;
  return f;
}

}  // namespace

FitResult fit_method(const std::string& name, const Dataset& data, const MethodOptions& o) {
  AaConfig aa = o.aa;
  aa.seed = o.seed;
  FitResult f;
  if (name == "ls") {
    f = fit_ls(data);
  } else if (name == "ridge") {
    f = fit_ridge(data, o.ridge_lambda);
  } else if (name == "lts") {
    const Index h = o.lts_h > 0 ? o.lts_h : std::min<Index>(data.n(), (data.n() + data.p() + 1) / 2);
    f = fit_lts(data, h, aa);
  } else if (name == "lasso") {
    f = o.lambda1 >= 0.0 ? fit_lasso(data, o.lambda1) : lasso_cv(data, o);
  } else if (name == "lars") {
    f = lars_cv(data, o);
  } else if (name == "enet") {
    f = (o.lambda1 >= 0.0 && o.lambda2 >= 0.0) ? fit_enet(data, o.lambda1, o.lambda2) : enet_cv(data, o);
  } else if (name == "lst") {
    f = fit_lst(data, aa.alpha, aa);
  } else if (name == "lst-enet") {
    f = fit_lst_enet(data, aa, o.lst_enet_grid);
  } else {
    throw InvalidArgument("unknown method '" + name + "'");
  }
  f.seed = o.seed;
  return f;
}

}  // namespace lstreg
