#include "lstreg/objectives.hpp"

#include <algorithm>
#include <cmath>

#include "lstreg/error.hpp"

namespace lstreg {

PenaltySpec PenaltySpec::from_mixing(double lambda_star, double alpha_star, double alpha, double gamma) {
  const auto [l1, l2] = mixing_to_direct(lambda_star, alpha_star);
  PenaltySpec s;
  s.lambda1 = l1;
  s.lambda2 = l2;
  s.alpha = alpha;
  s.gamma = gamma;
  return s;
}

double PenaltySpec::alpha_star() const {
  const double t = lambda1 + lambda2;
  return t > 0.0 ? lambda2 / t : 0.0;
}

void PenaltySpec::validate() const {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) throw InvalidArgument("penalty: lambdas must be >= 0");
  if (!(gamma >= 1.0)) throw InvalidArgument("penalty: gamma must be >= 1");
  if (!(alpha >= 1.0)) throw InvalidArgument("penalty: alpha must be >= 1");
}

bool PenaltySpec::guarantees_uniqueness() const {
  return (lambda1 > 0.0 && gamma > 1.0) || lambda2 > 0.0;
}

Vector residuals(const Dataset& data, const Vector& beta) {
  check_coef(data, beta, "residuals");
  return data.y() - data.predict(beta);
}

namespace {

double kept_ssr(const Vector& r, const TrimState& t) {
  double s = 0.0;
  for (Index i : t.kept) s += r[i] * r[i];
  return s;
}

double penalty_value(const Vector& b, const PenaltySpec& spec) {
  double l_gamma = 0.0;
  if (spec.lambda1 != 0.0) {
    if (spec.gamma == 1.0)
      l_gamma = b.lpNorm<1>();
    else
      l_gamma = b.array().abs().pow(spec.gamma).sum();
  }
  return spec.lambda1 * l_gamma + spec.lambda2 * b.squaredNorm();
}

}  // namespace

ObjectiveValue lst_objective(const Dataset& data, const Vector& beta, double alpha) {
  const Vector r = residuals(data, beta);
  ObjectiveValue v;
  v.trim = trim_weights(r, alpha);
  v.loss_part = kept_ssr(r, v.trim) / static_cast<double>(data.n());
  v.total = v.loss_part;
  return v;
}

double lts_objective(const Dataset& data, const Vector& beta, Index h) {
  const Index n = data.n();
  if (h < (n + 1) / 2 || h > n) throw InvalidArgument("lts_objective: h must lie in [ceil(n/2), n]");
  Vector r2 = residuals(data, beta).array().square();
  std::vector<double> v(r2.data(), r2.data() + n);
  std::nth_element(v.begin(), v.begin() + (h - 1), v.end());
  double s = 0.0;
  std::sort(v.begin(), v.begin() + h);
  for (Index i = 0; i < h; ++i) s += v[static_cast<std::size_t>(i)];
  return s;
}

ObjectiveValue lst_enet_objective(const Dataset& data, const Vector& beta, const PenaltySpec& spec) {
  spec.validate();
  ObjectiveValue v = lst_objective(data, beta, spec.alpha);
  v.penalty_part = penalty_value(penalized_part(data, beta), spec);
  v.total = v.loss_part + v.penalty_part;
  return v;
}

double lad_lasso_objective(const Dataset& data, const Vector& beta, double lambda) {
  return residuals(data, beta).lpNorm<1>() + lambda * penalized_part(data, beta).lpNorm<1>();
}

AugmentedData reparam_augment(const Dataset& data, double lambda2) {
  if (!(lambda2 > 0.0)) throw InvalidArgument("reparam_augment: lambda2 must be > 0");
  if (data.intercept()) throw InvalidArgument("reparam_augment: intercept must be off");
  const Index n = data.n(), p = data.p();
  const double s = std::sqrt(1.0 + lambda2);
  Matrix xs(n + p, p);
  xs.topRows(n) = data.x() / s;
  xs.bottomRows(p) = Matrix::Identity(p, p) * (std::sqrt(static_cast<double>(n) * lambda2) / s);
  Vector ys = Vector::Zero(n + p);
  ys.head(n) = data.y();
  return AugmentedData{Dataset(std::move(xs), std::move(ys), false), s, n};
}

ObjectiveValue augmented_objective(const AugmentedData& aug, const Vector& beta_star, double lambda1_star,
                                   double alpha, double gamma) {
  const Index n = aug.original_rows;
  const Vector r = residuals(aug.data, beta_star);
  ObjectiveValue v;
  v.trim = trim_weights(std::span<const double>(r.data(), static_cast<std::size_t>(n)), alpha);
  double ssr = kept_ssr(r, v.trim) + r.tail(r.size() - n).squaredNorm();
  v.loss_part = ssr / static_cast<double>(n);
  PenaltySpec pen;
  pen.lambda1 = lambda1_star;
  pen.gamma = gamma;
  v.penalty_part = penalty_value(beta_star, pen);
  v.total = v.loss_part + v.penalty_part;
  return v;
}

MixingForm reparam_mixing(double lambda1, double lambda2) {
  const double t = lambda1 + lambda2;
  if (!(t > 0.0)) throw InvalidArgument("reparam_mixing: lambda1 + lambda2 must be > 0");
  return MixingForm{t, lambda2 / t};
}

std::pair<double, double> mixing_to_direct(double lambda_star, double alpha_star) {
  if (!(lambda_star >= 0.0)) throw InvalidArgument("mixing form: lambda* must be >= 0");
  // alpha* = 1 (pure ridge) is outside the search region but converts fine.
  if (!(alpha_star >= 0.0 && alpha_star <= 1.0)) throw InvalidArgument("mixing form: alpha* must lie in [0, 1]");
  return {lambda_star * (1.0 - alpha_star), lambda_star * alpha_star};
}

double lambda_max(const Dataset& data) {
  if (data.intercept()) {
    // Entry threshold with an unpenalized intercept uses centered columns.
    const Matrix xc = data.x().rowwise() - data.x().colwise().mean();
    const Vector c = xc.transpose() * (data.y().array() - data.y().mean()).matrix();
    return 2.0 * c.cwiseAbs().maxCoeff() / static_cast<double>(data.n());
  }
  const Vector c = data.x().transpose() * data.y();
  return 2.0 * c.cwiseAbs().maxCoeff() / static_cast<double>(data.n());
}

}  // namespace lstreg
