#include "lstreg/equivariance.hpp"

#include <cmath>

#include "lstreg/error.hpp"

namespace lstreg {

Transform Transform::regression(Vector b) {
  Transform t;
  t.kind = TransformKind::kRegression;
  t.b = std::move(b);
  return t;
}

Transform Transform::scale(double s) {
  if (s == 0.0 || !std::isfinite(s)) throw InvalidArgument("Transform: scale must be finite and nonzero");
  Transform t;
  t.kind = TransformKind::kScale;
  t.s = s;
  return t;
}

Transform Transform::affine(Matrix a) {
  if (a.rows() != a.cols()) throw InvalidArgument("Transform: affine matrix must be square");
  Transform t;
  t.kind = TransformKind::kAffine;
  t.a = std::move(a);
  return t;
}

Transform Transform::random(TransformKind kind, const Dataset& data, Rng& rng) {
  std::normal_distribution<double> g;
  switch (kind) {
    case TransformKind::kRegression: {
      Vector b(data.coef_size());
      for (Index i = 0; i < b.size(); ++i) b[i] = g(rng);
      return regression(std::move(b));
    }
    case TransformKind::kScale: {
      std::uniform_real_distribution<double> u(0.5, 3.0);
      const double s = u(rng);
      return scale(std::bernoulli_distribution(0.5)(rng) ? s : -s);
    }
    case TransformKind::kAffine: {
      const Index p = data.p();
      for (;;) {
        Matrix a = Matrix::Identity(p, p);
        for (Index i = 0; i < p; ++i)
          for (Index j = 0; j < p; ++j) a(i, j) += g(rng) / std::sqrt(static_cast<double>(p));
        Eigen::JacobiSVD<Matrix> svd(a);
        const auto& sv = svd.singularValues();
        if (sv[p - 1] > 1e-2 * sv[0]) return affine(std::move(a));
      }
    }
  }
  throw InvalidArgument("Transform: unknown kind");
}

Dataset Transform::apply(const Dataset& data) const {
  switch (kind) {
    case TransformKind::kRegression:
      check_coef(data, b, "Transform::apply");
      return Dataset(data.x(), data.y() + data.predict(b), data.intercept());
    case TransformKind::kScale:
      return Dataset(data.x(), s * data.y(), data.intercept());
    case TransformKind::kAffine:
      if (a.rows() != data.p()) throw InvalidArgument("Transform::apply: affine matrix has wrong size");
      return Dataset(data.x() * a, data.y(), data.intercept());
  }
  throw InvalidArgument("Transform: unknown kind");
}

Vector Transform::map_beta(const Dataset& data, const Vector& beta) const {
  check_coef(data, beta, "Transform::map_beta");
  switch (kind) {
    case TransformKind::kRegression:
      return beta + b;
    case TransformKind::kScale:
      return s * beta;
    case TransformKind::kAffine: {
      Vector out = beta;
      out.tail(data.p()) = a.partialPivLu().solve(Vector(beta.tail(data.p())));
      return out;
    }
  }
  throw InvalidArgument("Transform: unknown kind");
}

namespace {

double objective_of(const std::string& est, const Dataset& d, const Vector& beta, const MethodOptions& o) {
  if (est == "ls") return residuals(d, beta).squaredNorm();
  if (est == "ridge") return residuals(d, beta).squaredNorm() + o.ridge_lambda * penalized_part(d, beta).squaredNorm();
  if (est == "lasso") return enet_objective(d, beta, std::max(o.lambda1, 0.0), 0.0).total;
  if (est == "lst") return lst_objective(d, beta, o.aa.alpha).total;
  if (est == "lst-enet") {
    PenaltySpec pen;
    pen.lambda1 = std::max(o.lambda1, 0.0);
    pen.lambda2 = std::max(o.lambda2, 0.0);
    pen.alpha = o.aa.alpha;
    return lst_enet_objective(d, beta, pen).total;
  }
  throw InvalidArgument("equivariance_check: unsupported estimator '" + est + "'");
}

FitResult fit_for(const std::string& est, const Dataset& d, const MethodOptions& o) {
  if (est == "lst-enet") {
    AaConfig aa = o.aa;
    aa.seed = o.seed;
    const auto mix = reparam_mixing(std::max(o.lambda1, 0.0), std::max(o.lambda2, 0.0));
    return fit_lst_enet(d, aa, CvGrid::fixed(mix.lambda_star, mix.alpha_star));
  }
  if (est == "lasso") {
    MethodOptions oo = o;
    oo.lambda1 = std::max(o.lambda1, 0.0);
    return fit_method("lasso", d, oo);
  }
  return fit_method(est, d, o);
}

}  // namespace

EquivarianceReport equivariance_check(const std::string& est, const Dataset& data, const Transform& t,
                                      const MethodOptions& o, double tol) {
  EquivarianceReport rep;
  rep.estimator = est;
  rep.kind = t.kind;
  const Dataset moved = t.apply(data);
  const FitResult fit = fit_for(est, data, o);
  const double base = t.objective_factor() * objective_of(est, data, fit.beta, o);
  const double there = objective_of(est, moved, t.map_beta(data, fit.beta), o);
  rep.objective_gap = std::fabs(there - base) / std::max(1.0, std::fabs(base));
  rep.objective_identity = rep.objective_gap <= tol;
  if (est == "ls" || est == "ridge") {
    rep.estimate_checked = true;
    const FitResult refit = fit_for(est, moved, o);
    rep.estimate_gap = (refit.beta - t.map_beta(data, fit.beta)).cwiseAbs().maxCoeff();
    rep.estimate_identity = rep.estimate_gap <= tol * std::max(1.0, refit.beta.cwiseAbs().maxCoeff());
  }
  return rep;
}

}  // namespace lstreg
