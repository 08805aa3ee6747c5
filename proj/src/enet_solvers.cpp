#include "lstreg/enet_solvers.hpp"

#include <cmath>

#include "lstreg/error.hpp"

namespace lstreg {

ShootingResult shooting_enet(const GramProblem& prob, double lambda1, double lambda2, double tol, int max_sweeps,
                             const Vector* warm_start) {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) throw InvalidArgument("shooting_enet: lambdas must be >= 0");
  const Index p = prob.p();
  const double n = prob.n_loss;
  const double thresh = 0.5 * n * lambda1;
  const double ridge = n * lambda2;

  Vector beta = Vector::Zero(p);
  if (warm_start) {
    if (warm_start->size() != p) throw InvalidArgument("shooting_enet: warm start has wrong length");
    beta = *warm_start;
  }
  // grad = xty - gram * beta
  Vector grad = prob.xty - prob.gram * beta;

  ShootingResult res;
  for (res.sweeps = 1; res.sweeps <= max_sweeps; ++res.sweeps) {
    double max_change = 0.0;
    for (Index j = 0; j < p; ++j) {
      const double gjj = prob.gram(j, j);
      const double denom = gjj + ridge;
      const double rho = grad[j] + gjj * beta[j];
      double next = 0.0;
      if (denom > 0.0) {
        if (rho > thresh)
          next = (rho - thresh) / denom;
        else if (rho < -thresh)
          next = (rho + thresh) / denom;
      }
      const double delta = next - beta[j];
      if (delta != 0.0) {
        grad.noalias() -= prob.gram.col(j) * delta;
        beta[j] = next;
        max_change = std::max(max_change, std::fabs(delta));
      }
    }
    res.max_change = max_change;
    if (max_change < tol) {
      res.converged = true;
      break;
    }
  }
  if (res.sweeps > max_sweeps) res.sweeps = max_sweeps;
  res.beta = prob.expand(beta);
  return res;
}

ShootingResult shooting_enet(const Dataset& data, double lambda1, double lambda2, double tol, int max_sweeps) {
  return shooting_enet(make_gram(data), lambda1, lambda2, tol, max_sweeps);
}

GramProblem augment_gram(const GramProblem& prob, double lambda2) {
  GramProblem aug = prob;
  if (lambda2 == 0.0) return aug;
  const double s2 = 1.0 + lambda2;
  aug.gram.diagonal().array() += prob.n_loss * lambda2;
  aug.gram /= s2;
  aug.xty /= std::sqrt(s2);
  return aug;
}

Vector solve_enet(const GramProblem& prob, double lambda1, double lambda2, int max_steps) {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) throw InvalidArgument("solve_enet: lambdas must be >= 0");
  const Index p = prob.p();
  if (lambda1 == 0.0) {
    Matrix a = prob.gram;
    a.diagonal().array() += prob.n_loss * lambda2;
    Eigen::LDLT<Matrix> ldlt(a);
    const double dmax = a.diagonal().cwiseAbs().maxCoeff();
    if (ldlt.info() != Eigen::Success || !(dmax > 0.0) || ldlt.vectorD().cwiseAbs().minCoeff() <= 1e-12 * dmax)
      throw SingularDesign("solve_enet: unpenalized problem is rank deficient");
    return prob.expand(ldlt.solve(prob.xty));
  }
  const double s = std::sqrt(1.0 + lambda2);
  const GramProblem aug = augment_gram(prob, lambda2);
  const double target = lambda1 / s;
  const LarsPath path = lars_path(aug, max_steps, target);
  const LarsKnot& last = path.knots.back();
  if (last.lambda <= target) {
    Vector slopes = (prob.intercept ? Vector(lasso_at(path, target).tail(p)) : lasso_at(path, target)) / s;
    return prob.expand(slopes);
  }
  const ShootingResult sh = shooting_enet(prob, lambda1, lambda2);
  return sh.beta;
}

}  // namespace lstreg
