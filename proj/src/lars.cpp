#include "lstreg/lars.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lstreg/error.hpp"

namespace lstreg {

Vector GramProblem::expand(const Vector& slopes) const {
  if (!intercept) return slopes;
  Vector b(slopes.size() + 1);
  b[0] = y_mean - x_mean.dot(slopes);
  b.tail(slopes.size()) = slopes;
  return b;
}

GramProblem make_gram(const Dataset& data, std::span<const Index> rows, double n_loss) {
  GramProblem g;
  g.intercept = data.intercept();
  Matrix x;
  Vector y;
  if (rows.empty()) {
    x = data.x();
    y = data.y();
  } else {
    x.resize(static_cast<Index>(rows.size()), data.p());
    y.resize(static_cast<Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      x.row(static_cast<Index>(r)) = data.x().row(rows[r]);
      y[static_cast<Index>(r)] = data.y()[rows[r]];
    }
  }
  if (g.intercept) {
    g.x_mean = x.colwise().mean().transpose();
    g.y_mean = y.mean();
    x.rowwise() -= g.x_mean.transpose();
    y.array() -= g.y_mean;
  }
  g.gram = x.transpose() * x;
  g.xty = x.transpose() * y;
  g.yty = y.squaredNorm();
  g.n_loss = n_loss > 0.0 ? n_loss : static_cast<double>(x.rows());
  return g;
}

namespace {

// Solution of the lasso KKT system for a fixed active set and sign vector:
// (2/N) G_AA b_A = (2/N) xty_A - lambda s_A.
bool solve_active(const GramProblem& prob, const IndexList& active, const Vector& signs, double lambda,
                  Vector& beta_active, Vector& direction) {
  const Index k = static_cast<Index>(active.size());
  Matrix gaa(k, k);
  Vector ba(k);
  for (Index a = 0; a < k; ++a) {
    ba[a] = prob.xty[active[a]];
    for (Index c = 0; c < k; ++c) gaa(a, c) = prob.gram(active[a], active[c]);
  }
  Eigen::LDLT<Matrix> ldlt(gaa);
  if (ldlt.info() != Eigen::Success) return false;
  const Vector d = ldlt.vectorD().cwiseAbs();
  const double dmax = gaa.diagonal().cwiseAbs().maxCoeff();
  if (!(dmax > 0.0) || d.minCoeff() <= 1e-10 * dmax) return false;
  const double half_n = 0.5 * prob.n_loss;
  direction = ldlt.solve(signs) * half_n;  // d b_A / d(-lambda)
  beta_active = ldlt.solve(ba) - lambda * direction;
  return direction.allFinite() && beta_active.allFinite();
}

}  // namespace

LarsPath lars_path(const GramProblem& prob, int max_steps, double lambda_stop) {
  if (max_steps < 0) throw InvalidArgument("lars_path: max_steps must be >= 0");
  if (!prob.gram.allFinite() || !prob.xty.allFinite()) throw InvalidArgument("lars_path: non-finite data");
  const Index p = prob.p();
  const double two_over_n = 2.0 / prob.n_loss;

  LarsPath path;
  Vector beta = Vector::Zero(p);
  Vector corr = two_over_n * prob.xty;
  double lambda = corr.cwiseAbs().maxCoeff();
  path.lambda0 = lambda;

  IndexList active;
  Vector signs;
  std::vector<char> is_active(static_cast<std::size_t>(p), 0);
  const double tie_tol = 1e-12 * std::max(lambda, 1.0);

  auto add_variable = [&](Index j) {
    active.push_back(j);
    is_active[static_cast<std::size_t>(j)] = 1;
    signs.conservativeResize(static_cast<Index>(active.size()));
    signs[signs.size() - 1] = corr[j] >= 0.0 ? 1.0 : -1.0;
  };

  if (lambda > 0.0) {
    Index first = 0;
    for (Index j = 0; j < p; ++j)
      if (std::fabs(corr[j]) >= lambda - tie_tol) {
        first = j;
        break;
      }
    add_variable(first);
  }
  path.knots.push_back({lambda, prob.expand(beta), active});
  if (!(lambda > 0.0)) return path;

  const double inf = std::numeric_limits<double>::infinity();
  bool finished = false;
  while (path.steps_taken < max_steps) {
    Vector beta_a, dir;
    if (!solve_active(prob, active, signs, lambda, beta_a, dir)) {
      // Singular active Gram matrix: drop the newest column and stop.
      is_active[static_cast<std::size_t>(active.back())] = 0;
      active.pop_back();
      path.knots.back().active = active;
      path.truncated = true;
      return path;
    }
    // Correlation slopes a_j = (2/N) G_jA dir for inactive variables.
    Vector slope = Vector::Zero(p);
    for (std::size_t a = 0; a < active.size(); ++a)
      slope.noalias() += prob.gram.col(active[a]) * (two_over_n * dir[static_cast<Index>(a)]);

    double step = lambda;  // reaching lambda = 0
    enum class Event { kZero, kStop, kAdd, kDrop } event = Event::kZero;
    Index who = -1;
    if (lambda_stop > 0.0 && lambda - lambda_stop < step) {
      step = std::max(lambda - lambda_stop, 0.0);
      event = Event::kStop;
    }
    for (Index j = 0; j < p; ++j) {
      if (is_active[static_cast<std::size_t>(j)]) continue;
      double t = inf;
      if (1.0 - slope[j] > 1e-12) t = std::min(t, (lambda - corr[j]) / (1.0 - slope[j]));
      if (1.0 + slope[j] > 1e-12) t = std::min(t, (lambda + corr[j]) / (1.0 + slope[j]));
      t = std::max(t, 0.0);
      if (t < step) {
        step = t;
        event = Event::kAdd;
        who = j;
      }
    }
    for (std::size_t a = 0; a < active.size(); ++a) {
      const Index j = active[a];
      // Variables that just entered sit at exactly zero and cannot leave yet.
      if (beta[j] == 0.0 || dir[static_cast<Index>(a)] == 0.0) continue;
      const double t = -beta_a[static_cast<Index>(a)] / dir[static_cast<Index>(a)];
      if (t > 0.0 && t < step) {
        step = t;
        event = Event::kDrop;
        who = static_cast<Index>(a);
      }
    }

    const double next_lambda = event == Event::kZero ? 0.0 : event == Event::kStop ? lambda_stop : lambda - step;
    for (std::size_t a = 0; a < active.size(); ++a)
      beta[active[a]] = beta_a[static_cast<Index>(a)] + (lambda - next_lambda) * dir[static_cast<Index>(a)];
    lambda = next_lambda;
    ++path.steps_taken;

    if (event == Event::kDrop) {
      const Index j = active[static_cast<std::size_t>(who)];
      beta[j] = 0.0;
      is_active[static_cast<std::size_t>(j)] = 0;
      active.erase(active.begin() + who);
      Vector s(static_cast<Index>(active.size()));
      for (Index a = 0, b = 0; b < signs.size(); ++b)
        if (b != who) s[a++] = signs[b];
      signs = s;
    }
    corr = two_over_n * (prob.xty - prob.gram * beta);
    if (event == Event::kAdd) add_variable(who);

    if (step > 0.0 || event == Event::kZero || event == Event::kStop) {
      path.knots.push_back({lambda, prob.expand(beta), active});
    } else {
      path.knots.back().active = active;
    }
    if (event == Event::kZero || event == Event::kStop) {
      finished = true;
      break;
    }
  }
  if (!finished) path.truncated = true;
  return path;
}

LarsPath lars_path(const Dataset& data, int max_steps) {
  if (!data.x().allFinite() || !data.y().allFinite()) throw InvalidArgument("lars_path: non-finite data");
  return lars_path(make_gram(data), max_steps);
}

Vector lasso_at(const LarsPath& path, double lambda) {
  if (path.knots.empty()) throw InvalidArgument("lasso_at: empty path");
  if (!(lambda >= 0.0)) throw InvalidArgument("lasso_at: lambda must be >= 0");
  const auto& ks = path.knots;
  if (lambda >= ks.front().lambda) return ks.front().beta;
  for (std::size_t k = 0; k + 1 < ks.size(); ++k) {
    const double hi = ks[k].lambda, lo = ks[k + 1].lambda;
    if (lambda == lo) return ks[k + 1].beta;
    if (lambda <= hi && lambda > lo) {
      const double t = (hi - lambda) / (hi - lo);
      return ks[k].beta + t * (ks[k + 1].beta - ks[k].beta);
    }
  }
  throw PathTruncated("lasso_at: lambda " + std::to_string(lambda) + " lies below the last knot " +
                      std::to_string(ks.back().lambda) + " of a truncated path");
}

}  // namespace lstreg
