#pragma once

#include <span>
#include <vector>

#include "lstreg/dataset.hpp"

namespace lstreg {

// Sufficient statistics of a least-squares problem
//   (1/N) ||y - X b||^2 = (1/N) (yty - 2 b'xty + b' gram b).
// With an intercept the statistics are centered and the intercept is
// recovered afterwards, so it is never penalized.
struct GramProblem {
  Matrix gram;
  Vector xty;
  double yty = 0.0;
  double n_loss = 1.0;  // N in the (1/N) loss normalization
  bool intercept = false;
  Vector x_mean;  // only meaningful with an intercept
  double y_mean = 0.0;

  Index p() const { return gram.rows(); }
  // Coefficient vector in Dataset layout (intercept first, when present).
  Vector expand(const Vector& slopes) const;
};

// Statistics of the given rows (all rows when `rows` is empty). `n_loss`
// defaults to the number of rows used.
GramProblem make_gram(const Dataset& data, std::span<const Index> rows = {}, double n_loss = 0.0);

struct LarsKnot {
  double lambda = 0.0;
  Vector beta;       // Dataset layout
  IndexList active;  // variables moving on the segment below this knot
};

struct LarsPath {
  std::vector<LarsKnot> knots;
  int steps_taken = 0;
  bool truncated = false;  // step cap reached or singular active set
  double lambda0 = 0.0;
};

inline constexpr int kDefaultLarsSteps = 900;

// Lasso-modified LARS path of (1/n)||y - X b||^2 + lambda ||b||_1, columns
// used as given. Ties in the entry correlation are broken by lowest index.
LarsPath lars_path(const Dataset& data, int max_steps = kDefaultLarsSteps);

// Same on sufficient statistics. The path stops early (untruncated) once
// lambda reaches `lambda_stop`.
LarsPath lars_path(const GramProblem& prob, int max_steps = kDefaultLarsSteps, double lambda_stop = 0.0);

// Piecewise-affine interpolation of the path. Throws PathTruncated when lambda
// lies below the last knot of a path that did not reach zero.
Vector lasso_at(const LarsPath& path, double lambda);

}  // namespace lstreg
