#include "lstreg/dataset.hpp"

#include <string>

#include "lstreg/error.hpp"

namespace lstreg {

Dataset::Dataset(Matrix x, Vector y, bool intercept)
    : x_(std::move(x)), y_(std::move(y)), intercept_(intercept) {
  if (x_.rows() < 1 || x_.cols() < 1) throw InvalidArgument("Dataset: need n >= 1 and p >= 1");
  if (y_.size() != x_.rows()) throw InvalidArgument("Dataset: y length does not match rows of X");
  if (!x_.allFinite() || !y_.allFinite()) throw InvalidArgument("Dataset: non-finite entries");
}

Matrix Dataset::design() const {
  if (!intercept_) return x_;
  Matrix d(n(), p() + 1);
  d.col(0).setOnes();
  d.rightCols(p()) = x_;
  return d;
}

Vector Dataset::predict(const Vector& beta) const {
  check_coef(*this, beta, "predict");
  if (!intercept_) return x_ * beta;
  return (x_ * beta.tail(p())).array() + beta[0];
}

Dataset Dataset::rows(std::span<const Index> idx) const {
  Matrix xs(static_cast<Index>(idx.size()), p());
  Vector ys(static_cast<Index>(idx.size()));
  for (std::size_t r = 0; r < idx.size(); ++r) {
    xs.row(static_cast<Index>(r)) = x_.row(idx[r]);
    ys[static_cast<Index>(r)] = y_[idx[r]];
  }
  return Dataset(std::move(xs), std::move(ys), intercept_);
}

void check_coef(const Dataset& data, const Vector& beta, const char* where) {
  if (beta.size() != data.coef_size())
    throw InvalidArgument(std::string(where) + ": coefficient length " + std::to_string(beta.size()) +
                          " does not match " + std::to_string(data.coef_size()));
}

Vector penalized_part(const Dataset& data, const Vector& beta) {
  return data.intercept() ? Vector(beta.tail(data.p())) : beta;
}

}  // namespace lstreg
