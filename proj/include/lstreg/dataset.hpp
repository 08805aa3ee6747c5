#pragma once

#include <span>

#include "lstreg/types.hpp"

namespace lstreg {

// Design matrix, response and intercept flag. When the intercept is on, a
// leading column of ones is implied: coefficient vectors have length p + 1 and
// entry 0 is the (never penalized) intercept.
class Dataset {
 public:
  Dataset(Matrix x, Vector y, bool intercept = false);

  const Matrix& x() const noexcept { return x_; }
  const Vector& y() const noexcept { return y_; }
  bool intercept() const noexcept { return intercept_; }
  Index n() const noexcept { return x_.rows(); }
  Index p() const noexcept { return x_.cols(); }
  // Length of coefficient vectors for this dataset.
  Index coef_size() const noexcept { return x_.cols() + (intercept_ ? 1 : 0); }

  // X with the ones column prepended when the intercept is on.
  Matrix design() const;
  // X_i' beta (including the intercept term when present).
  Vector predict(const Vector& beta) const;

  Dataset rows(std::span<const Index> idx) const;

 private:
  Matrix x_;
  Vector y_;
  bool intercept_;
};

// Throws InvalidArgument unless beta.size() == data.coef_size().
void check_coef(const Dataset& data, const Vector& beta, const char* where);

// Penalized part of a coefficient vector (drops the intercept).
Vector penalized_part(const Dataset& data, const Vector& beta);

}  // namespace lstreg
