#include "lstreg/metrics.hpp"

#include <cmath>

#include "lstreg/error.hpp"

namespace lstreg {

namespace {

void same_length(const Vector& a, const Vector& b, const char* where) {
  if (a.size() != b.size()) throw InvalidArgument(std::string(where) + ": length mismatch");
}

bool is_zero(double v, double thr) { return std::fabs(v) <= thr; }

}  // namespace

double l2_error(const Vector& beta0, const Vector& beta_hat) {
  same_length(beta0, beta_hat, "l2_error");
  return (beta0 - beta_hat).squaredNorm();
}

double tsdr(const Vector& beta0, const Vector& beta_hat, double zero_threshold) {
  same_length(beta0, beta_hat, "tsdr");
  Index zeros = 0, hits = 0;
  for (Index i = 0; i < beta0.size(); ++i) {
    if (beta0[i] != 0.0) continue;
    ++zeros;
    if (is_zero(beta_hat[i], zero_threshold)) ++hits;
  }
  if (zeros == 0) throw UndefinedMetric("tsdr: true coefficients have no zero coordinate");
  return static_cast<double>(hits) / static_cast<double>(zeros);
}

double fsdr(const Vector& beta0, const Vector& beta_hat, double zero_threshold) {
  same_length(beta0, beta_hat, "fsdr");
  Index nonzeros = 0, misses = 0;
  for (Index i = 0; i < beta0.size(); ++i) {
    if (beta0[i] == 0.0) continue;
    ++nonzeros;
    if (is_zero(beta_hat[i], zero_threshold)) ++misses;
  }
  if (nonzeros == 0) throw UndefinedMetric("fsdr: true coefficients are all zero");
  return static_cast<double>(misses) / static_cast<double>(nonzeros);
}

double rmse(const Dataset& test, const Vector& beta_hat) {
  check_coef(test, beta_hat, "rmse");
  const Vector r = test.y() - test.predict(beta_hat);
  return std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
}

double emse(const std::vector<Vector>& estimates) {
  if (estimates.size() < 2) throw InvalidArgument("emse: need at least two estimates");
  Vector mean = Vector::Zero(estimates.front().size());
  for (const Vector& b : estimates) {
    same_length(estimates.front(), b, "emse");
    mean += b;
  }
  mean /= static_cast<double>(estimates.size());
  double s = 0.0;
  for (const Vector& b : estimates) s += (b - mean).squaredNorm();
  return s / static_cast<double>(estimates.size());
}

MetricSet compute_metrics(const Vector& beta0, const Vector& beta_hat, const Dataset* test, double zero_threshold) {
  Vector slopes = beta_hat;
  if (beta_hat.size() == beta0.size() + 1) slopes = beta_hat.tail(beta0.size());
  MetricSet m;
  m.l2_error = l2_error(beta0, slopes);
  if ((beta0.array() == 0.0).any()) m.tsdr = tsdr(beta0, slopes, zero_threshold);
  if ((beta0.array() != 0.0).any()) m.fsdr = fsdr(beta0, slopes, zero_threshold);
  if (test) m.rmse = rmse(*test, beta_hat);
  return m;
}

Rational theoretical_rbp(long long n, long long p, RbpKind kind, std::optional<long long> k) {
  if (kind == RbpKind::kLst) {
    if (!(p >= 1 && n > p)) throw InvalidArgument("theoretical_rbp: need n > p >= 1");
    if (p == 1) return {(n + 1) / 2, n};
    const long long num = n / 2 - p + 2;
    if (num < 0) throw InvalidArgument("theoretical_rbp: n too small for p");
    return {num, n};
  }
  if (!k) throw InvalidArgument("theoretical_rbp: penalized kind needs k");
  if (n < 1 || *k < (n + 1) / 2 || *k > n) throw InvalidArgument("theoretical_rbp: need ceil(n/2) <= k <= n");
  return {n - *k + 1, n};
}

}  // namespace lstreg
