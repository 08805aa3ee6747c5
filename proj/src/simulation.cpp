#include "lstreg/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "lstreg/error.hpp"
#include "lstreg/parallel.hpp"

namespace lstreg {

void SimulationSpec::validate() const {
  if (n < 2) throw InvalidArgument("simulation: n must be >= 2");
  if (p < 1) throw InvalidArgument("simulation: p must be >= 1");
  if (!(eps >= 0.0 && eps < 0.5)) throw InvalidArgument("contamination level must be below 0.5");
  if (!(sigma > 0.0)) throw InvalidArgument("simulation: sigma must be > 0");
  if (replications < 1) throw InvalidArgument("simulation: replications must be >= 1");
  if (!(split_ratio > 0.0 && split_ratio < 1.0)) throw InvalidArgument("simulation: split ratio must lie in (0, 1)");
}

Index leading_ones(Index p) { return static_cast<Index>(std::ceil(0.06 * static_cast<double>(p) - 1e-12)); }

Vector true_beta(Index p) {
  if (p < 1) throw InvalidArgument("true_beta: p must be >= 1");
  Vector b = Vector::Zero(p);
  b.head(leading_ones(p)).setOnes();
  return b;
}

namespace {

Matrix design_cholesky(const SimulationSpec& spec) {
  const Index p = spec.p, p1 = leading_ones(p);
  Matrix cov = Matrix::Zero(p, p);
  for (Index i = 0; i < p; ++i)
    for (Index j = 0; j < p; ++j) {
      const bool b1 = i < p1 && j < p1, b2 = i >= p1 && j >= p1;
      if (b1) cov(i, j) = std::pow(spec.rho1, static_cast<double>(std::abs(i - j)));
      if (b2) cov(i, j) = std::pow(spec.rho2, static_cast<double>(std::abs(i - j)));
    }
  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() != Eigen::Success) throw InvalidArgument("gen_design: covariance is not positive definite");
  return llt.matrixL();
}

}  // namespace

GeneratedInstance gen_design(const SimulationSpec& spec, Rng& rng) {
  spec.validate();
  std::normal_distribution<double> g;
  const Index n = spec.n, p = spec.p;
  Matrix z(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p; ++j) z(i, j) = g(rng);
  Matrix x;
  if (spec.design == Design::kI) {
    const double sd = spec.design_variance_squared ? spec.sigma : std::sqrt(spec.sigma);
    x = z * sd;
  } else {
    x = z * design_cholesky(spec).transpose();
  }
  Vector e(n);
  for (Index i = 0; i < n; ++i) e[i] = g(rng);
  Vector beta0 = true_beta(p);
  Vector y = x * beta0 + spec.sigma * e;
  return GeneratedInstance{Dataset(std::move(x), std::move(y), false), std::move(beta0), {}, std::move(e), spec.sigma};
}

GeneratedInstance contaminate(const GeneratedInstance& inst, Scheme scheme, double eps, Rng& rng) {
  if (!(eps >= 0.0 && eps < 0.5)) throw InvalidArgument("contamination level must be below 0.5");
  const Index n = inst.data.n();
  const Index m = static_cast<Index>(std::floor(eps * static_cast<double>(n) + 1e-12));
  if (m == 0) return inst;
  IndexList perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = 0; i < m; ++i) {
    std::uniform_int_distribution<Index> pick(i, n - 1);
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pick(rng))]);
  }
  IndexList rows(perm.begin(), perm.begin() + m);
  std::sort(rows.begin(), rows.end());

  Matrix x = inst.data.x();
  Vector y = inst.data.y();
  Vector e = inst.e;
  for (Index i : rows) {
    e[i] += 20.0;
    y[i] = x.row(i).dot(inst.beta0) + inst.sigma * e[i];
    if (scheme == Scheme::kI) {
      x.row(i).array() += 20.0;
    } else {
      x.row(i).setZero();
      x(i, 0) = 1e4;
      y[i] = 1e10;
    }
  }
  return GeneratedInstance{Dataset(std::move(x), std::move(y), inst.data.intercept()), inst.beta0, std::move(rows),
                           std::move(e), inst.sigma};
}

Index training_size(Index n, double ratio) {
  // Nearest integer, halves up: 0.7 x 59 = 41.3 gives 41 training rows.
  return static_cast<Index>(std::floor(ratio * static_cast<double>(n) + 0.5 + 1e-12));
}

std::pair<IndexList, IndexList> split_indices(Index n, double ratio, Rng& rng) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidArgument("split: ratio must lie in (0, 1)");
  const Index ntrain = training_size(n, ratio);
  if (n < 2 || ntrain < 1 || ntrain >= n) throw InvalidArgument("split: degenerate split sizes");
  IndexList perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  IndexList train(perm.begin(), perm.begin() + ntrain), test(perm.begin() + ntrain, perm.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {train, test};
}

std::vector<double> ExperimentTable::values(const std::string& method, const std::string& metric) const {
  std::vector<double> v;
  for (const auto& r : rows)
    if (r.method == method && r.metric == metric && r.value) v.push_back(*r.value);
  return v;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string ExperimentTable::to_csv() const {
  std::string out = "replication,method,metric,value,note\n";
  for (const auto& r : rows) {
    out += std::to_string(r.replication) + "," + csv_field(r.method) + "," + r.metric + ",";
    out += r.value ? fmt(*r.value) : std::string("NA");
    out += "," + csv_field(r.note) + "\n";
  }
  return out;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw InvalidArgument("quantile: empty sample");
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

ExperimentTable run_experiment(const SimulationSpec& spec, const std::vector<std::string>& methods,
                               const MethodOptions& options) {
  spec.validate();
  if (methods.empty()) throw InvalidArgument("run_experiment: no methods");
  for (const auto& m : methods)
    if (!is_method(m)) throw InvalidArgument("run_experiment: unknown method '" + m + "'");

  const std::size_t reps = static_cast<std::size_t>(spec.replications), nm = methods.size();
  struct Cell {
    std::optional<MetricSet> metrics;
    std::optional<Vector> beta;
    std::string note;
  };
  std::vector<Cell> cells(reps * nm);

  parallel_for(reps * nm, [&](std::size_t task) {
    const std::size_t r = task / nm, mi = task % nm;
    // Every method of a replication regenerates the same instance from the same seeds.
    Rng g1 = make_rng(spec.seed, {r, 1});
    Rng g2 = make_rng(spec.seed, {r, 2});
    Rng g3 = make_rng(spec.seed, {r, 3});
    const GeneratedInstance clean = gen_design(spec, g1);
    const GeneratedInstance inst = contaminate(clean, spec.scheme, spec.eps, g2);
    IndexList train, test;
    if (spec.clean_test && !inst.contaminated_rows.empty()) {
      IndexList good;
      for (Index i = 0; i < spec.n; ++i)
        if (!std::binary_search(inst.contaminated_rows.begin(), inst.contaminated_rows.end(), i)) good.push_back(i);
      const Index ntrain = training_size(spec.n, spec.split_ratio);
      const Index ntest = spec.n - ntrain;
      std::shuffle(good.begin(), good.end(), g3);
      test.assign(good.begin(), good.begin() + std::min<Index>(ntest, static_cast<Index>(good.size())));
      std::sort(test.begin(), test.end());
      for (Index i = 0; i < spec.n; ++i)
        if (!std::binary_search(test.begin(), test.end(), i)) train.push_back(i);
    } else {
      std::tie(train, test) = split_indices(spec.n, spec.split_ratio, g3);
    }
    const Dataset tr = inst.data.rows(train), te = inst.data.rows(test);
    MethodOptions o = options;
    o.seed = derive_seed(spec.seed, {r, 4, mi});
    Cell& cell = cells[task];
    try {
      const FitResult f = fit_method(methods[mi], tr, o);
      cell.metrics = compute_metrics(inst.beta0, f.beta, &te);
      cell.beta = f.beta;
    } catch (const std::exception& e) {
      cell.note = e.what();
    }
  });

  ExperimentTable t;
  t.methods = methods;
  for (std::size_t r = 0; r < reps; ++r)
    for (std::size_t mi = 0; mi < nm; ++mi) {
      const Cell& c = cells[r * nm + mi];
      for (const auto& metric : metric_names()) {
        ExperimentRow row;
        row.replication = static_cast<int>(r);
        row.method = methods[mi];
        row.metric = metric;
        if (!c.metrics) {
          row.note = c.note;
        } else if (metric == "l2_error") {
          row.value = c.metrics->l2_error;
        } else if (metric == "tsdr") {
          row.value = c.metrics->tsdr;
          if (!row.value) row.note = "undefined: no zero coordinates";
        } else if (metric == "fsdr") {
          row.value = c.metrics->fsdr;
          if (!row.value) row.note = "undefined: no nonzero coordinates";
        } else {
          row.value = c.metrics->rmse;
        }
        t.rows.push_back(std::move(row));
      }
    }
  for (std::size_t mi = 0; mi < nm; ++mi) {
    std::vector<Vector> betas;
    for (std::size_t r = 0; r < reps; ++r)
      if (cells[r * nm + mi].beta) betas.push_back(*cells[r * nm + mi].beta);
    t.emse[methods[mi]] = betas.size() >= 2 ? std::optional<double>(emse(betas)) : std::nullopt;
  }
  return t;
}

}  // namespace lstreg
