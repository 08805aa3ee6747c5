#include "lstreg/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>

#include "lstreg/enet_solvers.hpp"
#include "lstreg/error.hpp"
#include "lstreg/parallel.hpp"

namespace lstreg {

int AaConfig::candidates_for(Index p) const {
  return std::max(candidates_per_repeat, static_cast<int>(p));
}

void AaConfig::validate() const {
  if (outer_repeats < 1) throw InvalidArgument("AaConfig: outer_repeats must be >= 1");
  if (candidates_per_repeat < 0) throw InvalidArgument("AaConfig: candidates_per_repeat must be >= 0");
  if (concentration_iters < 1) throw InvalidArgument("AaConfig: concentration_iters must be >= 1");
  if (lars_step_cap < 1) throw InvalidArgument("AaConfig: lars_step_cap must be >= 1");
  if (!(alpha >= 1.0)) throw InvalidArgument("AaConfig: alpha must be >= 1");
  if (!(gamma >= 1.0)) throw InvalidArgument("AaConfig: gamma must be >= 1");
}

TrimState keep_all(Index n) {
  TrimState t;
  t.weights.assign(static_cast<std::size_t>(n), 1);
  t.kept.resize(static_cast<std::size_t>(n));
  std::iota(t.kept.begin(), t.kept.end(), Index{0});
  t.k = n;
  return t;
}

ObjectiveValue enet_objective(const Dataset& data, const Vector& beta, double lambda1, double lambda2) {
  const Vector r = residuals(data, beta);
  const Vector b = penalized_part(data, beta);
  ObjectiveValue v;
  v.loss_part = r.squaredNorm() / static_cast<double>(data.n());
  v.penalty_part = lambda1 * b.lpNorm<1>() + lambda2 * b.squaredNorm();
  v.total = v.loss_part + v.penalty_part;
  v.trim = keep_all(data.n());
  return v;
}

namespace {

Matrix design_rows(const Dataset& data, std::span<const Index> rows, Vector& y) {
  const Index q = data.coef_size(), off = data.intercept() ? 1 : 0;
  Matrix d(static_cast<Index>(rows.size()), q);
  y.resize(static_cast<Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Index i = rows[r], ri = static_cast<Index>(r);
    if (off) d(ri, 0) = 1.0;
    d.row(ri).tail(data.p()) = data.x().row(i);
    y[ri] = data.y()[i];
  }
  return d;
}

FitResult closed_form_result(const Dataset& data, Vector beta, const char* method, double ridge) {
  FitResult f;
  const Vector r = residuals(data, beta);
  f.objective.loss_part = r.squaredNorm();
  const Vector b = penalized_part(data, beta);
  f.objective.penalty_part = ridge * b.squaredNorm();
  f.objective.total = f.objective.loss_part + f.objective.penalty_part;
  f.objective.trim = keep_all(data.n());
  f.trim = f.objective.trim;
  f.beta = std::move(beta);
  f.method = method;
  f.candidates_evaluated = 1;
  return f;
}

}  // namespace

Vector ls_on_rows(const Dataset& data, std::span<const Index> rows, bool* used_ridge) {
  Vector y;
  const Matrix d = design_rows(data, rows, y);
  const Index k = d.rows(), q = d.cols();
  if (used_ridge) *used_ridge = false;
  if (k >= q) {
    Eigen::ColPivHouseholderQR<Matrix> qr(d);
    if (qr.rank() == q) return qr.solve(y);
  }
  if (used_ridge) *used_ridge = true;
  double tau = 1e-8 * d.squaredNorm() / static_cast<double>(q);
  if (!(tau > 0.0)) tau = 1e-8;
  if (k < q) {
    Matrix a = d * d.transpose();
    a.diagonal().array() += tau;
    return d.transpose() * a.ldlt().solve(y);
  }
  Matrix a = d.transpose() * d;
  a.diagonal().array() += tau;
  return a.ldlt().solve(d.transpose() * y);
}

FitResult fit_ls(const Dataset& data) {
  const Matrix d = data.design();
  if (d.rows() < d.cols()) throw SingularDesign("fit_ls: fewer rows than coefficients");
  Eigen::ColPivHouseholderQR<Matrix> qr(d);
  if (qr.rank() < d.cols()) throw SingularDesign("fit_ls: design is rank deficient");
  return closed_form_result(data, qr.solve(data.y()), "ls", 0.0);
}

FitResult fit_ridge(const Dataset& data, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("fit_ridge: lambda must be >= 0");
  if (lambda == 0.0) {
    FitResult f = fit_ls(data);
    f.method = "ridge";
    return f;
  }
  const GramProblem g = make_gram(data);
  Matrix a = g.gram;
  a.diagonal().array() += lambda;
  FitResult f = closed_form_result(data, g.expand(a.ldlt().solve(g.xty)), "ridge", lambda);
  return f;
}

namespace {

// Indices of the h smallest squared residuals (ties by index), sorted.
IndexList smallest_h(const Vector& r, Index h) {
  IndexList idx(static_cast<std::size_t>(r.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  auto less = [&](Index a, Index b) {
    const double ra = r[a] * r[a], rb = r[b] * r[b];
    return ra < rb || (ra == rb && a < b);
  };
  std::nth_element(idx.begin(), idx.begin() + (h - 1), idx.end(), less);
  idx.resize(static_cast<std::size_t>(h));
  std::sort(idx.begin(), idx.end());
  return idx;
}

double ssr_on(const Vector& r, const IndexList& rows) {
  double s = 0.0;
  for (Index i : rows) s += r[i] * r[i];
  return s;
}

IndexList sample_rows(Index n, Index s, Rng& rng) {
  IndexList perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = 0; i < s; ++i) {
    std::uniform_int_distribution<Index> pick(i, n - 1);
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pick(rng))]);
  }
  perm.resize(static_cast<std::size_t>(s));
  std::sort(perm.begin(), perm.end());
  return perm;
}

bool rows_full_rank(const Dataset& data, const IndexList& rows) {
  Vector y;
  const Matrix d = design_rows(data, rows, y);
  Eigen::ColPivHouseholderQR<Matrix> qr(d);
  return qr.rank() == std::min(d.rows(), d.cols());
}

struct LtsStart {
  Vector beta;
  double objective = std::numeric_limits<double>::infinity();
  IndexList kept;
  std::vector<double> trace;
  bool valid = false;
};

constexpr int kMaxCSteps = 100;

}  // namespace

FitResult fit_lts(const Dataset& data, Index h, const AaConfig& config) {
  config.validate();
  const Index n = data.n(), q = data.coef_size();
  if (h < (n + 1) / 2 || h > n) throw InvalidArgument("fit_lts: h must lie in [ceil(n/2), n]");
  if (h < q) throw InvalidArgument("fit_lts: h must be at least the number of coefficients");
  const int per = config.candidates_for(data.p());
  const std::size_t starts = static_cast<std::size_t>(config.outer_repeats) * static_cast<std::size_t>(per);
  std::vector<LtsStart> out(starts);
  parallel_for(starts, [&](std::size_t t) {
    Rng rng = make_rng(config.seed, {0x175, t});
    const IndexList subset = sample_rows(n, q, rng);
    if (!rows_full_rank(data, subset)) return;
    LtsStart& st = out[t];
    st.beta = ls_on_rows(data, subset);
    Vector r = residuals(data, st.beta);
    st.kept = smallest_h(r, h);
    st.objective = ssr_on(r, st.kept);
    st.trace.push_back(st.objective);
    st.valid = true;
    for (int it = 0; it < kMaxCSteps; ++it) {
      const Vector next = ls_on_rows(data, st.kept);
      const Vector rn = residuals(data, next);
      IndexList kn = smallest_h(rn, h);
      const double obj = ssr_on(rn, kn);
      if (!(obj <= st.objective)) break;  // only possible through the ridge fallback
      const bool same = kn == st.kept;
      st.beta = next;
      st.objective = obj;
      st.kept = std::move(kn);
      st.trace.push_back(obj);
      if (same) break;
    }
  });
  std::size_t best = starts;
  for (std::size_t t = 0; t < starts; ++t)
    if (out[t].valid && (best == starts || out[t].objective < out[best].objective)) best = t;
  if (best == starts) throw NoValidStart("fit_lts: every elemental start was degenerate");

  FitResult f;
  f.method = "lts";
  f.seed = config.seed;
  f.beta = out[best].beta;
  f.trace = out[best].trace;
  f.objective.loss_part = f.objective.total = lts_objective(data, f.beta, h);
  TrimState t;
  t.weights.assign(static_cast<std::size_t>(n), 0);
  t.kept = smallest_h(residuals(data, f.beta), h);
  for (Index i : t.kept) t.weights[static_cast<std::size_t>(i)] = 1;
  t.k = h;
  f.objective.trim = t;
  f.trim = t;
  f.candidates_evaluated = static_cast<int>(std::count_if(out.begin(), out.end(), [](const LtsStart& s) { return s.valid; }));
  return f;
}

namespace {

Vector refit_kept(const Dataset& data, const Vector& beta, const TrimState& trim, const PenaltySpec& spec) {
  if (spec.lambda1 == 0.0 && spec.lambda2 == 0.0) return ls_on_rows(data, trim.kept);
  double l1 = spec.lambda1, l2 = spec.lambda2;
  if (spec.gamma == 2.0) {
    l2 += l1;
    l1 = 0.0;
  } else if (spec.gamma != 1.0 && l1 != 0.0) {
    throw InvalidArgument("concentration_step: only gamma in {1, 2} has a refit solver");
  }
  const GramProblem g = make_gram(data, trim.kept, static_cast<double>(data.n()));
  const Vector warm = penalized_part(data, beta);
  return shooting_enet(g, l1, l2, 1e-10, 100000, &warm).beta;
}

}  // namespace

Vector concentration_step(const Dataset& data, const Vector& beta, double alpha, const PenaltySpec& spec_in) {
  PenaltySpec spec = spec_in;
  spec.alpha = alpha;
  const ObjectiveValue cur = lst_enet_objective(data, beta, spec);
  const Vector next = refit_kept(data, beta, cur.trim, spec);
  if (!next.allFinite()) return beta;
  return lst_enet_objective(data, next, spec).total < cur.total ? next : beta;
}

Vector concentrate(const Dataset& data, Vector beta, const PenaltySpec& spec, int iters, std::vector<double>* trace) {
  ObjectiveValue cur = lst_enet_objective(data, beta, spec);
  std::vector<IndexList> seen;
  for (int it = 0; it < iters; ++it) {
    if (std::find(seen.begin(), seen.end(), cur.trim.kept) != seen.end()) break;
    seen.push_back(cur.trim.kept);
    const Vector next = refit_kept(data, beta, cur.trim, spec);
    if (!next.allFinite()) break;
    ObjectiveValue nv = lst_enet_objective(data, next, spec);
    if (!(nv.total < cur.total)) break;
    beta = next;
    cur = std::move(nv);
    if (trace) trace->push_back(cur.total);
  }
  return beta;
}

FitResult fit_lst(const Dataset& data, double alpha, const AaConfig& config_in) {
  AaConfig config = config_in;
  config.alpha = alpha;
  config.validate();
  if (data.n() < 2) throw InvalidArgument("fit_lst: need n >= 2");
  const std::vector<Vector> cands = candidate_betas(data, config);
  std::vector<double> values(cands.size());
  parallel_for(cands.size(), [&](std::size_t c) { values[c] = lst_objective(data, cands[c], alpha).total; });

  FitResult f;
  std::size_t best = 0;
  for (std::size_t c = 0; c < cands.size(); ++c) {
    if (values[c] < values[best]) best = c;
    f.trace.push_back(values[best]);
  }
  f.method = "lst";
  f.seed = config.seed;
  f.beta = cands[best];
  f.objective = lst_objective(data, f.beta, alpha);
  f.trim = f.objective.trim;
  f.candidates_evaluated = static_cast<int>(cands.size());
  PenaltySpec pen;
  pen.alpha = alpha;
  f.selected_penalty = pen;
  return f;
}

FitResult fit_lasso(const Dataset& data, double lambda1) {
  FitResult f = fit_enet(data, lambda1, 0.0);
  f.method = "lasso";
  return f;
}

FitResult fit_enet(const Dataset& data, double lambda1, double lambda2) {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) throw InvalidArgument("fit_enet: lambdas must be >= 0");
  FitResult f;
  f.method = "enet";
  if (lambda1 == 0.0 && lambda2 == 0.0) {
    f.beta = fit_ls(data).beta;
  } else {
    f.beta = solve_enet(make_gram(data), lambda1, lambda2);
  }
  f.objective = enet_objective(data, f.beta, lambda1, lambda2);
  f.trim = f.objective.trim;
  f.kkt = kkt_check(data, lambda1, lambda2, f.beta);
  if (!f.kkt->ok) f.warnings.push_back("solution failed the KKT check");
  PenaltySpec pen;
  pen.lambda1 = lambda1;
  pen.lambda2 = lambda2;
  pen.lambda0 = lambda_max(data);
  f.selected_penalty = pen;
  f.candidates_evaluated = 1;
  return f;
}

}  // namespace lstreg
