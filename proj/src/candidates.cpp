#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>

#include "lstreg/enet_solvers.hpp"
#include "lstreg/error.hpp"
#include "lstreg/estimators.hpp"
#include "lstreg/parallel.hpp"

namespace lstreg {

namespace {

constexpr int kSubsetRetries = 10;

IndexList draw_rows(Index n, Index s, Rng& rng) {
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

bool subset_ok(const Dataset& data, const IndexList& rows) {
  const Index q = data.coef_size(), off = data.intercept() ? 1 : 0;
  Matrix d(static_cast<Index>(rows.size()), q);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (off) d(static_cast<Index>(r), 0) = 1.0;
    d.row(static_cast<Index>(r)).tail(data.p()) = data.x().row(rows[r]);
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(d);
  return qr.rank() == std::min(d.rows(), d.cols());
}

// Elemental subsets while they are small relative to n; otherwise two anchor
// rows, whose min-norm fit seeds the concentration steps.
Index subset_size(const Dataset& data) {
  const Index n = data.n(), q = data.coef_size();
  if (q <= n / 2) return std::max<Index>(q, std::min<Index>(2, n));
  return std::min<Index>(2, n);
}

Vector raw_candidate(const Dataset& data, const AaConfig& config, int repeat, int c) {
  Rng rng = make_rng(config.seed, {static_cast<std::uint64_t>(repeat), static_cast<std::uint64_t>(c)});
  const Index s = subset_size(data);
  IndexList rows;
  for (int attempt = 0; attempt <= kSubsetRetries; ++attempt) {
    rows = draw_rows(data.n(), s, rng);
    if (subset_ok(data, rows)) break;
  }
  return ls_on_rows(data, rows);
}

std::uint64_t hash_rows(const IndexList& rows) {
  std::uint64_t h = mix_seed(rows.size());
  for (Index i : rows) h = mix_seed(h ^ static_cast<std::uint64_t>(i));
  return h;
}

}  // namespace

std::vector<Vector> candidate_betas(const Dataset& data, const AaConfig& config, int repeat) {
  config.validate();
  if (data.n() < 2) throw InvalidArgument("candidate_betas: need n >= 2");
  const int count = config.candidates_for(data.p());
  PenaltySpec unpenalized;
  unpenalized.alpha = config.alpha;
  std::vector<Vector> out(static_cast<std::size_t>(count));
  parallel_for(out.size(), [&](std::size_t c) {
    out[c] = concentrate(data, raw_candidate(data, config, repeat, static_cast<int>(c)), unpenalized,
                         config.concentration_iters);
  });
  return out;
}

std::vector<Vector> candidate_betas(const Dataset& data, const AaConfig& config) {
  config.validate();
  const int count = config.candidates_for(data.p());
  const std::size_t total = static_cast<std::size_t>(config.outer_repeats) * static_cast<std::size_t>(count);
  PenaltySpec unpenalized;
  unpenalized.alpha = config.alpha;
  std::vector<Vector> out(total);
  parallel_for(total, [&](std::size_t t) {
    const int r = static_cast<int>(t / static_cast<std::size_t>(count));
    const int c = static_cast<int>(t % static_cast<std::size_t>(count));
    out[t] = concentrate(data, raw_candidate(data, config, r, c), unpenalized, config.concentration_iters);
  });
  return out;
}

namespace {

struct SubSolution {
  bool ok = false;
  double lambda_star = 0.0;
  double alpha_star = 0.0;
  double lambda0 = 0.0;
  Vector beta;
  std::string failure;
};

struct Scored {
  double objective = std::numeric_limits<double>::infinity();
  Vector beta;
  PenaltySpec penalty;
  bool valid = false;
  std::string warning;
};

}  // namespace

FitResult fit_lst_enet(const Dataset& data, const AaConfig& config, const CvGrid& grid) {
  config.validate();
  grid.validate();
  if (config.gamma != 1.0) throw InvalidArgument("fit_lst_enet: the LARS search requires gamma = 1");
  if (data.n() < 2) throw InvalidArgument("fit_lst_enet: need n >= 2");

  const int count = config.candidates_for(data.p());
  // Task 0 is the zero vector; task 1 + r*count + c is candidate c of repeat r.
  const std::size_t tasks = 1 + static_cast<std::size_t>(config.outer_repeats) * static_cast<std::size_t>(count);
  PenaltySpec unpenalized;
  unpenalized.alpha = config.alpha;

  std::mutex cache_mutex;
  std::map<IndexList, SubSolution> cache;

  auto solve_sub = [&](const IndexList& kept) {
    {
      std::lock_guard lock(cache_mutex);
      auto it = cache.find(kept);
      if (it != cache.end()) return it->second;
    }
    SubSolution s;
    try {
      const Dataset sub = data.rows(kept);
      const CvReport rep = cv_select(sub, grid, derive_seed(config.seed, {0xC5, hash_rows(kept)}), config.lars_step_cap);
      s.lambda_star = rep.lambda_star;
      s.alpha_star = rep.alpha_star;
      s.lambda0 = rep.lambda0;
      if (!std::isfinite(rep.error_surface(rep.lambda_index, rep.alpha_index)))
        throw std::runtime_error("no grid cell produced a finite cross-validation error");
      const auto [l1, l2] = mixing_to_direct(s.lambda_star, s.alpha_star);
      s.beta = solve_enet(make_gram(sub), l1, l2, config.lars_step_cap);
      s.ok = s.beta.allFinite();
      if (!s.ok) s.failure = "non-finite solution";
    } catch (const std::exception& e) {
      s.failure = e.what();
    }
    std::lock_guard lock(cache_mutex);
    return cache.emplace(kept, s).first->second;
  };

  std::vector<Scored> scored(tasks);
  parallel_for(tasks, [&](std::size_t t) {
    Vector start;
    if (t == 0) {
      start = Vector::Zero(data.coef_size());
    } else {
      const std::size_t u = t - 1;
      const int r = static_cast<int>(u / static_cast<std::size_t>(count));
      const int c = static_cast<int>(u % static_cast<std::size_t>(count));
      start = concentrate(data, raw_candidate(data, config, r, c), unpenalized, config.concentration_iters);
    }
    const TrimState trim = trim_weights(residuals(data, start), config.alpha);
    const SubSolution sub = solve_sub(trim.kept);
    Scored& out = scored[t];
    if (!sub.ok) {
      out.warning = "candidate " + std::to_string(t) + " skipped: " + sub.failure;
      return;
    }
    PenaltySpec pen = PenaltySpec::from_mixing(sub.lambda_star, sub.alpha_star, config.alpha, 1.0);
    pen.lambda0 = sub.lambda0;
    const double raw = lst_enet_objective(data, start, pen).total;
    const double solved = lst_enet_objective(data, sub.beta, pen).total;
    out.valid = true;
    out.penalty = pen;
    if (solved < raw) {
      out.objective = solved;
      out.beta = sub.beta;
    } else {
      out.objective = raw;
      out.beta = std::move(start);
    }
  });

  FitResult f;
  f.method = "lst-enet";
  f.seed = config.seed;
  std::optional<std::size_t> best;
  for (std::size_t t = 0; t < tasks; ++t) {
    const Scored& s = scored[t];
    if (!s.warning.empty()) f.warnings.push_back(s.warning);
    if (s.valid) {
      f.candidates_evaluated += 2;
      if (!best || s.objective < scored[*best].objective) best = t;
    }
    if (best) f.trace.push_back(scored[*best].objective);
  }
  if (!best) throw NoValidStart("fit_lst_enet: every candidate failed model selection");
  const Scored& w = scored[*best];
  f.beta = w.beta;
  f.selected_penalty = w.penalty;
  f.objective = lst_enet_objective(data, f.beta, w.penalty);
  f.trim = f.objective.trim;
  return f;
}

}  // namespace lstreg
