#include "lstreg/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lstreg/enet_solvers.hpp"
#include "lstreg/error.hpp"
#include "lstreg/objectives.hpp"
#include "lstreg/parallel.hpp"

namespace lstreg {

CvGrid CvGrid::relative_default(int size) {
  CvGrid g;
  for (int i = 1; i <= size; ++i) g.lambdas.push_back(static_cast<double>(i) / size);
  for (int i = 0; i < size; ++i) g.alphas.push_back(static_cast<double>(i) / size);
  g.relative = true;
  return g;
}

CvGrid CvGrid::fixed(double lambda_star, double alpha_star) {
  CvGrid g;
  g.lambdas = {lambda_star};
  g.alphas = {alpha_star};
  return g;
}

CvGrid CvGrid::resolve(double lambda0) const {
  CvGrid g = *this;
  if (relative) {
    for (double& l : g.lambdas) l *= lambda0;
    g.relative = false;
  }
  return g;
}

void CvGrid::validate() const {
  if (lambdas.empty() || alphas.empty()) throw InvalidArgument("CvGrid: empty grid");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] >= 0.0) || !std::isfinite(lambdas[i])) throw InvalidArgument("CvGrid: lambdas must be finite and >= 0");
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) throw InvalidArgument("CvGrid: lambdas must be strictly increasing");
  }
  // A fixed cell skips cross-validation and may be pure ridge (alpha* = 1).
  const double top = cells() == 1 ? 1.0 : std::nextafter(1.0, 0.0);
  for (double a : alphas)
    if (!(a >= 0.0 && a <= top)) throw InvalidArgument("CvGrid: alphas must lie in [0, 1)");
  if (folds < 2) throw InvalidArgument("CvGrid: folds must be >= 2");
  if (repeats < 1) throw InvalidArgument("CvGrid: repeats must be >= 1");
}

CvGrid build_grid(double lambda0, int size) {
  if (!(lambda0 > 0.0)) throw InvalidArgument("build_grid: lambda0 must be > 0");
  if (size < 1) throw InvalidArgument("build_grid: size must be >= 1");
  return CvGrid::relative_default(size).resolve(lambda0);
}

std::vector<IndexList> kfold_split(Index n, int k, Rng& rng) {
  if (k < 2) throw InvalidArgument("kfold_split: k must be >= 2");
  if (n < k) throw InvalidArgument("kfold_split: need n >= k");
  IndexList perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<IndexList> folds(static_cast<std::size_t>(k));
  const Index base = n / k, extra = n % k;
  Index pos = 0;
  for (Index f = 0; f < k; ++f) {
    const Index size = base + (f < extra ? 1 : 0);
    auto& fold = folds[static_cast<std::size_t>(f)];
    fold.assign(perm.begin() + pos, perm.begin() + pos + size);
    std::sort(fold.begin(), fold.end());
    pos += size;
  }
  return folds;
}

std::pair<Index, Index> choose_cell(const Matrix& surface) {
  // Visit the most regularized cells first; a later cell must win by more
  // than the tie tolerance.
  Index bl = -1, ba = -1;
  double best = std::numeric_limits<double>::infinity();
  for (Index l = surface.rows() - 1; l >= 0; --l)
    for (Index a = surface.cols() - 1; a >= 0; --a) {
      const double e = surface(l, a);
      if (bl < 0 || e < best - 1e-12) {
        bl = l;
        ba = a;
        best = e;
      }
    }
  return {bl, ba};
}

namespace {

double fold_score(const Vector& err2, bool trimmed) {
  if (!trimmed) return err2.mean();
  std::vector<double> v(err2.data(), err2.data() + err2.size());
  std::sort(v.begin(), v.end());
  const std::size_t keep = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.8 * static_cast<double>(v.size()))));
  double s = 0.0;
  for (std::size_t i = 0; i < keep; ++i) s += v[i];
  return s / static_cast<double>(keep);
}

}  // namespace

CvReport cv_select(const Dataset& data, const CvGrid& grid_in, std::uint64_t seed, int lars_step_cap) {
  grid_in.validate();
  CvReport rep;
  rep.lambda0 = lambda_max(data);
  rep.grid = grid_in.resolve(rep.lambda0);
  const CvGrid& grid = rep.grid;
  const Index nl = static_cast<Index>(grid.lambdas.size()), na = static_cast<Index>(grid.alphas.size());

  if (nl * na == 1) {
    rep.error_surface = Matrix::Zero(1, 1);
  } else {
    if (data.n() < grid.folds) throw InvalidArgument("cv_select: fewer rows than folds");
    rep.repeat_errors.assign(static_cast<std::size_t>(grid.repeats), Matrix::Zero(nl, na));
    parallel_for(static_cast<std::size_t>(grid.repeats), [&](std::size_t r) {
      Rng rng = make_rng(seed, {r});
      const auto folds = kfold_split(data.n(), grid.folds, rng);
      Matrix& surf = rep.repeat_errors[r];
      for (const IndexList& test : folds) {
        IndexList train;
        train.reserve(static_cast<std::size_t>(data.n()) - test.size());
        for (Index i = 0, t = 0; i < data.n(); ++i) {
          if (t < static_cast<Index>(test.size()) && test[static_cast<std::size_t>(t)] == i) {
            ++t;
            continue;
          }
          train.push_back(i);
        }
        const GramProblem prob = make_gram(data, train);
        const Dataset held = data.rows(test);
        for (Index l = 0; l < nl; ++l)
          for (Index a = 0; a < na; ++a) {
            double score = std::numeric_limits<double>::infinity();
            try {
              const auto [l1, l2] = mixing_to_direct(grid.lambdas[static_cast<std::size_t>(l)],
                                                     grid.alphas[static_cast<std::size_t>(a)]);
              const Vector beta = solve_enet(prob, l1, l2, lars_step_cap);
              const Vector err = held.y() - held.predict(beta);
              if (err.allFinite()) score = fold_score(err.array().square(), grid.trimmed_mse);
            } catch (const std::exception&) {
            }
            surf(l, a) += score / static_cast<double>(folds.size());
          }
      }
    });
    rep.error_surface = Matrix::Zero(nl, na);
    for (const Matrix& m : rep.repeat_errors) rep.error_surface += m;
    rep.error_surface /= static_cast<double>(grid.repeats);
  }
  const auto [l, a] = choose_cell(rep.error_surface);
  rep.lambda_index = l;
  rep.alpha_index = a;
  rep.lambda_star = grid.lambdas[static_cast<std::size_t>(l)];
  rep.alpha_star = grid.alphas[static_cast<std::size_t>(a)];
  return rep;
}

}  // namespace lstreg
