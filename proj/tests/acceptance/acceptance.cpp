// Acceptance runner: one PASS/FAIL line per criterion. With arguments, only
// the named criteria run (e.g. `acceptance A1 B3`). Exit status is nonzero if
// any selected criterion fails.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "../support.hpp"
#include "lstreg/bound.hpp"
#include "lstreg/breakdown.hpp"
#include "lstreg/cli.hpp"
#include "lstreg/data_io.hpp"
#include "lstreg/enet_solvers.hpp"
#include "lstreg/equivariance.hpp"
#include "lstreg/error.hpp"
#include "lstreg/estimators.hpp"
#include "lstreg/kkt.hpp"
#include "lstreg/lars.hpp"
#include "lstreg/methods.hpp"
#include "lstreg/metrics.hpp"
#include "lstreg/objectives.hpp"
#include "lstreg/simulation.hpp"

using namespace lstreg;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string num(double v) { return fmt("%.4g", v); }

double median_of(std::vector<double> v) { return v.empty() ? NAN : quantile(std::move(v), 0.5); }

// ---------------------------------------------------------------- A tier

Outcome a1_grid_oracle() {
  Rng rng(1001);
  double worst = -INFINITY;
  for (int t = 0; t < 20; ++t) {
    const Index p = 1 + t % 2;
    const Index n = testing::uniform_index(p + 2, 8, rng);
    Vector b(p);
    for (Index j = 0; j < p; ++j) b[j] = testing::uniform(-1.5, 1.5, rng);
    const Matrix x = testing::gaussian_matrix(n, p, rng);
    Vector y = x * b + 0.5 * testing::gaussian_vector(n, rng);
    if (t % 3 == 0) y[0] += 8.0;  // one gross outlier in a third of the instances
    const Dataset d(x, y);
    AaConfig c;
    c.seed = static_cast<std::uint64_t>(t);
    const double got = fit_lst(d, 1.0, c).objective.total;
    double best = INFINITY;
    Vector g(p);
    if (p == 1) {
      for (int i = 0; i <= 600; ++i) {
        g[0] = -3.0 + 0.01 * i;
        best = std::min(best, lst_objective(d, g, 1.0).total);
      }
    } else {
      for (int i = 0; i <= 600; ++i)
        for (int j = 0; j <= 600; ++j) {
          g << -3.0 + 0.01 * i, -3.0 + 0.01 * j;
          best = std::min(best, lst_objective(d, g, 1.0).total);
        }
    }
    worst = std::max(worst, got - best);
  }
  return {worst <= 1e-6, "max(fit - grid min) over 20 instances = " + num(worst) + " (limit 1e-6)"};
}

Outcome a2_solver_equivalence() {
  Rng rng(1002);
  double kkt_worst = 0.0, gap_worst = 0.0;
  int kkt_fail = 0, compared = 0, wide = 0;
  for (int t = 0; t < 500; ++t) {
    const Index n = testing::uniform_index(3, 30, rng), p = testing::uniform_index(1, 15, rng);
    wide += p > n;
    const Dataset d = testing::linear_data(n, p, rng);
    const LarsPath path = lars_path(d);
    for (const auto& k : path.knots) {
      const KktReport r = kkt_check(d, k.lambda, 0.0, k.beta, 1e-8);
      kkt_fail += !r.ok;
      kkt_worst = std::max(kkt_worst, r.max_violation);
    }
    if (!(path.lambda0 > 0.0)) continue;
    const double floor = path.knots.back().lambda;
    for (int k = 1; k <= 10; ++k) {
      // Geometric spread from 0.9 lambda0 down to 0.02 lambda0, kept above the
      // last knot (p > n paths end where the active set saturates).
      const double lam = std::max(path.lambda0 * std::pow(0.02 / 0.9, (k - 1) / 9.0) * 0.9, floor);
      const Vector a = lasso_at(path, lam);
      const Vector s = shooting_enet(d, lam, 0.0, 1e-13).beta;
      gap_worst = std::max(gap_worst, (a - s).cwiseAbs().maxCoeff());
      ++compared;
    }
  }
  const bool ok = kkt_fail == 0 && gap_worst <= 1e-6;
  return {ok, std::to_string(kkt_fail) + " knots failed KKT (max violation " + num(kkt_worst) +
                  "); max |lars - shooting| over " + std::to_string(compared) + " lambdas = " + num(gap_worst) +
                  " (limit 1e-6); " + std::to_string(wide) + " of 500 instances had p > n"};
}

Outcome a3_reparam() {
  Rng rng(1003);
  double aug_worst = 0.0, mix_worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Index n = testing::uniform_index(3, 25, rng), p = testing::uniform_index(1, 10, rng);
    const Dataset d = testing::linear_data(n, p, rng);
    const Vector b = testing::gaussian_vector(p, rng);
    const double l1 = testing::uniform(0, 2, rng), l2 = testing::uniform(0.01, 2, rng);
    const double alpha = testing::uniform(1, 3, rng);
    PenaltySpec s;
    s.lambda1 = l1;
    s.lambda2 = l2;
    s.alpha = alpha;
    const double direct = lst_enet_objective(d, b, s).total;

    const AugmentedData aug = reparam_augment(d, l2);
    const double via_aug = augmented_objective(aug, aug.scale * b, l1 / aug.scale, alpha).total;
    aug_worst = std::max(aug_worst, std::fabs(via_aug - direct) / std::max(1.0, std::fabs(direct)));

    const MixingForm m = reparam_mixing(l1, l2);
    const double loss = lst_objective(d, b, alpha).total;
    const double via_mix = loss + m.lambda_star * ((1 - m.alpha_star) * b.cwiseAbs().sum() + m.alpha_star * b.squaredNorm());
    mix_worst = std::max(mix_worst, std::fabs(via_mix - direct) / std::max(1.0, std::fabs(direct)));
  }
  return {aug_worst <= 1e-10 && mix_worst <= 1e-10,
          "max relative gap: augmentation " + num(aug_worst) + ", mixing " + num(mix_worst) + " (limit 1e-10)"};
}

Outcome a4_equivariance() {
  Rng rng(1004);
  MethodOptions o;
  o.aa.outer_repeats = 5;
  o.ridge_lambda = 1.0;
  double worst = 0.0;
  int checks = 0;
  for (int t = 0; t < 10; ++t) {
    const Dataset d = testing::linear_data(testing::uniform_index(10, 40, rng), testing::uniform_index(1, 5, rng), rng);
    for (TransformKind k : {TransformKind::kRegression, TransformKind::kScale, TransformKind::kAffine}) {
      const EquivarianceReport r = equivariance_check("lst", d, Transform::random(k, d, rng), o);
      worst = std::max(worst, r.objective_gap);
      ++checks;
    }
  }
  const Dataset d = testing::linear_data(30, 4, rng);
  const EquivarianceReport ridge = equivariance_check("ridge", d, Transform::random(TransformKind::kRegression, d, rng), o);
  const bool ok = worst <= 1e-8 && ridge.estimate_checked && !ridge.estimate_identity;
  return {ok, "LST objective identities: max gap " + num(worst) + " over " + std::to_string(checks) +
                  " transforms (limit 1e-8); ridge under a regression shift: estimate gap " + num(ridge.estimate_gap) +
                  (ridge.estimate_identity ? " (identity held, violation expected)" : " (violation exhibited)")};
}

Outcome a5_metrics() {
  auto v = [](std::initializer_list<double> xs) {
    Vector out(static_cast<Index>(xs.size()));
    Index i = 0;
    for (double x : xs) out[i++] = x;
    return out;
  };
  std::vector<std::string> failed;
  auto expect = [&](bool c, const char* what) {
    if (!c) failed.emplace_back(what);
  };
  auto throws = [](const std::function<void()>& f) {
    try {
      f();
    } catch (const Error&) {
      return true;
    }
    return false;
  };
  const Vector b0 = v({1, 1, 0, 0});
  expect(l2_error(b0, b0) == 0.0, "l2 equal");
  expect(l2_error(v({1, 0}), v({0, 1})) == 2.0, "l2 (1,0)/(0,1)");
  expect(tsdr(b0, v({0.5, 0, 0, 0})) == 1.0, "tsdr example");
  expect(tsdr(b0, v({1, 1, 1, 1})) == 0.0, "tsdr all nonzero");
  expect(tsdr(b0, b0) == 1.0, "tsdr equal");
  expect(fsdr(b0, v({0.5, 0, 0, 0})) == 0.5, "fsdr example");
  expect(fsdr(b0, b0) == 0.0, "fsdr equal");
  expect(fsdr(b0, Vector::Zero(4)) == 1.0, "fsdr zero");
  expect(throws([&] { tsdr(v({1, 2}), v({0, 0})); }), "tsdr undefined");
  expect(throws([&] { fsdr(v({0, 0}), v({0, 0})); }), "fsdr undefined");
  Matrix x(3, 1);
  x << 1, 2, 3;
  expect(rmse(Dataset(x, 2.0 * x.col(0)), v({2})) == 0.0, "rmse exact");
  expect(rmse(Dataset(x, Vector(2.0 * x.col(0)).array() + 1.5), v({2})) == 1.5, "rmse constant");
  expect(emse({v({1, 2}), v({1, 2})}) == 0.0, "emse identical");
  expect(emse({v({0}), v({2})}) == 1.0, "emse {0,2}");
  expect(throws([&] { emse({v({0})}); }), "emse single");
  expect(theoretical_rbp(11, 1, RbpKind::kLst) == Rational{6, 11}, "rbp 6/11");
  expect(theoretical_rbp(10, 3, RbpKind::kLst) == Rational{4, 10}, "rbp 4/10");
  expect(theoretical_rbp(10, 0, RbpKind::kPenalized, 5) == Rational{6, 10}, "rbp 6/10");
  FitResult at_truth;
  Rng rng(1005);
  Vector beta0;
  const Dataset d = testing::linear_data(30, 4, rng, 0.5, &beta0);
  at_truth.beta = beta0;
  at_truth.selected_penalty = PenaltySpec::from_mixing(0.2, 0.0);
  const BoundReport br = bound_check(d, beta0, at_truth, 0.1, 0.5);
  expect(br.lhs == 0.0 && br.holds, "bound at truth");
  std::string detail = failed.empty() ? "all trivial metric examples exact; rbp 6/11, 4/10, 6/10" : "failed:";
  for (const auto& f : failed) detail += " [" + f + "]";
  return {failed.empty(), detail};
}

Outcome a6_trim_floor() {
  Rng rng(1006);
  int checked = 0, violations = 0;
  while (checked < 1000) {
    const Index n = testing::uniform_index(2, 60, rng);
    Vector r = testing::gaussian_vector(n, rng, testing::uniform(0.1, 10, rng));
    // Some samples get repeated values and outliers.
    if (checked % 4 == 1) r.head(n / 3) *= 100.0;
    if (checked % 4 == 2)
      for (Index i = 0; i < n; i += 3) r[i] = r[0];
    const TrimState t = trim_weights(r, 1.0);
    if (t.degenerate) continue;
    ++checked;
    violations += t.k < (n + 1) / 2;
  }
  return {violations == 0, std::to_string(violations) + " of 1000 non-degenerate calls kept fewer than floor((n+1)/2)"};
}

// ---------------------------------------------------------------- B tier

const std::vector<double> kDeltas{1e2, 1e3, 1e4, 1e5, 1e6};

std::string trace_text(const BreakdownTrace& t) {
  std::string s = "norms";
  for (double v : t.norms) s += " " + num(v);
  return s + "; clean " + num(t.clean_norm);
}

Dataset design_one(Index n, Index p, std::uint64_t seed) {
  SimulationSpec s;
  s.n = n;
  s.p = p;
  Rng rng(seed);
  return gen_design(s, rng).data;
}

Outcome b1_lasso_breaks() {
  const Dataset d = design_one(50, 10, 2001);
  MethodOptions o;
  o.seed = 2001;
  // Penalty chosen by CV on the clean sample, then held fixed.
  const double lambda = fit_method("lasso", d, o).selected_penalty->lambda1;
  const BreakdownTrace t = breakdown_probe(d, [&](const Dataset& z) { return fit_lasso(z, lambda).beta; }, 1, kDeltas);
  return {t.verdict == "broken", "lasso (lambda1 " + num(lambda) + ") m=1: verdict " + t.verdict + "; " + trace_text(t)};
}

Outcome b2_lst_enet_bounded() {
  const Index n = 50;
  const Dataset d = design_one(n, 10, 2002);
  AaConfig select;
  select.outer_repeats = 5;
  select.seed = 2002;
  CvGrid grid = CvGrid::relative_default(10);
  grid.repeats = 2;
  const PenaltySpec pen = *fit_lst_enet(d, select, grid).selected_penalty;
  AaConfig fit;
  fit.seed = 2003;
  const CvGrid fixed = CvGrid::fixed(pen.lambda_star(), pen.alpha_star());
  const Index m = n / 2 - 1;
  const BreakdownTrace t =
      breakdown_probe(d, [&](const Dataset& z) { return fit_lst_enet(z, fit, fixed).beta; }, m, kDeltas);
  double worst = 0.0;
  for (double v : t.norms) worst = std::isfinite(v) ? std::max(worst, v) : INFINITY;
  const bool ok = worst <= 10.0 * t.clean_norm && t.failures.empty();
  return {ok, "lst-enet (lambda* " + num(pen.lambda_star()) + ", alpha* " + num(pen.alpha_star()) + ") m=" +
                  std::to_string(m) + ": max norm / clean norm = " + num(worst / t.clean_norm) + " (limit 10); " +
                  trace_text(t)};
}

Outcome b3_lst_vs_lts_efficiency() {
  const Index n = 100, p = 5;
  bool ok = true;
  std::string detail, wide;
  for (double eps : {0.05, 0.10}) {
    std::vector<Vector> lst, lts, lst3;
    for (int r = 0; r < 100; ++r) {
      SimulationSpec s;
      s.n = n;
      s.p = p;
      s.sigma = 1.0;  // X rows N(0, I), errors N(0, 1)
      Rng rng = make_rng(3000 + static_cast<std::uint64_t>(eps * 100), {static_cast<std::uint64_t>(r)});
      const GeneratedInstance inst = contaminate(gen_design(s, rng), Scheme::kI, eps, rng);
      AaConfig c;
      c.seed = derive_seed(3001, {static_cast<std::uint64_t>(r)});
      lst.push_back(fit_lst(inst.data, 1.0, c).beta);
      lts.push_back(fit_lts(inst.data, (n + p + 1) / 2, c).beta);
      lst3.push_back(fit_lst(inst.data, 3.0, c).beta);
    }
    const double e_lst = emse(lst), e_lts = emse(lts);
    const bool here = e_lst <= e_lts && e_lst >= 0.15 && e_lst <= 0.45;
    ok = ok && here;
    detail += fmt("eps %.0f%%: ", eps * 100) + "EMSE(LST) " + num(e_lst) + ", EMSE(LTS) " + num(e_lts) +
              (here ? " ok" : " FAIL") + "; ";
    wide += fmt(" %.0f%%:", eps * 100) + " " + num(emse(lst3));
  }
  // The verdict uses the default trimming level alpha = 1; alpha = 3 is reported for reference only.
  return {ok, detail + "band [0.15, 0.45]; diagnostic EMSE(LST, alpha=3)" + wide};
}

Outcome b4_bound() {
  const Index n = 100, p = 20;
  const double sigma = 0.5, delta = 0.1;
  int holds = 0, holds_alt = 0, lambda_ok = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    SimulationSpec s;
    s.n = n;
    s.p = p;
    s.sigma = sigma;
    Rng rng = make_rng(4000, {static_cast<std::uint64_t>(r)});
    const GeneratedInstance inst = gen_design(s, rng);
    const double q1 = bound_q1(n, p, inst.data.x().colwise().norm().maxCoeff(), sigma, delta);
    AaConfig c;
    c.outer_repeats = 10;
    c.seed = derive_seed(4001, {static_cast<std::uint64_t>(r)});
    const FitResult f = fit_lst_enet(inst.data, c, CvGrid::fixed(q1, 0.0));
    const BoundReport b = bound_check(inst.data, inst.beta0, f, delta, sigma);
    holds += b.holds;
    holds_alt += b.holds_alternate;
    lambda_ok += b.lambda1_at_least_q1;
  }
  const double cov = static_cast<double>(holds) / reps;
  return {cov >= 0.90, "bound held in " + std::to_string(holds) + "/" + std::to_string(reps) + " runs (coverage " +
                           num(cov) + ", need 0.90); alternate RHS held in " + std::to_string(holds_alt) +
                           "; lambda1 >= q1 in " + std::to_string(lambda_ok)};
}

MethodOptions scaled_options(std::uint64_t seed) {
  MethodOptions o;
  o.seed = seed;
  o.aa.outer_repeats = 2;
  o.lst_enet_grid = CvGrid::relative_default(5);
  o.lst_enet_grid.repeats = 2;
  return o;
}

Outcome b5_contaminated_wide_selection() {
  SimulationSpec s;
  s.n = 50;
  s.p = 100;
  s.eps = 0.10;
  s.scheme = Scheme::kII;
  s.replications = 20;
  s.seed = 5001;
  const ExperimentTable t = run_experiment(s, {"lst-enet", "lasso"}, scaled_options(5001));
  const double l2_enet = median_of(t.values("lst-enet", "l2_error")), l2_lasso = median_of(t.values("lasso", "l2_error"));
  const double f_enet = median_of(t.values("lst-enet", "fsdr")), f_lasso = median_of(t.values("lasso", "fsdr"));
  const bool ok = l2_enet < l2_lasso && f_enet <= f_lasso;
  return {ok, "median L2: lst-enet " + num(l2_enet) + " vs lasso " + num(l2_lasso) + "; median FSDR: lst-enet " +
                  num(f_enet) + " vs lasso " + num(f_lasso) + "; median TSDR: lst-enet " +
                  num(median_of(t.values("lst-enet", "tsdr"))) + " vs lasso " + num(median_of(t.values("lasso", "tsdr")))};
}

Outcome b6_clean_selection() {
  SimulationSpec s;
  s.n = 100;
  s.p = 50;
  s.replications = 20;
  s.seed = 6001;
  const std::vector<std::string> methods{"lst-enet", "lasso", "lars"};
  MethodOptions o = scaled_options(6001);
  o.lst_enet_grid = CvGrid::relative_default(10);
  o.lst_enet_grid.repeats = 2;
  const ExperimentTable t = run_experiment(s, methods, o);
  bool ok = true;
  std::string detail = "median FSDR:";
  for (const auto& m : methods) {
    const double f = median_of(t.values(m, "fsdr"));
    ok = ok && f == 0.0;
    detail += " " + m + " " + num(f) + " (TSDR " + num(median_of(t.values(m, "tsdr"))) + ")";
  }
  return {ok, detail};
}

// ---------------------------------------------------------------- C

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::map<std::string, std::string> dir_contents(const fs::path& d) {
  std::map<std::string, std::string> m;
  for (const auto& e : fs::directory_iterator(d)) m[e.path().filename().string()] = slurp(e.path());
  return m;
}

int run_cli_args(std::vector<std::string> args) {
  args.insert(args.begin(), "lstreg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome c_determinism() {
  const fs::path root = fs::temp_directory_path() / "lstreg_acceptance_c";
  fs::remove_all(root);
  fs::create_directories(root);

  // Inputs shared by the data-driven commands.
  Rng rng(7001);
  Vector beta;
  Dataset d = testing::linear_data(40, 5, rng, 0.5, &beta);
  RawTable t;
  t.names = {"x1", "x2", "x3", "x4", "x5", "y"};
  t.values.resize(40, 6);
  t.values.leftCols(5) = d.x();
  t.values.col(5) = d.y();
  t.values(0, 5) += 30.0;
  std::ofstream(root / "data.csv") << format_csv(t);
  RawTable resp;
  resp.names = {"r0", "r1", "r2"};
  resp.values = testing::gaussian_matrix(40, 3, rng);
  resp.values.col(1) *= 3.0;
  std::ofstream(root / "resp.csv") << format_csv(resp);
  RawTable truth;
  truth.names = {"beta"};
  truth.values = beta;
  std::ofstream(root / "truth.csv") << format_csv(truth);

  const std::string data = (root / "data.csv").string();
  const std::string small_aa[] = {"--repeats", "2", "--cv-repeats", "2", "--grid-size", "4"};
  std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
      {"fit-lst-enet", {"fit", "--input", data, "--method", "lst-enet"}},
      {"fit-lasso", {"fit", "--input", data, "--method", "lasso"}},
      {"fit-lts", {"fit", "--input", data, "--method", "lts"}},
      {"cv", {"cv", "--input", data}},
      {"simulate", {"simulate", "--n", "40", "--p", "20", "--eps", "0.1", "--scheme", "II", "--reps", "3", "--methods",
                    "lst-enet,lasso,lars,enet"}},
      {"breakdown", {"breakdown", "--method", "lst", "--m", "5", "--n", "30", "--p", "3"}},
      {"bound", {"bound", "--n", "40", "--p", "5", "--reps", "4"}},
      {"screen", {"screen", "--input", data, "--responses", (root / "resp.csv").string(), "--k1", "2", "--p-target", "4"}},
  };
  for (auto& [name, args] : commands)
    if (name != "screen") args.insert(args.end(), std::begin(small_aa), std::end(small_aa));

  int identical = 0;
  std::string bad;
  std::size_t files = 0;
  for (const auto& [name, args] : commands) {
    std::vector<std::map<std::string, std::string>> outs;
    for (const char* threads : {"1", "1", "0", "4"}) {
      const fs::path dir = root / (name + "_" + threads + "_" + std::to_string(outs.size()));
      auto a = args;
      a.insert(a.end(), {"--seed", "99", "--threads", threads, "--output-dir", dir.string()});
      if (run_cli_args(a) != 0) {
        bad += " " + name + "(exit)";
        break;
      }
      outs.push_back(dir_contents(dir));
    }
    if (outs.size() == 4 && outs[0] == outs[1] && outs[0] == outs[2] && outs[0] == outs[3]) {
      ++identical;
      files += outs[0].size();
    } else if (outs.size() == 4) {
      bad += " " + name;
    }
  }
  // The metrics command reads a fit produced above.
  const fs::path fit_json = root / "fit-lst-enet_1_0" / "fit.json";
  std::vector<std::map<std::string, std::string>> mouts;
  for (const char* threads : {"1", "4"}) {
    const fs::path dir = root / (std::string("metrics_") + threads);
    if (run_cli_args({"metrics", "--truth", (root / "truth.csv").string(), "--estimate", fit_json.string(), "--seed",
                      "99", "--threads", threads, "--output-dir", dir.string()}) == 0)
      mouts.push_back(dir_contents(dir));
  }
  if (mouts.size() == 2 && mouts[0] == mouts[1]) {
    ++identical;
    files += mouts[0].size();
  } else {
    bad += " metrics";
  }
  const int total = static_cast<int>(commands.size()) + 1;
  return {bad.empty(), std::to_string(identical) + "/" + std::to_string(total) + " command runs byte-identical across reruns and --threads 1/0/4 (" +
                           std::to_string(files) + " files; hardware threads " +
                           std::to_string(std::thread::hardware_concurrency()) + ")" +
                           (bad.empty() ? "" : "; differing:" + bad)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"A1", a1_grid_oracle},   {"A2", a2_solver_equivalence}, {"A3", a3_reparam},     {"A4", a4_equivariance},
      {"A5", a5_metrics},       {"A6", a6_trim_floor},         {"B1", b1_lasso_breaks}, {"B2", b2_lst_enet_bounded},
      {"B3", b3_lst_vs_lts_efficiency},     {"B4", b4_bound},              {"B5", b5_contaminated_wide_selection},  {"B6", b6_clean_selection},
      {"C", c_determinism},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  int failures = 0, ran = 0;
  for (const auto& [id, fn] : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), id) == wanted.end()) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS " : "FAIL ") << id << ": " << o.detail << " [" << fmt("%.1f", secs) << " s]"
              << std::endl;
    failures += !o.pass;
  }
  if (ran == 0) {
    std::cerr << "no criterion matched\n";
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
