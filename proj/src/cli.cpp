#include "lstreg/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "lstreg/bound.hpp"
#include "lstreg/breakdown.hpp"
#include "lstreg/data_io.hpp"
#include "lstreg/error.hpp"
#include "lstreg/methods.hpp"
#include "lstreg/parallel.hpp"
#include "lstreg/simulation.hpp"
#include "lstreg/svg.hpp"

namespace lstreg {

using json = nlohmann::ordered_json;

namespace {

struct Common {
  std::string output_dir = ".";
  std::vector<std::string> formats;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
};

struct AaFlags {
  double alpha = 1.0;
  double gamma = 1.0;
  int repeats = 50;
  int candidates = 0;
  int cv_repeats = 10;
  int cv_folds = 5;
  int grid_size = 10;
  int lars_cap = kDefaultLarsSteps;
};

struct InputFlags {
  std::string input;
  std::string response;
  bool intercept = false;
  std::string delimiter = ",";
  bool no_header = false;
};

json vec_json(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json penalty_json(const PenaltySpec& p) {
  return json{{"lambda1", p.lambda1},          {"lambda2", p.lambda2},        {"lambda_star", p.lambda_star()},
              {"alpha_star", p.alpha_star()},  {"gamma", p.gamma},            {"alpha", p.alpha},
              {"lambda0", p.lambda0}};
}

json fit_json(const FitResult& f) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["method"] = f.method;
  j["seed"] = f.seed;
  j["beta"] = vec_json(f.beta);
  j["objective"] = {{"total", f.objective.total},
                    {"loss", f.objective.loss_part},
                    {"penalty", f.objective.penalty_part}};
  j["trim"] = {{"k", f.trim.k},
               {"kept", f.trim.kept},
               {"center", f.trim.center},
               {"scale", f.trim.scale},
               {"degenerate", f.trim.degenerate}};
  j["selected_penalty"] = f.selected_penalty ? penalty_json(*f.selected_penalty) : json(nullptr);
  j["candidates_evaluated"] = f.candidates_evaluated;
  if (f.kkt) j["kkt"] = {{"ok", f.kkt->ok}, {"max_violation", f.kkt->max_violation}};
  j["warnings"] = f.warnings;
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw InputError("output-not-writable", "cannot write '" + path.string() + "'");
  o << content;
  if (!o) throw InputError("output-not-writable", "failed writing '" + path.string() + "'");
}

class Outputs {
 public:
  explicit Outputs(const Common& c) : dir_(c.output_dir), formats_(c.formats) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw InputError("output-not-writable", "cannot create '" + dir_.string() + "': " + ec.message());
  }
  bool wants(const std::string& fmt) const {
    return formats_.empty() || std::find(formats_.begin(), formats_.end(), fmt) != formats_.end();
  }
  void write(const std::string& name, const std::string& content) {
    write_file(dir_ / name, content);
    written_.push_back((dir_ / name).string());
  }
  void json_file(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }
  const std::vector<std::string>& written() const { return written_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> formats_;
  std::vector<std::string> written_;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--output-dir", c.output_dir, "Directory for reports")->capture_default_str();
  sub->add_option("--format", c.formats, "Output formats to write (csv, json, svg); default all")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  sub->add_option("--seed", c.seed, "Master RNG seed (random when omitted)");
  sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
}

void add_aa(CLI::App* sub, AaFlags& a) {
  sub->add_option("--alpha", a.alpha, "Trimming level (>= 1)")->capture_default_str();
  sub->add_option("--gamma", a.gamma, "Exponent of the first penalty")->capture_default_str();
  sub->add_option("--repeats", a.repeats, "Outer candidate repeats")->capture_default_str();
  sub->add_option("--candidates", a.candidates, "Candidates per repeat (at least p)")->capture_default_str();
  sub->add_option("--cv-repeats", a.cv_repeats, "Cross-validation repeats")->capture_default_str();
  sub->add_option("--cv-folds", a.cv_folds, "Cross-validation folds")->capture_default_str();
  sub->add_option("--grid-size", a.grid_size, "Points per grid axis")->capture_default_str();
  sub->add_option("--lars-steps", a.lars_cap, "LARS step cap")->capture_default_str();
}

void add_input(CLI::App* sub, InputFlags& in, bool required = true) {
  auto* o = sub->add_option("--input", in.input, "CSV file with predictors and response");
  if (required) o->required();
  sub->add_option("--response", in.response, "Response column name (default: last column)");
  sub->add_flag("--intercept", in.intercept, "Fit an unpenalized intercept");
  sub->add_option("--delimiter", in.delimiter, "Field delimiter")->capture_default_str();
  sub->add_flag("--no-header", in.no_header, "The CSV has no header row");
}

CsvOptions csv_options(const InputFlags& in) {
  if (in.delimiter.size() != 1) throw InvalidArgument("--delimiter must be a single character");
  return CsvOptions{in.delimiter[0], !in.no_header};
}

Dataset load_dataset(const InputFlags& in, std::ostream& err, json& echo) {
  const RawTable t = load_csv(in.input, csv_options(in));
  for (const auto& w : t.warnings) err << "warning: " << w << "\n";
  Index resp = t.cols() - 1;
  if (!in.response.empty()) {
    auto it = std::find(t.names.begin(), t.names.end(), in.response);
    if (it == t.names.end()) throw InvalidArgument("response column '" + in.response + "' not found");
    resp = static_cast<Index>(it - t.names.begin());
  }
  echo["input"] = in.input;
  echo["response"] = t.names[static_cast<std::size_t>(resp)];
  echo["rows"] = t.rows();
  echo["rejected_rows"] = t.warnings.size();
  echo["intercept"] = in.intercept;
  return table_to_dataset(t, resp, in.intercept);
}

MethodOptions method_options(const AaFlags& a, std::uint64_t seed) {
  MethodOptions o;
  o.aa.alpha = a.alpha;
  o.aa.gamma = a.gamma;
  o.aa.outer_repeats = a.repeats;
  o.aa.candidates_per_repeat = a.candidates;
  o.aa.lars_step_cap = a.lars_cap;
  o.aa.seed = seed;
  o.cv_repeats = a.cv_repeats;
  o.cv_folds = a.cv_folds;
  o.grid_size = a.grid_size;
  o.lst_enet_grid = CvGrid::relative_default(a.grid_size);
  o.lst_enet_grid.folds = a.cv_folds;
  o.lst_enet_grid.repeats = a.cv_repeats;
  o.seed = seed;
  return o;
}

json aa_json(const AaFlags& a) {
  return json{{"alpha", a.alpha},           {"gamma", a.gamma},         {"repeats", a.repeats},
              {"candidates", a.candidates}, {"cv_repeats", a.cv_repeats}, {"cv_folds", a.cv_folds},
              {"grid_size", a.grid_size},   {"lars_steps", a.lars_cap}};
}

Design parse_design(const std::string& s) { return s == "II" ? Design::kII : Design::kI; }
Scheme parse_scheme(const std::string& s) { return s == "II" ? Scheme::kII : Scheme::kI; }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

json summary_stats(const std::vector<double>& v) {
  if (v.empty()) return json{{"count", 0}, {"median", nullptr}, {"q1", nullptr}, {"q3", nullptr}};
  return json{{"count", v.size()}, {"median", quantile(v, 0.5)}, {"q1", quantile(v, 0.25)}, {"q3", quantile(v, 0.75)}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust penalized regression by depth-trimmed least squares"};
  app.require_subcommand(1);
  Common common;
  AaFlags aa;
  InputFlags input;

  // fit
  std::string method;
  double lambda1 = -1.0, lambda2 = -1.0, ridge_lambda = 1.0;
  Index lts_h = 0;
  auto* fit = app.add_subcommand("fit", "Fit one estimator to a CSV data set");
  add_common(fit, common);
  add_aa(fit, aa);
  add_input(fit, input);
  fit->add_option("--method", method, "ls, ridge, lts, lasso, lars, enet, lst or lst-enet")
      ->required()
      ->check(CLI::IsMember(method_names()));
  fit->add_option("--lambda1", lambda1, "Fixed first penalty (lasso/enet); CV when omitted");
  fit->add_option("--lambda2", lambda2, "Fixed second penalty (enet)");
  fit->add_option("--ridge-lambda", ridge_lambda, "Ridge penalty")->capture_default_str();
  fit->add_option("--lts-h", lts_h, "LTS coverage (default floor((n+p+1)/2))");

  // cv
  bool trimmed_mse = false;
  auto* cv = app.add_subcommand("cv", "Cross-validate the elastic-net penalty grid");
  add_common(cv, common);
  add_aa(cv, aa);
  add_input(cv, input);
  cv->add_flag("--trimmed-mse", trimmed_mse, "Score folds by the smallest 80% of squared errors");

  // simulate
  std::string design = "I", scheme = "I", methods = "lst-enet,lasso,lars,enet";
  Index n = 100, p = 50;
  double eps = 0.0, sigma = 0.5, split = 0.7;
  int reps = 20;
  bool clean_test = false, variance_squared = false;
  auto* sim = app.add_subcommand("simulate", "Run a simulation study and emit metrics, boxplots and a summary");
  add_common(sim, common);
  add_aa(sim, aa);
  sim->add_option("--design", design, "Design I or II")->check(CLI::IsMember({"I", "II"}))->capture_default_str();
  sim->add_option("--scheme", scheme, "Contamination scheme I or II")
      ->check(CLI::IsMember({"I", "II"}))
      ->capture_default_str();
  sim->add_option("--n", n, "Sample size")->capture_default_str();
  sim->add_option("--p", p, "Number of predictors")->capture_default_str();
  sim->add_option("--eps", eps, "Contamination level in [0, 0.5)")->capture_default_str();
  sim->add_option("--sigma", sigma, "Noise scale")->capture_default_str();
  sim->add_option("--reps", reps, "Replications")->capture_default_str();
  sim->add_option("--methods", methods, "Comma-separated methods")->capture_default_str();
  sim->add_option("--split", split, "Training fraction")->capture_default_str();
  sim->add_flag("--clean-test", clean_test, "Keep contaminated rows out of the test split");
  sim->add_flag("--variance-squared", variance_squared, "Design I rows from N(0, sigma^2 I)");

  // breakdown
  Index m = 1;
  std::vector<double> deltas = {1e2, 1e3, 1e4, 1e5, 1e6};
  std::string bd_method = "lasso";
  Index bd_n = 50, bd_p = 10;
  auto* bd = app.add_subcommand("breakdown", "Probe an estimator with adversarial replacement points");
  add_common(bd, common);
  add_aa(bd, aa);
  add_input(bd, input, false);
  bd->add_option("--method", bd_method, "Estimator to probe")->check(CLI::IsMember(method_names()))->capture_default_str();
  bd->add_option("--m", m, "Number of replaced rows")->capture_default_str();
  bd->add_option("--deltas", deltas, "Increasing adversarial magnitudes");
  bd->add_option("--n", bd_n, "Generated sample size (without --input)")->capture_default_str();
  bd->add_option("--p", bd_p, "Generated predictors (without --input)")->capture_default_str();
  bd->add_option("--sigma", sigma, "Noise scale of generated data")->capture_default_str();

  // bound
  double delta = 0.1;
  Index bn = 100, bp = 20;
  int breps = 200;
  auto* bound = app.add_subcommand("bound", "Monte Carlo check of the prediction-error bound");
  add_common(bound, common);
  add_aa(bound, aa);
  bound->add_option("--delta", delta, "Confidence parameter in (0, 1)")->capture_default_str();
  bound->add_option("--n", bn, "Sample size")->capture_default_str();
  bound->add_option("--p", bp, "Predictors")->capture_default_str();
  bound->add_option("--sigma", sigma, "Noise scale")->capture_default_str();
  bound->add_option("--reps", breps, "Replications")->capture_default_str();

  // screen
  std::string responses_path;
  Index k1 = 100, p_target = 1000;
  double ratio = 0.7;
  auto* screen = app.add_subcommand("screen", "Pick a response by median MAD and screen predictors");
  add_common(screen, common);
  add_input(screen, input);
  screen->add_option("--responses", responses_path, "CSV of candidate responses")->required();
  screen->add_option("--k1", k1, "Strongest columns kept")->capture_default_str();
  screen->add_option("--p-target", p_target, "Total columns kept")->capture_default_str();
  screen->add_option("--split", ratio, "Training fraction")->capture_default_str();

  // metrics
  std::string truth_path, estimate_path;
  auto* metrics = app.add_subcommand("metrics", "Accuracy metrics of an estimate against a known truth");
  add_common(metrics, common);
  add_input(metrics, input, false);
  metrics->add_option("--truth", truth_path, "CSV with the true coefficients in one column")->required();
  metrics->add_option("--estimate", estimate_path, "CSV column or fit JSON with the estimate")->required();

  auto fail = [&](const std::string& kind, const std::string& msg, int code) {
    json j{{"schema_version", kSchemaVersion}, {"error", {{"kind", kind}, {"message", msg}, {"exit_code", code}}}};
    err << j.dump() << "\n";
    return code;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), kExitValidation);
  }

  CLI::App* active = app.get_subcommands().front();
  common.seed_given = active->count("--seed") > 0;
  if (!common.seed_given) {
    common.seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
    err << "note: no --seed given, using " << common.seed << "\n";
  }
  set_max_threads(static_cast<unsigned>(common.threads));

  try {
    Outputs outs(common);
    // Thread count is deliberately left out: results do not depend on it.
    json echo{{"schema_version", kSchemaVersion}, {"command", active->get_name()}, {"seed", common.seed}};
    const std::string name = active->get_name();

    if (name == "fit") {
      const Dataset data = load_dataset(input, err, echo);
      MethodOptions o = method_options(aa, common.seed);
      o.lambda1 = lambda1;
      o.lambda2 = lambda2;
      o.ridge_lambda = ridge_lambda;
      o.lts_h = lts_h;
      echo["method"] = method;
      echo["aa"] = aa_json(aa);
      echo["lambda1"] = lambda1;
      echo["lambda2"] = lambda2;
      echo["ridge_lambda"] = ridge_lambda;
      echo["h"] = lts_h;
      const FitResult f = fit_method(method, data, o);
      outs.json_file("fit.json", fit_json(f));
      outs.json_file("config.json", echo);
      out << method << ": objective " << f.objective.total << ", kept " << f.trim.k << " of " << data.n() << "\n";
    } else if (name == "cv") {
      const Dataset data = load_dataset(input, err, echo);
      CvGrid g = CvGrid::relative_default(aa.grid_size);
      g.folds = aa.cv_folds;
      g.repeats = aa.cv_repeats;
      g.trimmed_mse = trimmed_mse;
      echo["aa"] = aa_json(aa);
      echo["trimmed_mse"] = trimmed_mse;
      const CvReport rep = cv_select(data, g, common.seed, aa.lars_cap);
      json surface = json::array();
      for (Index l = 0; l < rep.error_surface.rows(); ++l) {
        json row = json::array();
        for (Index a = 0; a < rep.error_surface.cols(); ++a) row.push_back(rep.error_surface(l, a));
        surface.push_back(row);
      }
      json j{{"schema_version", kSchemaVersion},
             {"lambda0", rep.lambda0},
             {"lambdas", rep.grid.lambdas},
             {"alphas", rep.grid.alphas},
             {"error_surface", surface},
             {"chosen", {{"lambda_star", rep.lambda_star}, {"alpha_star", rep.alpha_star}}}};
      if (outs.wants("json")) outs.json_file("cv.json", j);
      outs.json_file("config.json", echo);
      out << "chosen lambda* " << rep.lambda_star << ", alpha* " << rep.alpha_star << "\n";
    } else if (name == "simulate") {
      SimulationSpec spec;
      spec.design = parse_design(design);
      spec.scheme = parse_scheme(scheme);
      spec.n = n;
      spec.p = p;
      spec.eps = eps;
      spec.sigma = sigma;
      spec.replications = reps;
      spec.seed = common.seed;
      spec.clean_test = clean_test;
      spec.design_variance_squared = variance_squared;
      spec.split_ratio = split;
      spec.validate();
      const auto list = split_list(methods);
      echo["design"] = design;
      echo["scheme"] = scheme;
      echo["n"] = n;
      echo["p"] = p;
      echo["eps"] = eps;
      echo["sigma"] = sigma;
      echo["reps"] = reps;
      echo["methods"] = list;
      echo["split"] = split;
      echo["clean_test"] = clean_test;
      echo["variance_squared"] = variance_squared;
      echo["aa"] = aa_json(aa);
      const ExperimentTable t = run_experiment(spec, list, method_options(aa, common.seed));
      if (outs.wants("csv")) outs.write("metrics.csv", t.to_csv());
      if (outs.wants("svg"))
        for (const auto& metric : metric_names()) {
          std::vector<BoxGroup> groups;
          for (const auto& mth : list) groups.emplace_back(mth, t.values(mth, metric));
          outs.write(metric + ".svg", boxplot_svg(metric, groups));
        }
      json summary{{"schema_version", kSchemaVersion}, {"methods", json::object()}};
      for (const auto& mth : list) {
        json mj;
        for (const auto& metric : metric_names()) mj[metric] = summary_stats(t.values(mth, metric));
        mj["emse"] = opt_json(t.emse.at(mth));
        summary["methods"][mth] = mj;
      }
      if (outs.wants("json")) outs.json_file("summary.json", summary);
      outs.json_file("config.json", echo);
      out << "simulated " << reps << " replications of " << list.size() << " methods\n";
    } else if (name == "breakdown") {
      Dataset data = [&] {
        if (!input.input.empty()) return load_dataset(input, err, echo);
        SimulationSpec spec;
        spec.n = bd_n;
        spec.p = bd_p;
        spec.sigma = sigma;
        Rng rng = make_rng(common.seed, {0xB0});
        echo["n"] = bd_n;
        echo["p"] = bd_p;
        echo["sigma"] = sigma;
        return gen_design(spec, rng).data;
      }();
      echo["method"] = bd_method;
      echo["m"] = m;
      echo["deltas"] = deltas;
      echo["aa"] = aa_json(aa);
      MethodOptions o = method_options(aa, common.seed);
      // Penalties chosen once on the clean sample and then held fixed.
      if (bd_method == "lasso" || bd_method == "enet" || bd_method == "lars") {
        const FitResult clean = fit_method(bd_method, data, o);
        o.lambda1 = clean.selected_penalty->lambda1;
        o.lambda2 = clean.selected_penalty->lambda2;
        echo["fixed_lambda1"] = o.lambda1;
        echo["fixed_lambda2"] = o.lambda2;
      }
      const std::string fit_name = bd_method == "lars" ? "lasso" : bd_method;
      const BreakdownTrace tr =
          breakdown_probe(data, [&](const Dataset& d) { return fit_method(fit_name, d, o).beta; }, m, deltas);
      json j{{"schema_version", kSchemaVersion}, {"method", bd_method}, {"m", tr.m},
             {"deltas", tr.deltas},             {"clean_norm", tr.clean_norm}};
      json norms = json::array();
      for (double v : tr.norms) norms.push_back(std::isfinite(v) ? json(v) : json(nullptr));
      j["norms"] = norms;
      j["verdict"] = tr.verdict;
      j["failures"] = tr.failures;
      if (outs.wants("json")) outs.json_file("breakdown.json", j);
      if (outs.wants("svg")) outs.write("breakdown.svg", loglog_trace_svg(bd_method + ", m = " + std::to_string(m), tr.deltas, tr.norms));
      outs.json_file("config.json", echo);
      out << bd_method << " with m = " << m << ": " << tr.verdict << "\n";
    } else if (name == "bound") {
      if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("--delta must lie in (0, 1)");
      if (breps < 1) throw InvalidArgument("--reps must be >= 1");
      echo["delta"] = delta;
      echo["n"] = bn;
      echo["p"] = bp;
      echo["sigma"] = sigma;
      echo["reps"] = breps;
      echo["aa"] = aa_json(aa);
      SimulationSpec spec;
      spec.n = bn;
      spec.p = bp;
      spec.sigma = sigma;
      spec.validate();
      std::vector<BoundReport> reports(static_cast<std::size_t>(breps));
      parallel_for(reports.size(), [&](std::size_t r) {
        Rng rng = make_rng(common.seed, {0xB5, r});
        const GeneratedInstance inst = gen_design(spec, rng);
        const double cx = inst.data.x().colwise().norm().maxCoeff();
        const double q1 = bound_q1(bn, bp, cx, sigma, delta);
        AaConfig cfg = method_options(aa, derive_seed(common.seed, {0xB6, r})).aa;
        const FitResult f = fit_lst_enet(inst.data, cfg, CvGrid::fixed(q1, 0.0));
        reports[r] = bound_check(inst.data, inst.beta0, f, delta, sigma);
      });
      std::size_t holds = 0, holds_alt = 0;
      json runs = json::array();
      for (const auto& b : reports) {
        holds += b.holds;
        holds_alt += b.holds_alternate;
        runs.push_back({{"lhs", b.lhs}, {"rhs", b.rhs}, {"rhs_alternate", b.rhs_alternate}, {"q1", b.q1},
                        {"q2", b.q2}, {"n_d", b.n_d}, {"c_x", b.c_x}, {"holds", b.holds}});
      }
      const double coverage = static_cast<double>(holds) / static_cast<double>(breps);
      json j{{"schema_version", kSchemaVersion},
             {"coverage", coverage},
             {"coverage_alternate", static_cast<double>(holds_alt) / static_cast<double>(breps)},
             {"target", 1.0 - delta},
             {"runs", runs}};
      if (outs.wants("json")) outs.json_file("bound.json", j);
      outs.json_file("config.json", echo);
      out << "bound held in " << holds << " of " << breps << " runs\n";
    } else if (name == "screen") {
      if (k1 > p_target) throw InvalidArgument("--k1 must not exceed --p-target");
      const CsvOptions copt = csv_options(input);
      const RawTable preds = load_csv(input.input, copt);
      const RawTable resp = load_csv(responses_path, copt);
      for (const auto& w : preds.warnings) err << "warning: " << w << "\n";
      for (const auto& w : resp.warnings) err << "warning: " << w << "\n";
      if (preds.rows() != resp.rows())
        throw InvalidArgument("predictor and response tables have different row counts after ingestion");
      const Index col = select_response(resp);
      const Vector y = resp.values.col(col);
      const ScreenResult sr = screen_predictors(preds, y, k1, p_target);
      echo["input"] = input.input;
      echo["responses"] = responses_path;
      echo["k1"] = k1;
      echo["p_target"] = p_target;
      echo["split"] = ratio;
      json cols = json::array();
      for (std::size_t i = 0; i < sr.columns.size(); ++i) {
        const Index c = sr.columns[i];
        const bool top = std::find(sr.top.begin(), sr.top.end(), c) != sr.top.end();
        cols.push_back({{"index", c},
                        {"name", preds.names[static_cast<std::size_t>(c)]},
                        {"abs_spearman", sr.scores[i]},
                        {"reason", top ? "strongest" : "weakest"}});
      }
      json manifest{{"schema_version", kSchemaVersion},
                    {"response", {{"index", col}, {"name", resp.names[static_cast<std::size_t>(col)]},
                                  {"reason", "median MAD across response columns"}}},
                    {"columns", cols}};
      RawTable screened;
      for (Index c : sr.columns) screened.names.push_back(preds.names[static_cast<std::size_t>(c)]);
      screened.names.push_back(resp.names[static_cast<std::size_t>(col)]);
      screened.values.resize(preds.rows(), static_cast<Index>(sr.columns.size()) + 1);
      for (std::size_t i = 0; i < sr.columns.size(); ++i)
        screened.values.col(static_cast<Index>(i)) = preds.values.col(sr.columns[i]);
      screened.values.col(screened.values.cols() - 1) = y;
      Rng rng = make_rng(common.seed, {0x5C});
      const auto [train, test] = split_indices(preds.rows(), ratio, rng);
      auto subset = [&](const IndexList& rows) {
        RawTable t = screened;
        t.values.resize(static_cast<Index>(rows.size()), screened.cols());
        for (std::size_t r = 0; r < rows.size(); ++r) t.values.row(static_cast<Index>(r)) = screened.values.row(rows[r]);
        return t;
      };
      manifest["train_rows"] = train;
      manifest["test_rows"] = test;
      if (outs.wants("json")) outs.json_file("manifest.json", manifest);
      if (outs.wants("csv")) {
        outs.write("train.csv", format_csv(subset(train)));
        outs.write("test.csv", format_csv(subset(test)));
      }
      outs.json_file("config.json", echo);
      out << "response " << resp.names[static_cast<std::size_t>(col)] << ", kept " << sr.columns.size()
          << " predictors\n";
    } else if (name == "metrics") {
      CsvOptions copt = csv_options(input);
      const RawTable truth = load_csv(truth_path, copt);
      Vector beta0 = truth.values.col(0);
      Vector est;
      if (estimate_path.size() > 5 && estimate_path.substr(estimate_path.size() - 5) == ".json") {
        std::ifstream in(estimate_path);
        if (!in) throw InputError("input-not-found", "cannot open '" + estimate_path + "'");
        json fj;
        try {
          fj = json::parse(in);
        } catch (const std::exception& e) {
          throw InputError("malformed-input", estimate_path + ": " + e.what());
        }
        const auto b = fj.at("beta").get<std::vector<double>>();
        est = Eigen::Map<const Vector>(b.data(), static_cast<Index>(b.size()));
      } else {
        est = load_csv(estimate_path, copt).values.col(0);
      }
      std::optional<Dataset> test;
      if (!input.input.empty()) test = load_dataset(input, err, echo);
      const MetricSet ms = compute_metrics(beta0, est, test ? &*test : nullptr);
      echo["truth"] = truth_path;
      echo["estimate"] = estimate_path;
      json j{{"schema_version", kSchemaVersion}, {"l2_error", ms.l2_error}, {"tsdr", opt_json(ms.tsdr)},
             {"fsdr", opt_json(ms.fsdr)},        {"rmse", opt_json(ms.rmse)}};
      if (outs.wants("json")) outs.json_file("metrics.json", j);
      outs.json_file("config.json", echo);
      out << "l2_error " << ms.l2_error << "\n";
    }
    return kExitOk;
  } catch (const InvalidArgument& e) {
    return fail(e.kind(), e.what(), kExitValidation);
  } catch (const InputError& e) {
    return fail(e.kind(), e.what(), kExitValidation);
  } catch (const Error& e) {
    if (e.kind() == "degenerate-selection" || e.kind() == "undefined-correlation")
      return fail(e.kind(), e.what(), kExitValidation);
    return fail(e.kind(), e.what(), kExitRuntime);
  } catch (const std::exception& e) {
    return fail("runtime-error", e.what(), kExitRuntime);
  }
}

}  // namespace lstreg
