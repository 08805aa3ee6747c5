#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lstreg/methods.hpp"
#include "lstreg/metrics.hpp"

namespace lstreg {

enum class Design { kI, kII };
enum class Scheme { kI, kII };

struct SimulationSpec {
  Design design = Design::kI;
  Index n = 100;
  Index p = 50;
  double sigma = 0.5;
  double rho1 = 0.95;
  double rho2 = 0.05;
  double eps = 0.0;
  Scheme scheme = Scheme::kI;
  int replications = 1;
  std::uint64_t seed = 0;
  // Design I draws X rows from N(0, sigma I); set to use N(0, sigma^2 I) instead.
  bool design_variance_squared = false;
  // Keep contaminated rows out of the test split.
  bool clean_test = false;
  double split_ratio = 0.7;

  void validate() const;
};

struct GeneratedInstance {
  Dataset data;
  Vector beta0;
  IndexList contaminated_rows;
  Vector e;
  double sigma = 0.5;
};

// First ceil(0.06 p) entries one, the rest zero.
Vector true_beta(Index p);
Index leading_ones(Index p);

GeneratedInstance gen_design(const SimulationSpec& spec, Rng& rng);

// m = floor(eps n) rows sampled without replacement. Both schemes add 20 to
// the noise of those rows and recompute y; scheme I then adds 20 to every
// entry of the rows of X, scheme II replaces them by (1e4, 0, ..., 0) with
// response 1e10.
GeneratedInstance contaminate(const GeneratedInstance& inst, Scheme scheme, double eps, Rng& rng);

// round(ratio n), halves rounded up.
Index training_size(Index n, double ratio);
// Rows split into a training part of training_size(n, ratio) rows and the rest.
std::pair<IndexList, IndexList> split_indices(Index n, double ratio, Rng& rng);

struct ExperimentRow {
  int replication = 0;
  std::string method;
  std::string metric;
  std::optional<double> value;
  std::string note;  // reason for a missing value
};

struct ExperimentTable {
  std::vector<std::string> methods;
  std::vector<ExperimentRow> rows;  // replication-major, then method, then metric
  std::map<std::string, std::optional<double>> emse;  // over replications with a successful fit

  std::vector<double> values(const std::string& method, const std::string& metric) const;
  std::string to_csv() const;
};

inline const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {"l2_error", "tsdr", "fsdr", "rmse"};
  return names;
}

// Replication r draws its data from derive_seed(seed, {r, ...}) and fits every
// method on the training rows with seed derive_seed(seed, {r, 4, method index}).
ExperimentTable run_experiment(const SimulationSpec& spec, const std::vector<std::string>& methods,
                               const MethodOptions& options);

// Median and quartiles with linear interpolation between order statistics.
double quantile(std::vector<double> v, double q);

}  // namespace lstreg
