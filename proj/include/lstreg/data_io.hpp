#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lstreg/dataset.hpp"
#include "lstreg/rng.hpp"

namespace lstreg {

struct RawTable {
  std::vector<std::string> names;
  Matrix values;  // rows x columns
  std::string source;
  std::vector<std::string> warnings;  // one per rejected row

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }
};

struct CsvOptions {
  char delimiter = ',';
  bool header = true;
};

// Rows with a non-numeric or non-finite cell are dropped with a warning.
// Errors (InputError): input-not-found, ragged-rows, no-usable-rows.
RawTable load_csv(const std::string& path, const CsvOptions& options = {});
RawTable parse_csv(const std::string& text, const CsvOptions& options = {}, const std::string& source = "<memory>");
// Values written with 17 significant digits, so a reload is exact.
std::string format_csv(const RawTable& table, char delimiter = ',');

// Dataset from a table: `response` names the y column, all others are predictors.
Dataset table_to_dataset(const RawTable& table, Index response, bool intercept = false);

// Column whose MAD is the median of the column MADs; with an even count the
// lower of the two middle MADs (ties by column index). Error kind
// degenerate-selection when every column has MAD zero.
Index select_response(const RawTable& responses);

// Spearman rank correlation (average ranks for ties). Returns 0 when x is
// constant; throws Error kind undefined-correlation when y is constant.
double robust_correlation(const Vector& x, const Vector& y);

struct ScreenResult {
  IndexList columns;           // p_target columns, ascending
  std::vector<double> scores;  // |correlation| of each returned column
  IndexList top;               // the k1 strongest, strongest first
  IndexList bottom;            // the p_target - k1 weakest, weakest first
};

ScreenResult screen_predictors(const RawTable& predictors, const Vector& y, Index k1, Index p_target);

// Training part of round(ratio n) rows, seeded.
std::pair<Dataset, Dataset> train_test_split(const Dataset& data, double ratio, Rng& rng);

}  // namespace lstreg
