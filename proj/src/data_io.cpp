#include "lstreg/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "lstreg/error.hpp"
#include "lstreg/parallel.hpp"
#include "lstreg/robust_stats.hpp"
#include "lstreg/simulation.hpp"

namespace lstreg {

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size() && std::isfinite(out);
}

}  // namespace

RawTable parse_csv(const std::string& text, const CsvOptions& options, const std::string& source) {
  RawTable t;
  t.source = source;
  std::istringstream in(text);
  std::string line;
  std::size_t width = 0;
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 0;
  bool have_header = !options.header;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto cells = split_line(line, options.delimiter);
    if (!have_header) {
      for (auto& c : cells) t.names.push_back(trim(c));
      width = cells.size();
      have_header = true;
      continue;
    }
    if (width == 0) {
      width = cells.size();
      for (std::size_t j = 0; j < width; ++j) t.names.push_back("x" + std::to_string(j + 1));
    }
    if (cells.size() != width)
      throw InputError("ragged-rows", source + ": line " + std::to_string(lineno) + " has " +
                                          std::to_string(cells.size()) + " fields, expected " + std::to_string(width));
    std::vector<double> vals(width);
    bool ok = true;
    for (std::size_t j = 0; j < width && ok; ++j) {
      if (!parse_number(cells[j], vals[j])) {
        ok = false;
        t.warnings.push_back(source + ": line " + std::to_string(lineno) + " rejected, column '" + t.names[j] +
                             "' is not a finite number");
      }
    }
    if (ok) rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw InputError("no-usable-rows", source + ": no usable data rows");
  t.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) t.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return t;
}

RawTable load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("input-not-found", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str(), options, path);
}

std::string format_csv(const RawTable& table, char delimiter) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (Index j = 0; j < table.cols(); ++j) os << (j ? std::string(1, delimiter) : "") << table.names[static_cast<std::size_t>(j)];
  os << '\n';
  for (Index i = 0; i < table.rows(); ++i) {
    for (Index j = 0; j < table.cols(); ++j) os << (j ? std::string(1, delimiter) : "") << table.values(i, j);
    os << '\n';
  }
  return os.str();
}

Dataset table_to_dataset(const RawTable& table, Index response, bool intercept) {
  if (response < 0 || response >= table.cols()) throw InvalidArgument("table_to_dataset: response column out of range");
  if (table.cols() < 2) throw InvalidArgument("table_to_dataset: need at least one predictor column");
  Matrix x(table.rows(), table.cols() - 1);
  for (Index j = 0, k = 0; j < table.cols(); ++j)
    if (j != response) x.col(k++) = table.values.col(j);
  return Dataset(std::move(x), table.values.col(response), intercept);
}

Index select_response(const RawTable& responses) {
  const Index c = responses.cols();
  if (c < 1) throw InvalidArgument("select_response: no columns");
  std::vector<std::pair<double, Index>> mads;
  bool any_positive = false;
  for (Index j = 0; j < c; ++j) {
    const Vector col = responses.values.col(j);
    const double m = mad(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())));
    any_positive = any_positive || m > 0.0;
    mads.emplace_back(m, j);
  }
  if (!any_positive) throw Error("degenerate-selection", "select_response: every column has MAD zero");
  std::sort(mads.begin(), mads.end());
  return mads[static_cast<std::size_t>((c - 1) / 2)].second;
}

namespace {

Vector ranks(const Vector& v) {
  const Index n = v.size();
  IndexList idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::sort(idx.begin(), idx.end(), [&](Index a, Index b) { return v[a] < v[b] || (v[a] == v[b] && a < b); });
  Vector r(n);
  for (Index i = 0; i < n;) {
    Index j = i;
    while (j + 1 < n && v[idx[static_cast<std::size_t>(j + 1)]] == v[idx[static_cast<std::size_t>(i)]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (Index k = i; k <= j; ++k) r[idx[static_cast<std::size_t>(k)]] = avg;
    i = j + 1;
  }
  return r;
}

double pearson(const Vector& a, const Vector& b) {
  const Vector ca = a.array() - a.mean(), cb = b.array() - b.mean();
  const double den = std::sqrt(ca.squaredNorm() * cb.squaredNorm());
  return den > 0.0 ? ca.dot(cb) / den : 0.0;
}

}  // namespace

double robust_correlation(const Vector& x, const Vector& y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("robust_correlation: need equal lengths >= 2");
  if ((y.array() == y[0]).all()) throw Error("undefined-correlation", "robust_correlation: response is constant");
  return pearson(ranks(x), ranks(y));
}

ScreenResult screen_predictors(const RawTable& predictors, const Vector& y, Index k1, Index p_target) {
  const Index c = predictors.cols();
  if (y.size() != predictors.rows()) throw InvalidArgument("screen_predictors: response length does not match rows");
  if (p_target < 1 || p_target > c) throw InvalidArgument("screen_predictors: p_target must lie in [1, columns]");
  if (k1 < 0 || k1 > p_target) throw InvalidArgument("screen_predictors: k1 must lie in [0, p_target]");
  if ((y.array() == y[0]).all()) throw Error("undefined-correlation", "screen_predictors: response is constant");
  const Vector ry = ranks(y);
  std::vector<double> score(static_cast<std::size_t>(c));
  parallel_for(score.size(), [&](std::size_t j) {
    score[j] = std::fabs(pearson(ranks(predictors.values.col(static_cast<Index>(j))), ry));
  });
  IndexList order(static_cast<std::size_t>(c));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double sa = score[static_cast<std::size_t>(a)], sb = score[static_cast<std::size_t>(b)];
    return sa > sb || (sa == sb && a < b);
  });
  ScreenResult res;
  res.top.assign(order.begin(), order.begin() + k1);
  // Weakest columns, weakest first (ties by index).
  IndexList rest(order.begin() + k1, order.end());
  std::sort(rest.begin(), rest.end(), [&](Index a, Index b) {
    const double sa = score[static_cast<std::size_t>(a)], sb = score[static_cast<std::size_t>(b)];
    return sa < sb || (sa == sb && a < b);
  });
  res.bottom.assign(rest.begin(), rest.begin() + (p_target - k1));
  res.columns = res.top;
  res.columns.insert(res.columns.end(), res.bottom.begin(), res.bottom.end());
  std::sort(res.columns.begin(), res.columns.end());
  for (Index j : res.columns) res.scores.push_back(score[static_cast<std::size_t>(j)]);
  return res;
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& data, double ratio, Rng& rng) {
  const auto [train, test] = split_indices(data.n(), ratio, rng);
  return {data.rows(train), data.rows(test)};
}

}  // namespace lstreg
