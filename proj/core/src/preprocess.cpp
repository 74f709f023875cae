#include "demograph/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "demograph/common.hpp"
#include "demograph/features.hpp"

namespace demograph {

double log_transform(double x) {
  if (x < 0)
    throw DataError("log transform of negative value " + std::to_string(x));
  return std::log10(x + 1.0);
}

std::vector<double> minmax_rescale(const std::vector<double>& column) {
  std::vector<double> out(column.size(), 0.0);
  if (column.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
  const double lo = *lo_it, hi = *hi_it;
  if (hi > lo) {
    const double inv = 1.0 / (hi - lo);
    for (std::size_t i = 0; i < column.size(); ++i)
      out[i] = (column[i] - lo) * inv;
  }
  return out;
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double pos = p * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

ColumnSummary summarize_column(const std::vector<double>& column) {
  if (column.empty()) throw DataError("summary of an empty column");
  ColumnSummary s;
  s.count = column.size();

  double sum = 0;
  for (double x : column) sum += x;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count >= 2) {
    double ss = 0;
    for (double x : column) ss += (x - s.mean) * (x - s.mean);
    s.std_dev = std::sqrt(ss / static_cast<double>(s.count - 1));
  } else {
    s.std_dev = std::numeric_limits<double>::quiet_NaN();
  }

  std::vector<double> sorted(column);
  std::sort(sorted.begin(), sorted.end());
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.50);
  s.q3 = quantile_sorted(sorted, 0.75);
  if (s.median != 0) {
    s.iqr_ratio_defined = true;
    s.iqr_ratio = (s.q3 - s.q1) / s.median;
  }
  return s;
}

RowMatrix widen_with_logs(const RowMatrix& features) {
  RowMatrix m(features.rows, features.cols * 2);
  parallel_for(features.rows, [&](std::size_t r) {
    const double* src = features.row(r);
    double* dst = m.row(r);
    for (std::size_t c = 0; c < features.cols; ++c) {
      dst[c] = src[c];
      dst[features.cols + c] = log_transform(src[c]);
    }
  });
  return m;
}

std::vector<std::string> model_column_names() {
  std::vector<std::string> names;
  names.reserve(2 * kNumFeatures);
  for (std::string_view n : feature_names()) names.emplace_back(n);
  for (std::string_view n : feature_names())
    names.emplace_back(std::string(n) + "_log");
  return names;
}

ScalingParams fit_minmax(const RowMatrix& m,
                         const std::vector<std::uint32_t>* rows) {
  ScalingParams p;
  p.min.assign(m.cols, std::numeric_limits<double>::infinity());
  p.max.assign(m.cols, -std::numeric_limits<double>::infinity());
  auto fold_row = [&](std::size_t r) {
    const double* row = m.row(r);
    for (std::size_t c = 0; c < m.cols; ++c) {
      p.min[c] = std::min(p.min[c], row[c]);
      p.max[c] = std::max(p.max[c], row[c]);
    }
  };
  if (rows) {
    for (std::uint32_t r : *rows) fold_row(r);
  } else {
    for (std::size_t r = 0; r < m.rows; ++r) fold_row(r);
  }
  if ((rows && rows->empty()) || m.rows == 0) {
    // Nothing to fit on: identity-safe parameters.
    p.min.assign(m.cols, 0.0);
    p.max.assign(m.cols, 0.0);
  }
  return p;
}

void apply_minmax(RowMatrix& m, const ScalingParams& p) {
  if (p.min.size() != m.cols)
    throw DataError("scaling parameter width does not match matrix");
  std::vector<double> inv(m.cols, 0.0);
  for (std::size_t c = 0; c < m.cols; ++c)
    if (p.max[c] > p.min[c]) inv[c] = 1.0 / (p.max[c] - p.min[c]);
  parallel_for(m.rows, [&](std::size_t r) {
    double* row = m.row(r);
    for (std::size_t c = 0; c < m.cols; ++c)
      row[c] = (row[c] - p.min[c]) * inv[c];
  });
}

RowMatrix assemble_model_matrix(const RowMatrix& features) {
  for (std::size_t r = 0; r < features.rows; ++r) {
    const double* row = features.row(r);
    for (std::size_t c = 0; c < features.cols; ++c)
      if (!std::isfinite(row[c]))
        throw DataError("non-finite feature at row " + std::to_string(r) +
                        ", column " + std::to_string(c));
  }
  RowMatrix m = widen_with_logs(features);
  apply_minmax(m, fit_minmax(m));
  return m;
}

}  // namespace demograph
