#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "demograph/matrix.hpp"

namespace demograph {

// T(x) = log10(x + 1). Monotone, T(0) = 0. Throws DataError for x < 0.
double log_transform(double x);

// (x - min) / (max - min) per element; a constant column maps to all zeros
// (it carries no information, and this avoids 0/0).
std::vector<double> minmax_rescale(const std::vector<double>& column);

struct ColumnSummary {
  std::size_t count = 0;
  double mean = 0;
  double std_dev = 0;  // sample (n-1) convention; NaN when count < 2
  double min = 0;
  double q1 = 0;
  double median = 0;
  double q3 = 0;
  double max = 0;
  bool iqr_ratio_defined = false;  // false when median == 0
  double iqr_ratio = 0;            // (q3 - q1) / median
};

// Quantile of a sorted sample by linear interpolation between order
// statistics: position p * (n - 1).
double quantile_sorted(const std::vector<double>& sorted, double p);

ColumnSummary summarize_column(const std::vector<double>& column);

// Per-column affine rescaling parameters.
struct ScalingParams {
  std::vector<double> min;
  std::vector<double> max;
};

// 90-column matrix: the 45 plain variables followed by their log transforms,
// in the same column order. Not yet rescaled.
RowMatrix widen_with_logs(const RowMatrix& features);

// Column names of the widened matrix: the feature names, then each with a
// "_log" suffix.
std::vector<std::string> model_column_names();

// Fit on all rows, or on a row subset (the training split) when `rows` is
// non-null; prediction paths reuse training-split parameters so scaling
// never leaks validation data.
ScalingParams fit_minmax(const RowMatrix& m,
                         const std::vector<std::uint32_t>* rows = nullptr);

// Applies (x - min) / (max - min) column-wise; constant-fit columns go to 0.
// Values are not clamped, so rows outside the fit range can leave [0, 1].
void apply_minmax(RowMatrix& m, const ScalingParams& p);

// widen_with_logs + fit on all rows + apply: the model-ready matrix used by
// the observational summaries. Throws DataError on non-finite cells.
RowMatrix assemble_model_matrix(const RowMatrix& features);

}  // namespace demograph
