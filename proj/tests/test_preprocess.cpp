#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "demograph/common.hpp"
#include "demograph/features.hpp"
#include "demograph/preprocess.hpp"

namespace demograph {
namespace {

TEST(LogTransform, AnchorsAndDomain) {
  EXPECT_EQ(log_transform(0), 0);
  EXPECT_EQ(log_transform(9), 1);
  EXPECT_EQ(log_transform(99), 2);
  // log10(3838 + 1), cross-checked against an independent implementation.
  EXPECT_NEAR(log_transform(3838), 3.584218112117405, 1e-14);
  EXPECT_THROW(log_transform(-0.5), DataError);
}

TEST(MinmaxRescale, MapsRangeToUnitInterval) {
  const std::vector<double> in{2, 4, 10, 6};
  const std::vector<double> out = minmax_rescale(in);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_DOUBLE_EQ(out[0], 0.0);
  EXPECT_DOUBLE_EQ(out[1], 0.25);
  EXPECT_DOUBLE_EQ(out[2], 1.0);
  EXPECT_DOUBLE_EQ(out[3], 0.5);
}

TEST(MinmaxRescale, ConstantColumnGoesToZero) {
  const std::vector<double> out = minmax_rescale({7, 7, 7});
  for (double x : out) EXPECT_EQ(x, 0.0);
}

TEST(QuantileSorted, LinearInterpolationPositions) {
  const std::vector<double> s{1, 2, 3, 4};
  // position p * (n - 1): q1 at 0.75, median at 1.5, q3 at 2.25.
  EXPECT_DOUBLE_EQ(quantile_sorted(s, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(quantile_sorted(s, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile_sorted(s, 0.75), 3.25);
  EXPECT_DOUBLE_EQ(quantile_sorted(s, 0), 1);
  EXPECT_DOUBLE_EQ(quantile_sorted(s, 1), 4);
  EXPECT_DOUBLE_EQ(quantile_sorted({42}, 0.5), 42);
}

TEST(SummarizeColumn, MomentsAndQuartiles) {
  const ColumnSummary s = summarize_column({1, 2, 3, 4});
  EXPECT_EQ(s.count, 4u);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  // Sample standard deviation with the n-1 convention.
  EXPECT_NEAR(s.std_dev, 1.290994448735806, 1e-14);
  EXPECT_DOUBLE_EQ(s.min, 1);
  EXPECT_DOUBLE_EQ(s.q1, 1.75);
  EXPECT_DOUBLE_EQ(s.median, 2.5);
  EXPECT_DOUBLE_EQ(s.q3, 3.25);
  EXPECT_DOUBLE_EQ(s.max, 4);
  ASSERT_TRUE(s.iqr_ratio_defined);
  EXPECT_DOUBLE_EQ(s.iqr_ratio, (3.25 - 1.75) / 2.5);  // 0.6
}

TEST(SummarizeColumn, ZeroMedianLeavesRatioUndefined) {
  const ColumnSummary s = summarize_column({0, 0, 0, 5});
  EXPECT_FALSE(s.iqr_ratio_defined);
}

TEST(SummarizeColumn, SingleValue) {
  const ColumnSummary s = summarize_column({3});
  EXPECT_EQ(s.count, 1u);
  EXPECT_DOUBLE_EQ(s.mean, 3);
  EXPECT_TRUE(std::isnan(s.std_dev));
  EXPECT_DOUBLE_EQ(s.median, 3);
}

TEST(WidenWithLogs, AppendsLogColumnsInOrder) {
  RowMatrix m(2, 3);
  m.at(0, 0) = 0;
  m.at(0, 1) = 9;
  m.at(0, 2) = 99;
  m.at(1, 0) = 999;
  m.at(1, 1) = 0;
  m.at(1, 2) = 9;
  const RowMatrix w = widen_with_logs(m);
  ASSERT_EQ(w.rows, 2u);
  ASSERT_EQ(w.cols, 6u);
  // Plain block unchanged.
  EXPECT_EQ(w.at(0, 1), 9);
  EXPECT_EQ(w.at(1, 0), 999);
  // Log block aligned column-for-column.
  EXPECT_DOUBLE_EQ(w.at(0, 3), 0);
  EXPECT_DOUBLE_EQ(w.at(0, 4), 1);
  EXPECT_DOUBLE_EQ(w.at(0, 5), 2);
  EXPECT_DOUBLE_EQ(w.at(1, 3), 3);
}

TEST(ModelColumnNames, FeatureNamesThenLogTwins) {
  const std::vector<std::string> names = model_column_names();
  ASSERT_EQ(names.size(), static_cast<std::size_t>(2 * kNumFeatures));
  const auto& base = feature_names();
  for (int i = 0; i < kNumFeatures; ++i) {
    EXPECT_EQ(names[i], base[i]);
    EXPECT_EQ(names[kNumFeatures + i], std::string(base[i]) + "_log");
  }
}

TEST(FitMinmax, TrainRowSubsetControlsTheRange) {
  RowMatrix m(4, 1);
  m.at(0, 0) = 0;
  m.at(1, 0) = 10;
  m.at(2, 0) = 5;
  m.at(3, 0) = 20;  // validation row outside the train range
  const std::vector<std::uint32_t> train{0, 1, 2};
  const ScalingParams p = fit_minmax(m, &train);
  ASSERT_EQ(p.min.size(), 1u);
  EXPECT_DOUBLE_EQ(p.min[0], 0);
  EXPECT_DOUBLE_EQ(p.max[0], 10);
  apply_minmax(m, p);
  EXPECT_DOUBLE_EQ(m.at(1, 0), 1.0);
  EXPECT_DOUBLE_EQ(m.at(2, 0), 0.5);
  // No clamping: out-of-range rows land outside [0, 1].
  EXPECT_DOUBLE_EQ(m.at(3, 0), 2.0);
}

TEST(FitMinmax, ConstantColumnMapsToZero) {
  RowMatrix m(3, 2);
  for (std::size_t r = 0; r < 3; ++r) {
    m.at(r, 0) = 4;
    m.at(r, 1) = static_cast<double>(r);
  }
  const ScalingParams p = fit_minmax(m);
  apply_minmax(m, p);
  for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(m.at(r, 0), 0.0);
  EXPECT_DOUBLE_EQ(m.at(2, 1), 1.0);
}

TEST(AssembleModelMatrix, WidensAndRescales) {
  RowMatrix f(3, 1);
  f.at(0, 0) = 0;
  f.at(1, 0) = 9;
  f.at(2, 0) = 99;
  const RowMatrix m = assemble_model_matrix(f);
  ASSERT_EQ(m.cols, 2u);
  // Plain column rescaled by range 99.
  EXPECT_DOUBLE_EQ(m.at(1, 0), 9.0 / 99.0);
  // Log column: log values 0,1,2 rescale to 0, 0.5, 1.
  EXPECT_DOUBLE_EQ(m.at(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(m.at(1, 1), 0.5);
  EXPECT_DOUBLE_EQ(m.at(2, 1), 1.0);

  f.at(0, 0) = std::nan("");
  EXPECT_THROW(assemble_model_matrix(f), DataError);
}

}  // namespace
}  // namespace demograph
