#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "demograph/common.hpp"
#include "demograph/dataset.hpp"
#include "demograph/stats.hpp"

namespace demograph {
namespace {

// All reference numbers below were produced by an independent statistics
// stack and are pinned to their printed precision.

TEST(Pca, MatchesReferenceDecomposition) {
  RowMatrix m(5, 3);
  const double rows[5][3] = {{1, 2, 0.5},
                             {2, 1, 0.7},
                             {3, 4, 0.9},
                             {4, 3, 1.4},
                             {5, 5, 1.1}};
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 3; ++c) m.at(r, c) = rows[r][c];

  const PcaResult res = pca(m);
  ASSERT_EQ(res.eigenvalues.size(), 3u);
  EXPECT_NEAR(res.eigenvalues[0], 4.56760985, 1e-7);
  EXPECT_NEAR(res.eigenvalues[1], 0.53155706, 1e-7);
  EXPECT_NEAR(res.eigenvalues[2], 0.02283309, 1e-7);
  EXPECT_NEAR(res.explained_variance_fraction[0], 0.89176295, 1e-7);
  EXPECT_NEAR(res.explained_variance_fraction[1], 0.1037792, 1e-7);
  EXPECT_NEAR(res.explained_variance_fraction[2], 0.00445785, 1e-7);

  const double comp[3][3] = {{0.70441506, 0.69914714, 0.12244468},
                             {-0.66066372, 0.70889406, -0.24696693},
                             {-0.25946653, 0.09307246, 0.9612568}};
  ASSERT_EQ(res.components.rows, 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_NEAR(res.components.at(i, j), comp[i][j], 1e-7)
          << "component " << i << " coord " << j;

  double total = 0;
  for (double f : res.explained_variance_fraction) total += f;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Pca, RejectsDegenerateInput) {
  RowMatrix one(1, 3);
  EXPECT_THROW(pca(one), DataError);
  RowMatrix flat(4, 2, 3.0);  // zero variance everywhere
  EXPECT_THROW(pca(flat), DataError);
}

TEST(GenderGroupMeans, WelchTestMatchesReference) {
  // male values [1, 2, 2.5], female [4, 6, 5, 7] in one column.
  RowMatrix m(7, 1);
  const double vals[7] = {1, 2, 2.5, 4, 6, 5, 7};
  const std::vector<int> gender{0, 0, 0, 1, 1, 1, 1};
  for (std::size_t r = 0; r < 7; ++r) m.at(r, 0) = vals[r];

  const std::vector<GenderMeanRow> rows = gender_group_means(m, gender);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].mean_male, 1.8333333333333333, 1e-14);
  EXPECT_DOUBLE_EQ(rows[0].mean_female, 5.5);
  EXPECT_NEAR(rows[0].welch_t, 4.690415759823, 1e-10);
  EXPECT_NEAR(rows[0].p_value, 0.005772463825, 1e-10);
}

TEST(GenderGroupMeans, IgnoresUnlabeledRowsAndValidates) {
  RowMatrix m(5, 1);
  const double vals[5] = {1, 2, 100, 4, 6};
  for (std::size_t r = 0; r < 5; ++r) m.at(r, 0) = vals[r];
  // Row 2 is excluded; means must not see the 100.
  const std::vector<int> gender{0, 0, -1, 1, 1};
  const auto rows = gender_group_means(m, gender);
  EXPECT_DOUBLE_EQ(rows[0].mean_male, 1.5);
  EXPECT_DOUBLE_EQ(rows[0].mean_female, 5);

  const std::vector<int> one_side{0, 0, 0, 0, 1};
  EXPECT_THROW(gender_group_means(m, one_side), DataError);
}

TEST(TukeyHsd, EqualGroupSizesMatchReference) {
  const std::vector<std::vector<double>> groups{
      {24.5, 23.5, 26.4, 27.1, 29.9},
      {28.4, 34.2, 29.5, 32.2, 30.1},
      {26.1, 28.3, 24.3, 26.2, 27.8}};
  const auto rows = tukey_hsd(groups, 0.05);
  ASSERT_EQ(rows.size(), 3u);

  EXPECT_NEAR(rows[0].meandiff, 4.6, 1e-12);
  EXPECT_NEAR(rows[0].lower, 0.950841, 5e-5);
  EXPECT_NEAR(rows[0].upper, 8.249159, 5e-5);
  EXPECT_TRUE(rows[0].reject);

  EXPECT_NEAR(rows[1].meandiff, 0.26, 1e-12);
  EXPECT_NEAR(rows[1].lower, -3.389159, 5e-5);
  EXPECT_NEAR(rows[1].upper, 3.909159, 5e-5);
  EXPECT_FALSE(rows[1].reject);

  EXPECT_NEAR(rows[2].meandiff, -4.34, 1e-12);
  EXPECT_NEAR(rows[2].lower, -7.989159, 5e-5);
  EXPECT_NEAR(rows[2].upper, -0.690841, 5e-5);
  EXPECT_TRUE(rows[2].reject);
}

TEST(TukeyHsd, UnequalGroupSizesUseKramerMargin) {
  const std::vector<std::vector<double>> groups{
      {1, 2, 3}, {2, 4, 4, 6}, {8, 9, 10, 11, 12}};
  const auto rows = tukey_hsd(groups, 0.05);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(rows[0].meandiff, 2.0, 1e-12);
  EXPECT_NEAR(rows[0].lower, -1.17883823, 5e-5);
  EXPECT_NEAR(rows[0].upper, 5.17883823, 5e-5);
  EXPECT_FALSE(rows[0].reject);
  EXPECT_NEAR(rows[1].meandiff, 8.0, 1e-12);
  EXPECT_NEAR(rows[1].lower, 4.96044928, 5e-5);
  EXPECT_NEAR(rows[1].upper, 11.03955072, 5e-5);
  EXPECT_TRUE(rows[1].reject);
  EXPECT_NEAR(rows[2].meandiff, 6.0, 1e-12);
  EXPECT_NEAR(rows[2].lower, 3.20799439, 5e-5);
  EXPECT_NEAR(rows[2].upper, 8.79200561, 5e-5);
  EXPECT_TRUE(rows[2].reject);
}

TEST(TukeyHsd, ZeroWithinGroupVariance) {
  const std::vector<std::vector<double>> groups{{0, 0, 0, 0}, {10, 10, 10, 10}};
  const auto rows = tukey_hsd(groups);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0].meandiff, 10);
  EXPECT_DOUBLE_EQ(rows[0].lower, 10);
  EXPECT_DOUBLE_EQ(rows[0].upper, 10);
  EXPECT_TRUE(rows[0].reject);
}

TEST(TukeyHsd, RejectsTinyGroups) {
  EXPECT_THROW(tukey_hsd({{1.0, 2.0}}), DataError);
  EXPECT_THROW(tukey_hsd({{1.0, 2.0}, {3.0}}), DataError);
}

Dataset mix_fixture() {
  // Voice flows between labeled users: M1->M2 twice, M1->F1 once,
  // F1->M1 three times, F1->F2 once. M2->U goes to an unlabeled user and
  // must not count; neither must the one text message.
  const std::string cdr =
      "M1,M2,2021-03-01T10:00:00,60,OUT,T1\n"
      "M1,M2,2021-03-01T11:00:00,60,OUT,T1\n"
      "M1,F1,2021-03-01T12:00:00,60,OUT,T1\n"
      "F1,M1,2021-03-02T10:00:00,60,OUT,T1\n"
      "F1,M1,2021-03-02T11:00:00,60,OUT,T1\n"
      "F1,M1,2021-03-02T12:00:00,60,OUT,T1\n"
      "F1,F2,2021-03-02T13:00:00,60,OUT,T1\n"
      "M2,U,2021-03-03T10:00:00,60,OUT,T1\n";
  const std::string sms = "M1,F1,2021-03-03T11:00:00,OUT\n";
  const std::string truth = "M1,M,30\nM2,M,40\nF1,F,25\nF2,F,35\n";
  return ingest_buffers(cdr, sms, "", truth);
}

TEST(GenderMix, ConditionalRowsFromHandCounts) {
  const Dataset ds = mix_fixture();
  const GenderMixMatrix mix = gender_mix(ds.graph, ds.has_label, ds.labels);

  EXPECT_EQ(mix.calls[0][0], 2u);
  EXPECT_EQ(mix.calls[0][1], 1u);
  EXPECT_EQ(mix.calls[1][0], 3u);
  EXPECT_EQ(mix.calls[1][1], 1u);
  ASSERT_TRUE(mix.row_defined[0]);
  ASSERT_TRUE(mix.row_defined[1]);
  EXPECT_NEAR(mix.p[0][0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(mix.p[0][1], 1.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(mix.p[1][0], 0.75);
  EXPECT_DOUBLE_EQ(mix.p[1][1], 0.25);
  EXPECT_DOUBLE_EQ(mix.p_male, 0.5);
}

TEST(GenderMix, SilentGenderLeavesRowUndefined) {
  const std::string cdr = "A,B,2021-03-01T10:00:00,60,OUT,T1\n";
  const std::string truth = "A,M,30\nB,F,25\n";
  const Dataset ds = ingest_buffers(cdr, "", "", truth);
  const GenderMixMatrix mix = gender_mix(ds.graph, ds.has_label, ds.labels);
  ASSERT_TRUE(mix.row_defined[0]);
  EXPECT_FALSE(mix.row_defined[1]);
  EXPECT_DOUBLE_EQ(mix.p[0][1], 1.0);
}

Dataset age_fixture() {
  // P(30)-Q(30) call edge, R(25)-S(46) text edge, P-U edge to an
  // unlabeled user.
  const std::string cdr =
      "P,Q,2021-03-01T10:00:00,60,OUT,T1\n"
      "P,U,2021-03-01T11:00:00,60,OUT,T1\n";
  const std::string sms = "R,S,2021-03-01T12:00:00,OUT\n";
  const std::string truth = "P,M,30\nQ,F,30\nR,M,25\nS,F,46\n";
  return ingest_buffers(cdr, sms, "", truth);
}

TEST(AgeLinkMatrix, SymmetricCountsWithDoubledDiagonal) {
  const Dataset ds = age_fixture();
  const AgeLinkMatrix m = age_link_matrix(ds.graph, ds.has_label, ds.labels);
  EXPECT_EQ(m.min_age, 25);
  EXPECT_EQ(m.max_age, 46);
  EXPECT_EQ(m.side(), 22);
  EXPECT_EQ(m.at(30, 30), 2u);
  EXPECT_EQ(m.at(25, 46), 1u);
  EXPECT_EQ(m.at(46, 25), 1u);
  EXPECT_EQ(m.at(30, 25), 0u);

  std::uint64_t total = 0;
  for (std::uint64_t c : m.counts) total += c;
  EXPECT_EQ(total, 4u);  // two labeled-labeled edges, two cells each
}

TEST(AgeDiffHistogram, CountsEachEdgeOnce) {
  const Dataset ds = age_fixture();
  const auto hist = age_diff_histogram(ds.graph, ds.has_label, ds.labels);
  ASSERT_EQ(hist.size(), 22u);  // largest difference is 46 - 25
  EXPECT_EQ(hist[0], 1u);
  EXPECT_EQ(hist[21], 1u);
  std::uint64_t total = 0;
  for (std::uint64_t h : hist) total += h;
  EXPECT_EQ(total, 2u);
}

TEST(AgeLinkMatrix, EmptyWithoutLabels) {
  const std::string cdr = "A,B,2021-03-01T10:00:00,60,OUT,T1\n";
  const Dataset ds = ingest_buffers(cdr, "", "", "");
  const AgeLinkMatrix m = age_link_matrix(ds.graph, ds.has_label, ds.labels);
  EXPECT_LT(m.max_age, m.min_age);
  EXPECT_TRUE(m.counts.empty());
  EXPECT_TRUE(age_diff_histogram(ds.graph, ds.has_label, ds.labels).empty());
}

}  // namespace
}  // namespace demograph
