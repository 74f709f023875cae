#include <gtest/gtest.h>

#include <cmath>

#include "demograph/civil.hpp"
#include "demograph/rng.hpp"
#include "demograph/special_functions.hpp"

namespace demograph {
namespace {

TEST(SpecialFunctions, RegIncBetaAgainstScipy) {
  // scipy.special.betainc cross-check values
  EXPECT_NEAR(reg_inc_beta(2, 3, 0.4), 0.524800000000000, 1e-12);
  EXPECT_NEAR(reg_inc_beta(0.5, 0.5, 0.3), 0.369010119565545, 1e-12);
  EXPECT_NEAR(reg_inc_beta(5, 2, 0.8), 0.655360000000000, 1e-12);
  EXPECT_NEAR(reg_inc_beta(10, 0.5, 0.99), 0.657928175156784, 1e-10);
  EXPECT_DOUBLE_EQ(reg_inc_beta(3, 4, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(reg_inc_beta(3, 4, 1.0), 1.0);
}

TEST(SpecialFunctions, RegIncBetaSymmetry) {
  for (double a : {0.5, 1.0, 2.5, 7.0})
    for (double b : {0.5, 1.0, 3.0})
      for (double x : {0.1, 0.35, 0.8})
        EXPECT_NEAR(reg_inc_beta(a, b, x) + reg_inc_beta(b, a, 1 - x), 1.0,
                    1e-12);
}

TEST(SpecialFunctions, StudentTCdfAgainstScipy) {
  EXPECT_NEAR(student_t_cdf(1.5, 7), 0.911350756505015, 1e-12);
  EXPECT_NEAR(student_t_cdf(-2.1, 3), 0.063282601274842, 1e-12);
  EXPECT_NEAR(student_t_cdf(0.0, 12), 0.5, 1e-15);
  EXPECT_NEAR(student_t_cdf(3.0, 1), 0.897583617650433, 1e-12);
}

TEST(SpecialFunctions, TwoSidedP) {
  EXPECT_NEAR(student_t_two_sided_p(2.1, 3), 2 * 0.063282601274842, 1e-12);
  EXPECT_NEAR(student_t_two_sided_p(-2.1, 3), 2 * 0.063282601274842, 1e-12);
  EXPECT_NEAR(student_t_upper_p(2.1, 3), 0.063282601274842, 1e-12);
}

TEST(SpecialFunctions, NormCdfBasics) {
  EXPECT_NEAR(norm_cdf(0.0), 0.5, 1e-15);
  EXPECT_NEAR(norm_cdf(1.959963984540054), 0.975, 1e-9);
  EXPECT_NEAR(norm_cdf(-1.0) + norm_cdf(1.0), 1.0, 1e-14);
}

// For k = 2 the studentized range collapses to |t| scaled by sqrt(2):
// q(0.95; 2, nu) = sqrt(2) * t_{0.975, nu}.
TEST(StudentizedRange, TwoGroupsMatchesT) {
  EXPECT_NEAR(studentized_range_quantile(0.95, 2, 5), 3.635351695147, 2e-5);
  EXPECT_NEAR(studentized_range_quantile(0.95, 2, 10), 3.151064183299, 2e-5);
  EXPECT_NEAR(studentized_range_quantile(0.95, 2, 30), 2.888209405762, 2e-5);
  EXPECT_NEAR(studentized_range_quantile(0.95, 2, 120), 2.800044431380, 2e-5);
}

TEST(StudentizedRange, QuantilesAgainstScipy) {
  // scipy.stats.studentized_range.ppf cross-check values
  EXPECT_NEAR(studentized_range_quantile(0.95, 3, 10), 3.8767767500, 2e-5);
  EXPECT_NEAR(studentized_range_quantile(0.95, 4, 20), 3.9582935609, 2e-5);
  EXPECT_NEAR(studentized_range_quantile(0.99, 4, 12), 5.5016263011, 5e-5);
  EXPECT_NEAR(studentized_range_quantile(0.95, 4, 16), 4.0460930606, 2e-5);
}

TEST(StudentizedRange, CdfQuantileRoundTrip) {
  for (int k : {2, 3, 6})
    for (double df : {4.0, 12.0, 60.0})
      for (double p : {0.5, 0.9, 0.95}) {
        const double q = studentized_range_quantile(p, k, df);
        EXPECT_NEAR(studentized_range_cdf(q, k, df), p, 1e-6);
      }
}

TEST(StudentizedRange, MonteCarloAgreement) {
  // Empirical CDF of the studentized range of k=4 samples of size 5
  // (df = 16) versus the quadrature CDF.
  Rng r(99, 1);
  const int k = 4, n = 5;
  const double df = k * (n - 1);
  const double q = 3.7;
  int below = 0;
  const int trials = 40000;
  for (int t = 0; t < trials; ++t) {
    double means[4];
    double ssw = 0;
    for (int g = 0; g < k; ++g) {
      double s = 0, s2 = 0;
      for (int i = 0; i < n; ++i) {
        const double x = r.normal();
        s += x;
        s2 += x * x;
      }
      means[g] = s / n;
      ssw += s2 - s * s / n;
    }
    const double sp = std::sqrt(ssw / df);
    double lo = means[0], hi = means[0];
    for (int g = 1; g < k; ++g) {
      lo = std::min(lo, means[g]);
      hi = std::max(hi, means[g]);
    }
    // Means have variance 1/n; the statistic uses sp / sqrt(n).
    if ((hi - lo) / (sp / std::sqrt(static_cast<double>(n))) <= q) ++below;
  }
  const double emp = static_cast<double>(below) / trials;
  const double exact = studentized_range_cdf(q, k, df);
  // 40000 trials give a standard error around 0.0017; allow 4 sigma.
  EXPECT_NEAR(emp, exact, 0.007);
}

TEST(Civil, RoundTrip) {
  for (std::int64_t d = -200000; d <= 200000; d += 97) {
    const auto [y, m, day] = civil_from_days(d);
    EXPECT_EQ(days_from_civil(y, m, day), d);
  }
}

TEST(Civil, KnownDates) {
  EXPECT_EQ(days_from_civil(1970, 1, 1), 0);
  EXPECT_EQ(days_from_civil(2000, 3, 1), 11017);
  EXPECT_EQ(weekday_from_days(days_from_civil(2021, 3, 1)), 0);  // Monday
  EXPECT_EQ(weekday_from_days(days_from_civil(2021, 3, 6)), 5);  // Saturday
  EXPECT_EQ(weekday_from_days(days_from_civil(1970, 1, 1)), 3);  // Thursday
  EXPECT_TRUE(is_leap(2000));
  EXPECT_FALSE(is_leap(1900));
  EXPECT_TRUE(is_leap(2024));
  EXPECT_EQ(days_in_month(2021, 2), 28);
  EXPECT_EQ(days_in_month(2020, 2), 29);
  EXPECT_EQ(days_in_month(2021, 4), 30);
}

TEST(Civil, TimestampParsing) {
  const auto t = parse_timestamp("2021-03-02T08:30:00");
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(*t, days_from_civil(2021, 3, 2) * 86400 + 8 * 3600 + 30 * 60);
  EXPECT_EQ(format_timestamp(*t), "2021-03-02T08:30:00");

  EXPECT_FALSE(parse_timestamp("notadate").has_value());
  EXPECT_FALSE(parse_timestamp("2021-13-02T08:30:00").has_value());
  EXPECT_FALSE(parse_timestamp("2021-02-30T08:30:00").has_value());
  EXPECT_FALSE(parse_timestamp("2021-03-02 08:30:00").has_value());
  EXPECT_FALSE(parse_timestamp("2021-03-02T24:00:00").has_value());
  EXPECT_FALSE(parse_timestamp("2021-3-02T08:30:00").has_value());
  EXPECT_FALSE(parse_timestamp("2021-03-02T08:30:0").has_value());
}

TEST(Civil, FormatRoundTrip) {
  Rng r(4, 9);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t t =
        static_cast<std::int64_t>(r.uniform_int(4102444800ull));  // to 2100
    const auto back = parse_timestamp(format_timestamp(t));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, t);
  }
}

TEST(Rng, DeterministicStreams) {
  Rng a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  bool differs = false;
  Rng a2(42, 7);
  for (int i = 0; i < 100; ++i)
    if (a2.next_u64() != c.next_u64()) differs = true;
  EXPECT_TRUE(differs);
}

TEST(Rng, Uniform01Bounds) {
  Rng r(1, 2);
  double mean = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    mean += u;
  }
  mean /= n;
  EXPECT_NEAR(mean, 0.5, 0.005);
}

TEST(Rng, UniformIntUnbiasedSmallRange) {
  Rng r(3, 4);
  int counts[7] = {};
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++counts[r.uniform_int(7)];
  for (int k = 0; k < 7; ++k) EXPECT_NEAR(counts[k], n / 7.0, 5 * std::sqrt(n / 7.0));
}

TEST(Rng, PoissonMoments) {
  Rng r(5, 6);
  for (double lambda : {0.3, 4.0, 55.0}) {
    double s = 0, s2 = 0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
      const double x = static_cast<double>(r.poisson(lambda));
      s += x;
      s2 += x * x;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    EXPECT_NEAR(mean, lambda, 5 * std::sqrt(lambda / n));
    EXPECT_NEAR(var, lambda, 0.1 * lambda + 0.05);
  }
}

TEST(Rng, ExponentialMean) {
  Rng r(8, 1);
  double s = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) s += r.exponential(30.0);
  EXPECT_NEAR(s / n, 30.0, 5 * 30.0 / std::sqrt(static_cast<double>(n)));
}

TEST(Rng, NormalMoments) {
  Rng r(9, 2);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / n, 0.0, 0.02);
  EXPECT_NEAR(s2 / n, 1.0, 0.03);
}

}  // namespace
}  // namespace demograph
