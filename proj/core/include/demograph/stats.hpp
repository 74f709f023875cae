#pragma once

#include <cstdint>
#include <vector>

#include "demograph/graph.hpp"
#include "demograph/matrix.hpp"
#include "demograph/records.hpp"

namespace demograph {

struct PcaResult {
  // One component per row, ordered by eigenvalue descending. Sign
  // convention: the largest-magnitude coordinate of each component is
  // positive (first such coordinate on magnitude ties).
  RowMatrix components;
  std::vector<double> eigenvalues;
  std::vector<double> explained_variance_fraction;
};

// Eigendecomposition of the sample covariance matrix (denominator n-1).
// Throws DataError for fewer than 2 rows or zero total variance.
PcaResult pca(const RowMatrix& m);

struct GenderMeanRow {
  double mean_male = 0;
  double mean_female = 0;
  double welch_t = 0;  // (female mean - male mean) / standard error
  double p_value = 1;  // two-sided, Welch-Satterthwaite df
};

// Per-column group means and Welch two-sample tests. `gender` holds one
// entry per matrix row: 0 male, 1 female, anything else excluded. Throws
// DataError unless both genders have at least 2 rows.
std::vector<GenderMeanRow> gender_group_means(const RowMatrix& m,
                                              const std::vector<int>& gender);

// Conditional call-partner gender mix. Row g is the originator gender,
// p[g][g'] the probability that a call made by gender g reaches gender g'.
// Only voice calls between two labeled users count.
struct GenderMixMatrix {
  double p[2][2] = {{0, 0}, {0, 0}};
  bool row_defined[2] = {false, false};  // false when gender g made no calls
  std::uint64_t calls[2][2] = {{0, 0}, {0, 0}};
  double p_male = 0;  // labeled-population male share
};

GenderMixMatrix gender_mix(const SocialGraph& g,
                           const std::vector<std::uint8_t>& has_label,
                           const std::vector<DemographicLabel>& labels);

struct TukeyHsdRow {
  int group1 = 0;
  int group2 = 0;
  double meandiff = 0;  // mean(group2) - mean(group1)
  double lower = 0;
  double upper = 0;
  bool reject = false;  // 0 outside [lower, upper]
};

// All pairwise comparisons at familywise error rate `fwer`, with the
// Tukey-Kramer margin for unequal group sizes. Every group needs >= 2
// observations (DataError otherwise).
std::vector<TukeyHsdRow> tukey_hsd(const std::vector<std::vector<double>>& groups,
                                   double fwer = 0.05);

// Symmetric link-count matrix over labeled users' integer ages: each
// labeled-labeled edge adds 1 to both orientations, so a same-age edge adds
// 2 to its diagonal cell. Rows cover [min_age, max_age] observed in labels.
struct AgeLinkMatrix {
  int min_age = 0;
  int max_age = -1;  // empty when max_age < min_age
  std::vector<std::uint64_t> counts;  // (max_age-min_age+1)^2, row-major

  int side() const { return max_age - min_age + 1; }
  std::uint64_t at(int age_i, int age_j) const {
    return counts[static_cast<std::size_t>(age_i - min_age) * side() +
                  (age_j - min_age)];
  }
};

AgeLinkMatrix age_link_matrix(const SocialGraph& g,
                              const std::vector<std::uint8_t>& has_label,
                              const std::vector<DemographicLabel>& labels);

// hist[delta] = number of labeled-labeled edges with age difference delta,
// each undirected edge counted once. Trailing entries are nonzero (the
// vector is sized by the largest observed difference).
std::vector<std::uint64_t> age_diff_histogram(
    const SocialGraph& g, const std::vector<std::uint8_t>& has_label,
    const std::vector<DemographicLabel>& labels);

}  // namespace demograph
